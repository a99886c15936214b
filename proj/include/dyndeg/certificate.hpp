#pragma once

#include <optional>

#include "dyndeg/oracle.hpp"

namespace dyndeg {

/// Parameter tuple fed to the lower-bound conditions: a non-increasing
/// positive sequence alpha_1..alpha_d, gamma and epsilon in (0,1), and the
/// iterate step m >= 1.
struct CandidateParams {
    int i = 1;
    std::vector<Rational> alphas;
    Rational gamma;
    Rational eps;
    long m = 1;

    void validate(int dim) const;

    /// beta_j = alpha_1 * ... * alpha_j (beta_0 = 1)
    Rational beta(int j) const;

    /// the certified lower bound eps^(2i) * beta_i
    Rational bound() const { return eps.pow_int(2 * i) * beta(i); }
};

struct TranscriptEntry {
    std::string cond;  // "I", "J", "K"
    long index = 0;    // j for I, N for K
    Rational lhs;
    Rational rhs;
    bool holds = false;
};

/// A verified lower-bound witness: every transcript entry re-evaluates to the
/// same exact rationals against the oracle.
struct Certificate {
    CandidateParams params;
    Rational bound;
    std::vector<TranscriptEntry> transcript;
    std::string map_fingerprint;
};

struct ConditionResult {
    bool holds = false;
    std::vector<TranscriptEntry> transcript;
};

/// Condition I: for every j < i the binomially expanded two-iterate
/// intersection ratio exceeds (d-i+j+1) * eps^m. The scalar multiplying the
/// one-step class in the denominator is alpha_{j+1}^m.
ConditionResult eval_condition_I(MixedDegreeOracle& oracle, const CandidateParams& p);

/// B = sum_j binom(d,j) binom(d,i-1) (alpha_i gamma)^m / (eps^(m(j+1)) beta_j^m)
///     * deg_j(f^m) deg_(i-1)(f^m)
Rational eval_B(MixedDegreeOracle& oracle, const CandidateParams& p);

/// Condition J: B < eps^(2mi) beta_i^m (1 - eps^(mi))
ConditionResult eval_condition_J(MixedDegreeOracle& oracle, const CandidateParams& p);

/// Condition K at offset N: deg_i(f^(m(N+1))) > B eps^(-mi) deg_i(f^(mN))
ConditionResult eval_condition_K(MixedDegreeOracle& oracle, const CandidateParams& p, long N);

/// All three conditions (K at N = 0) yield the bound eps^(2i) beta_i.
std::optional<Certificate> certify_lower_bound(MixedDegreeOracle& oracle,
                                               const CandidateParams& p);

/// Re-evaluate a certificate transcript against the oracle; returns the list
/// of mismatching entries (empty = verified).
std::vector<std::string> verify_certificate(MixedDegreeOracle& oracle, const Certificate& cert);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

/// Growth-rate verdict for a sequence satisfying the two-step recursive
/// inequality a_{n+2} + alpha*beta*a_n >= gamma*a_{n+1} on every window, with
/// gamma >= alpha + beta and a_1 > beta*a_0: the telescoped conclusion
/// a_{n+2} - beta*a_{n+1} >= alpha^(n+1) (a_1 - beta*a_0) certifies
/// liminf a_n^(1/n) >= alpha.
struct GrowthVerdict {
    bool holds = false;
    std::optional<Rational> certified_lower;
};

GrowthVerdict recursive_growth_bound(const std::vector<Rational>& a, const Rational& alpha,
                                     const Rational& beta, const Rational& gamma);

}  // namespace dyndeg
