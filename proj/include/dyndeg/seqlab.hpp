#pragma once

#include <optional>

#include "dyndeg/roots.hpp"

namespace dyndeg {

/// A sampled positive sequence with its provenance.
struct SeqSample {
    std::vector<Rational> values;  // values[n] = A_n, starting at n = 0 with A_0 = 1
    std::string provenance;        // "generated" | "from-oracle"
};

/// A sequence in the form A_n = 2^(e_n): increment list a_n and prefix-sum
/// exponents e_n, kept exact. The counterexample sequence lives here because
/// its values overflow any direct representation long before its structure
/// becomes visible.
struct ExponentSequence {
    std::vector<Rational> increments;  // increments[n] = a_{n+1} (a_1 at index 0)
    std::vector<Rational> exponents;   // exponents[n] = e_n = a_1 + ... + a_n, e_0 = 0
};

/// The slow-by-blocks submultiplicative sequence whose ratio windows stay
/// flat infinitely often for every step size m: constant blocks scaled by
/// (1 - 1/(r+1)!) alternating with short zero blocks after each factorial.
/// The constant block at stage r starts at (r+2)!+r+3, just past the zero
/// block, so every index is assigned exactly once.
ExponentSequence counterexample_sequence(long n_max);

struct SubmultReport {
    bool ok = true;
    std::optional<std::pair<long, long>> witness;  // (m, n) with A_{m+n} > A_m A_n
};

/// Exhaustive check A_{m+n} <= A_m * A_n over the sample (on exponents:
/// e_{m+n} <= e_m + e_n).
SubmultReport check_submultiplicative(const ExponentSequence& s);
SubmultReport check_submultiplicative(const SeqSample& s);

/// The averaging bound a_{n+1} <= (a_1 + ... + a_n)/n for every n in range.
bool check_averaging_bound(const ExponentSequence& s, long* first_violation = nullptr);

/// A certified upper bound for lim A_n^(1/n): the smallest upper root
/// enclosure over the sample. For the exponent form this is an enclosure of
/// 2^(min_n e_n/n).
Rational fekete_estimate(const ExponentSequence& s, const Rational& tol);
Rational fekete_estimate(const SeqSample& s, const Rational& tol);

/// Indices n with A_{m(n+1)} = A_{mn} (flat ratio windows), up to the sample
/// end, at most `limit` of them.
std::vector<long> flat_windows(const ExponentSequence& s, long m, long limit);

}  // namespace dyndeg
