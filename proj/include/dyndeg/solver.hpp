#pragma once

#include "dyndeg/enumeration.hpp"
#include "dyndeg/validate.hpp"

namespace dyndeg {

struct SolverConfig {
    int precision_bits = 3;       // target enclosure width 2^-l
    long max_candidates = 400;    // candidate evaluations before giving up
    long max_iterate = 4096;      // largest oracle iterate (bounds 2m and n)
    bool heuristic_seeding = true;
    int workers = 1;
    long pilot_iterate = 6;             // iterate used to estimate parameter seeds
    std::optional<long> surface_k;      // force a fixed doubling step in the surface path
};

struct SurfaceStep {
    long k = 0;
    Int deg_k;
    Int deg_2k_lower;
    Int deg_2k_upper;
    bool deg_2k_exact = false;
    Rational lower;  // certified lower bound for lambda_1 from this step
    Rational upper;  // certified upper bound from this step
};

struct LambdaReport {
    int i = 1;
    Enclosure enclosure;
    std::string status;  // "certified" | "partial"
    std::optional<Certificate> certificate;
    std::optional<long> candidate_index;  // enumeration index of the success
    long candidates_tried = 0;
    std::vector<std::pair<long, std::string>> degree_samples;  // (iterate, value)
    std::vector<SurfaceStep> surface_trace;
    std::string provenance;

    bool certified() const { return status == "certified"; }
};

std::string lambda_report_to_json(const LambdaReport& rep);

/// Upper endpoint of an enclosure of (binom(d,i) * deg_i(f^n))^(1/n); a valid
/// upper bound for lambda_i at every n by submultiplicativity.
Rational upper_bound(MixedDegreeOracle& oracle, int i, long n, int precision_bits);

/// Full enumeration algorithm: walks candidate tuples (seeded candidates
/// interleaved 1:1 with the fair enumeration when enabled), certifies
/// conditions exactly, and stops at the first tuple whose bound lands within
/// 2^-l of the upper-bound sequence. Budget exhaustion yields a partial
/// report carrying the best certified bounds found.
LambdaReport compute_lambda(MixedDegreeOracle& oracle, int i, const SolverConfig& cfg);

/// Surface fast path (d = 2): lambda_1 >= deg_1(f^2k) / (4 deg_1(f^k)),
/// combined with the general upper bound; doubles k until the enclosure is
/// narrow enough. Works on certified degree bounds, so reductions mod p may
/// stand in for unreachable exact degrees.
LambdaReport surface_lambda1(MixedDegreeOracle& oracle, const SolverConfig& cfg);

/// Ground-truth reference for monomial maps: i = 1 takes the largest real
/// root of the characteristic polynomial (entrywise-nonnegative matrices
/// only); i = d takes |det|.
Enclosure reference_perron_root(const IMatrix& a, int i, const Rational& tol);

struct UniformGrowthRow {
    long n = 0;
    Rational ratio;  // deg_i(f^(m(n+1))) / deg_i(f^(mn))
    bool inside = false;
};

struct UniformGrowthReport {
    long m = 0;
    Rational delta;
    Enclosure lambda;
    Rational lo_bound;  // delta^m * lower^m
    Rational hi_bound;  // delta^-m * upper^m
    std::vector<UniformGrowthRow> rows;
    bool all_inside() const {
        for (const auto& r : rows)
            if (!r.inside) return false;
        return true;
    }
};

/// Ratio table deg_i(f^(m(n+1)))/deg_i(f^(mn)) for n = 0..n_max against the
/// window implied by a certified enclosure of lambda_i. Rows outside the
/// window indicate m below the uniform-growth threshold, not a defect.
UniformGrowthReport uniform_growth_report(MixedDegreeOracle& oracle, int i, long m, long n_max,
                                          const Rational& delta, const Enclosure& lambda);

std::string uniform_growth_to_json(const UniformGrowthReport& rep);

}  // namespace dyndeg
