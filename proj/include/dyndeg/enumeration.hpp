#pragma once

#include "dyndeg/certificate.hpp"

namespace dyndeg {

/// One enumerated candidate: condition parameters plus the iterate n used for
/// the upper-bound test.
struct OmegaTuple {
    std::vector<Rational> alphas;
    Rational gamma;
    Rational eps;
    long m = 1;
    long n = 1;

    CandidateParams params(int i) const { return CandidateParams{i, alphas, gamma, eps, m}; }
};

/// Total, injective, fair enumeration of candidate tuples: ordered by height
/// H = max over all numerators, denominators, m and n; ties broken
/// lexicographically over (alpha_1..alpha_d, gamma, eps, m, n) with rationals
/// keyed by (numerator, denominator). Every valid tuple (alphas non-increasing
/// positive, gamma and eps in (0,1)) appears at exactly one index.
class FairEnumeration {
public:
    explicit FairEnumeration(int d);

    OmegaTuple next();

private:
    void start_height();
    bool advance_odometer();
    OmegaTuple current() const;
    bool current_valid() const;

    int d_;
    long height_ = 1;
    std::vector<Rational> positives_;  // height <= H, sorted by (num, den)
    std::vector<Rational> unit_;       // subset with value in (0,1)
    std::vector<size_t> idx_;          // d alpha indices, gamma, eps, m-1, n-1
    bool fresh_ = false;
};

/// The index-th tuple of the fair enumeration (index from 0).
OmegaTuple enumerate_omega(int d, std::uint64_t index);

}  // namespace dyndeg
