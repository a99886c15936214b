#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "dyndeg/mapspec.hpp"
#include "dyndeg/polytope.hpp"

namespace dyndeg {

struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& reason)
        : std::runtime_error("unsupported query: " + reason) {}
};

/// Multiset of (iterate, exponent) pairs naming the intersection number
/// (L_{m_1}^{r_1} ... L_{m_s}^{r_s}); iterates strictly decreasing, exponents
/// positive and summing to the ambient dimension.
struct MixedDegreeQuery {
    std::vector<std::pair<long, int>> entries;

    /// canonicalize: merge equal iterates, drop zero exponents, sort descending
    static MixedDegreeQuery make(std::vector<std::pair<long, int>> raw, int dim);

    /// deg_i(f^n) as a query: (n,i),(0,d-i)
    static MixedDegreeQuery degree(int i, long n, int dim);

    std::string key() const;
};

struct Capability {
    bool supported = true;
    std::string reason;
};

struct DegreeBounds {
    Int lower;
    Int upper;
    bool exact = false;
};

struct OracleOptions {
    size_t term_cap = 5'000'000;   // monomial accumulation budget for compositions
    long max_iterate = 1 << 16;    // largest iterate the oracle will touch
    size_t modp_term_cap = 400'000;
    std::vector<std::uint64_t> reduction_primes = {2, 3, 5, 7, 11, 13};
};

/// Exact evaluator for mixed degrees of a fixed dominant rational self-map.
/// Evaluations are deterministic and cached; cache entries may be persisted.
class MixedDegreeOracle {
public:
    virtual ~MixedDegreeOracle() = default;

    int dim() const { return dim_; }
    const std::string& fingerprint() const { return fingerprint_; }

    virtual Capability capabilities(const MixedDegreeQuery& q) const = 0;

    /// exact positive integer; throws CapabilityError/BudgetError
    Int mixed_degree(const MixedDegreeQuery& q);

    /// deg_i(f^n); i = 0 is (L^d) = 1 on projective space
    Int degree(int i, long n);

    /// certified two-sided bounds for deg_i(f^n); exact when they pinch.
    /// The default forwards to degree().
    virtual DegreeBounds degree_bounds(int i, long n);

    /// cache persistence (canonical query string -> integer)
    std::map<std::string, std::string> dump_cache() const;
    void load_cache(const std::map<std::string, std::string>& entries);

protected:
    MixedDegreeOracle(int dim, std::string fingerprint)
        : dim_(dim), fingerprint_(std::move(fingerprint)) {}

    virtual Int evaluate(const MixedDegreeQuery& q) = 0;

    int dim_;
    std::string fingerprint_;
    mutable std::mutex mu_;
    std::map<std::string, Int> cache_;
};

std::unique_ptr<MixedDegreeOracle> make_oracle(const MapSpec& map, const OracleOptions& opt = {});

/// Oracle backed by normalized mixed volumes of the polytopes A^m * simplex.
class MonomialOracle final : public MixedDegreeOracle {
public:
    MonomialOracle(const MonomialMap& m, std::string fingerprint, OracleOptions opt);
    Capability capabilities(const MixedDegreeQuery& q) const override;
    const IMatrix& matrix() const { return map_.matrix; }

protected:
    Int evaluate(const MixedDegreeQuery& q) override;

private:
    const IMatrix& power(long m);
    MonomialMap map_;
    OracleOptions opt_;
    std::map<long, IMatrix> powers_;
};

/// Oracle backed by iterated composition with content removal. Supports first
/// degrees, and top degrees when the topological degree is supplied. Beyond
/// the composition budget, first degrees can still be certified by pinching a
/// reduction-mod-p lower bound against the product upper bound.
class ProjectiveOracle final : public MixedDegreeOracle {
public:
    ProjectiveOracle(const ProjectiveMap& m, std::string fingerprint, OracleOptions opt);
    Capability capabilities(const MixedDegreeQuery& q) const override;
    DegreeBounds degree_bounds(int i, long n) override;

protected:
    Int evaluate(const MixedDegreeQuery& q) override;

private:
    Int first_degree_exact(long n);  // throws BudgetError past the cap
    struct Reduction {
        bool usable = false;
        ProjFp map;
        std::vector<ProjFp> iterates;  // iterates[k] = f^(k+1)
        std::vector<Int> degrees;      // degrees[n] = deg1(f_p^n)
        bool exhausted = false;
    };
    Reduction& reduction(std::uint64_t p);

    ProjectiveMap map_;
    OracleOptions opt_;
    // iterates over the base field; iterates_[k] = f^(k+1)
    std::variant<std::vector<ProjQ>, std::vector<ProjFp>> iterates_;
    std::vector<Int> degrees_;  // exact deg1(f^n), degrees_[n]
    bool exhausted_ = false;    // composition budget hit
    std::map<std::uint64_t, Reduction> reductions_;
};

}  // namespace dyndeg
