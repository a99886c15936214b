#include "dyndeg/oracle.hpp"

#include <algorithm>

namespace dyndeg {

MixedDegreeQuery MixedDegreeQuery::make(std::vector<std::pair<long, int>> raw, int dim) {
    std::map<long, long> acc;
    for (const auto& [m, r] : raw) {
        if (m < 0) throw std::invalid_argument("mixed degree query: negative iterate");
        if (r < 0) throw std::invalid_argument("mixed degree query: negative exponent");
        if (r > 0) acc[m] += r;
    }
    long total = 0;
    MixedDegreeQuery q;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
        q.entries.emplace_back(it->first, static_cast<int>(it->second));
        total += it->second;
    }
    if (total != dim)
        throw std::invalid_argument("mixed degree query: exponents must sum to the dimension");
    return q;
}

MixedDegreeQuery MixedDegreeQuery::degree(int i, long n, int dim) {
    if (i < 0 || i > dim) throw std::invalid_argument("degree: i out of range");
    return make({{n, i}, {0, dim - i}}, dim);
}

std::string MixedDegreeQuery::key() const {
    std::string s;
    for (const auto& [m, r] : entries) {
        if (!s.empty()) s += ",";
        s += std::to_string(m) + "^" + std::to_string(r);
    }
    return s;
}

Int MixedDegreeOracle::mixed_degree(const MixedDegreeQuery& q) {
    std::string k = q.key();
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
    }
    Capability cap = capabilities(q);
    if (!cap.supported) throw CapabilityError(cap.reason);
    Int v = evaluate(q);
    if (v < 1) throw std::logic_error("mixed degree evaluated to a non-positive value");
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(k, v);
    return v;
}

Int MixedDegreeOracle::degree(int i, long n) {
    if (i == 0) return Int(1);  // (L^d) = 1 on projective space
    return mixed_degree(MixedDegreeQuery::degree(i, n, dim_));
}

DegreeBounds MixedDegreeOracle::degree_bounds(int i, long n) {
    Int v = degree(i, n);
    return DegreeBounds{v, v, true};
}

std::map<std::string, std::string> MixedDegreeOracle::dump_cache() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : cache_) out.emplace(k, v.get_str());
    return out;
}

void MixedDegreeOracle::load_cache(const std::map<std::string, std::string>& entries) {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [k, v] : entries) cache_.emplace(k, Int(v));
}

// --- monomial backend -------------------------------------------------------

MonomialOracle::MonomialOracle(const MonomialMap& m, std::string fingerprint, OracleOptions opt)
    : MixedDegreeOracle(m.dim, std::move(fingerprint)), map_(m), opt_(std::move(opt)) {
    IMatrix id(m.dim);
    for (int i = 0; i < m.dim; ++i) id.at(i, i) = 1;
    powers_.emplace(0, std::move(id));
    powers_.emplace(1, map_.matrix);
}

Capability MonomialOracle::capabilities(const MixedDegreeQuery& q) const {
    for (const auto& [m, r] : q.entries)
        if (m > opt_.max_iterate)
            return {false, "iterate " + std::to_string(m) + " beyond the configured budget"};
    return {true, ""};
}

const IMatrix& MonomialOracle::power(long m) {
    auto it = powers_.find(m);
    if (it != powers_.end()) return it->second;
    const IMatrix& half = power(m / 2);
    IMatrix v = mat_mul(half, half);
    if (m & 1) v = mat_mul(v, map_.matrix);
    return powers_.emplace(m, std::move(v)).first->second;
}

Int MonomialOracle::evaluate(const MixedDegreeQuery& q) {
    int d = dim_;
    std::vector<std::pair<std::vector<IPoint>, int>> polys;
    for (const auto& [m, r] : q.entries) {
        const IMatrix& a = power(m);
        std::vector<IPoint> verts;
        verts.push_back(IPoint(d, Int(0)));
        for (int col = 0; col < d; ++col) {
            IPoint v(d);
            for (int row = 0; row < d; ++row) v[row] = a.at(row, col);
            verts.push_back(std::move(v));
        }
        polys.emplace_back(std::move(verts), r);
    }
    return mixed_volume_lattice(polys, d);
}

// --- projective backend ------------------------------------------------------

ProjectiveOracle::ProjectiveOracle(const ProjectiveMap& m, std::string fingerprint,
                                   OracleOptions opt)
    : MixedDegreeOracle(m.dim, std::move(fingerprint)), map_(m), opt_(std::move(opt)) {
    if (map_.is_rational_field())
        iterates_ = std::vector<ProjQ>{};
    else
        iterates_ = std::vector<ProjFp>{};
    degrees_.push_back(Int(1));
}

Capability ProjectiveOracle::capabilities(const MixedDegreeQuery& q) const {
    for (const auto& [m, r] : q.entries)
        if (m > opt_.max_iterate)
            return {false, "iterate " + std::to_string(m) + " beyond the configured budget"};
    // supported shapes: (0,d); (n,1)+(0,d-1); (n,d) with known topological degree
    if (q.entries.size() == 1 && q.entries[0].first == 0) return {true, ""};
    if (q.entries.size() == 1 && q.entries[0].second == dim_) {
        if (map_.top_degree) return {true, ""};
        return {false, "top degrees need the topological degree in the map file"};
    }
    if (q.entries.size() == 1 && dim_ == 1) return {true, ""};
    if (q.entries.size() == 2 && q.entries[1].first == 0 && q.entries[0].second == 1)
        return {true, ""};
    return {false, "general mixed degrees need graph intersection theory"};
}

template <class F>
static Int extend_first_degrees(std::vector<ProjTuple<F>>& iters, const ProjTuple<F>& base,
                                std::vector<Int>& degrees, long n, size_t cap, bool& exhausted) {
    if (n < static_cast<long>(degrees.size())) return degrees[n];
    if (exhausted) throw BudgetError("composition budget exhausted");
    if (iters.empty()) {
        iters.push_back(content_free(base));
        if (degrees.size() < 2) degrees.push_back(Int(iters[0].degree()));
    }
    while (static_cast<long>(degrees.size()) <= n) {
        try {
            iters.push_back(compose_maps(iters.back(), iters[0], cap));
        } catch (const BudgetError&) {
            exhausted = true;
            throw;
        }
        degrees.push_back(Int(iters.back().degree()));
    }
    return degrees[n];
}

Int ProjectiveOracle::first_degree_exact(long n) {
    if (map_.is_rational_field())
        return extend_first_degrees(std::get<std::vector<ProjQ>>(iterates_),
                                    std::get<ProjQ>(map_.tuple), degrees_, n, opt_.term_cap,
                                    exhausted_);
    return extend_first_degrees(std::get<std::vector<ProjFp>>(iterates_),
                                std::get<ProjFp>(map_.tuple), degrees_, n, opt_.term_cap,
                                exhausted_);
}

Int ProjectiveOracle::evaluate(const MixedDegreeQuery& q) {
    if (q.entries.size() == 1 && q.entries[0].first == 0) return Int(1);
    if (q.entries.size() == 1 && q.entries[0].second == dim_ && dim_ > 1) {
        Int t;
        mpz_pow_ui(t.get_mpz_t(), map_.top_degree->get_mpz_t(),
                   static_cast<unsigned long>(q.entries[0].first));
        return t;
    }
    long n = q.entries[0].first;
    DegreeBounds b = degree_bounds(1, n);
    if (!b.exact)
        throw BudgetError("first degree at iterate " + std::to_string(n) +
                          " not determined exactly within the budget (certified bounds " +
                          b.lower.get_str() + ".." + b.upper.get_str() + ")");
    return b.lower;
}

ProjectiveOracle::Reduction& ProjectiveOracle::reduction(std::uint64_t p) {
    auto it = reductions_.find(p);
    if (it != reductions_.end()) return it->second;
    Reduction red;
    try {
        const auto& t = std::get<ProjQ>(map_.tuple);
        red.map = reduce_mod_p(t, p);
        // a nonzero affine Jacobian determinant at a sample point certifies
        // dominance of the reduction; without it the reduction is unusable
        std::uint64_t seed = 0x9e3779b97f4a7c15ull ^ (p * 0x100000001b3ull);
        red.usable = certify_dominant(red.map, seed);
        if (red.usable) red.degrees.push_back(Int(1));
    } catch (const std::exception&) {
        red.usable = false;
    }
    return reductions_.emplace(p, std::move(red)).first->second;
}

DegreeBounds ProjectiveOracle::degree_bounds(int i, long n) {
    if (i == 0) return {Int(1), Int(1), true};
    if (n == 0) return {Int(1), Int(1), true};
    if (i == dim_ && map_.top_degree) {
        Int t;
        mpz_pow_ui(t.get_mpz_t(), map_.top_degree->get_mpz_t(), static_cast<unsigned long>(n));
        return {t, t, true};
    }
    if (i != 1) {
        Capability c = capabilities(MixedDegreeQuery::degree(i, n, dim_));
        throw CapabilityError(c.reason.empty() ? "unsupported degree index" : c.reason);
    }
    try {
        Int v = first_degree_exact(n);
        return {v, v, true};
    } catch (const BudgetError&) {
        // fall through to certified pinching
    }

    long known = static_cast<long>(degrees_.size()) - 1;  // exact degrees up to here
    // upper bound: degrees are submultiplicative under composition
    std::vector<Int> up(n + 1);
    up[0] = 1;
    for (long k = 1; k <= n; ++k) {
        if (k <= known) {
            up[k] = degrees_[k];
            continue;
        }
        Int best(0);
        for (long a = 1; a <= known && a <= k; ++a) {
            Int cand = degrees_[a] * up[k - a];
            if (best == 0 || cand < best) best = cand;
        }
        if (best == 0) throw CapabilityError("no exact degrees available for an upper bound");
        up[k] = best;
    }
    // lower bound: degrees can only drop under reduction mod p (for a
    // dominance-certified reduction), so any reduction's degree is a witness
    Int lo(1);
    if (map_.is_rational_field()) {
        for (std::uint64_t p : opt_.reduction_primes) {
            Reduction& red = reduction(p);
            if (!red.usable || red.exhausted) continue;
            try {
                Int v = extend_first_degrees(red.iterates, red.map, red.degrees, n,
                                             opt_.modp_term_cap, red.exhausted);
                if (v > lo) lo = v;
            } catch (const BudgetError&) {
            } catch (const DegenerateMapError&) {
                red.usable = false;
            }
            if (lo == up[n]) break;
        }
    }
    return {lo, up[n], lo == up[n]};
}

std::unique_ptr<MixedDegreeOracle> make_oracle(const MapSpec& map, const OracleOptions& opt) {
    if (map.is_monomial())
        return std::make_unique<MonomialOracle>(std::get<MonomialMap>(map.data), map.fingerprint,
                                                opt);
    return std::make_unique<ProjectiveOracle>(std::get<ProjectiveMap>(map.data), map.fingerprint,
                                              opt);
}

}  // namespace dyndeg
