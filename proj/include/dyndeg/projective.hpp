#pragma once

#include <optional>
#include <random>

#include "dyndeg/poly.hpp"

namespace dyndeg {

/// The component tuple of a rational self-map of projective d-space:
/// d+1 homogeneous polynomials of a common degree, with unit content.
template <class F>
struct ProjTuple {
    F field;
    int dim = 0;  // projective dimension d; the polynomials live in d+1 variables
    std::vector<Poly<F>> comps;

    long degree() const {
        for (const auto& c : comps)
            if (!c.is_zero()) return c.degree();
        return -1;
    }
};

using ProjQ = ProjTuple<QField>;
using ProjFp = ProjTuple<FpField>;

/// Validate homogeneity, equal degrees, and not-all-zero.
template <class F>
void validate_tuple(const ProjTuple<F>& t);

/// Divide out the full content: per-variable monomial part, polynomial gcd,
/// and a scalar normalization that makes the representative canonical.
template <class F>
ProjTuple<F> content_free(const ProjTuple<F>& t);

/// g after f (substitute the components of f into each component of g),
/// content removed. Throws DegenerateMapError if everything cancels.
template <class F>
ProjTuple<F> compose_maps(const ProjTuple<F>& g, const ProjTuple<F>& f, size_t term_cap);

template <class F>
ProjTuple<F> identity_map(const F& fld, int dim);

/// Positive certificate of dominance: exact evaluation of an affine-chart
/// Jacobian determinant at sample points; a nonzero determinant proves the
/// map dominant. Returns false only if no sampled point certifies (which
/// does not disprove dominance).
template <class F>
bool certify_dominant(const ProjTuple<F>& t, std::uint64_t seed, int trials = 24);

/// Reduce a rational-coefficient tuple mod p; throws std::domain_error when
/// p divides a coefficient denominator. The result is content-freed.
ProjFp reduce_mod_p(const ProjQ& t, std::uint64_t p);

struct DegreeSequence {
    std::vector<Int> degrees;  // degrees[n] = deg1(f^n), starting at n = 0
    bool complete = true;      // false when the term budget stopped the iteration
};

/// First-degree sequence deg1(f^n), n = 0..n_max, by iterated composition
/// with content removal. Stops early (complete = false) on budget exhaustion.
template <class F>
DegreeSequence degree_sequence(const ProjTuple<F>& f, long n_max, size_t term_cap);

// --- implementation -------------------------------------------------------

template <class F>
void validate_tuple(const ProjTuple<F>& t) {
    if (static_cast<int>(t.comps.size()) != t.dim + 1)
        throw std::invalid_argument("projective tuple: need dim+1 components");
    long deg = -1;
    bool all_zero = true;
    for (const auto& c : t.comps) {
        if (c.nvars() != t.dim + 1)
            throw std::invalid_argument("projective tuple: wrong variable count");
        if (c.is_zero()) continue;
        all_zero = false;
        if (!c.is_homogeneous())
            throw std::invalid_argument("projective tuple: non-homogeneous component");
        if (deg < 0) deg = c.degree();
        if (c.degree() != deg)
            throw std::invalid_argument("projective tuple: mixed component degrees");
    }
    if (all_zero) throw std::invalid_argument("projective tuple: all components zero");
}

template <class F>
ProjTuple<F> content_free(const ProjTuple<F>& t) {
    const F& fld = t.field;
    int nv = t.dim + 1;
    ProjTuple<F> out = t;

    // monomial part: per-variable minimum exponent across all components
    ExpVec m(nv, 0);
    bool have = false;
    for (const auto& c : out.comps) {
        if (c.is_zero()) continue;
        ExpVec cm = c.min_exponents();
        if (!have) {
            m = cm;
            have = true;
        } else {
            for (int i = 0; i < nv; ++i) m[i] = std::min(m[i], cm[i]);
        }
    }
    if (!have) throw DegenerateMapError("content_free: zero tuple");
    bool nontrivial = false;
    for (int i = 0; i < nv; ++i) nontrivial |= (m[i] > 0);
    if (nontrivial)
        for (auto& c : out.comps)
            if (!c.is_zero()) c = c.divide_monomial(m);

    // polynomial part: fold gcd over components, cheapest first
    std::vector<int> order;
    for (int i = 0; i < nv; ++i)
        if (!out.comps[i].is_zero()) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return out.comps[a].term_count() < out.comps[b].term_count();
    });
    Poly<F> g = Poly<F>::zero(nv);
    for (int i : order) {
        g = poly_gcd(fld, g, out.comps[i]);
        if (polydetail::is_unit(g)) break;
    }
    if (!g.is_zero() && !polydetail::is_unit(g))
        for (auto& c : out.comps)
            if (!c.is_zero()) c = poly_divide_exact(fld, c, g);

    // scalar normalization
    if constexpr (std::is_same_v<F, QField>) {
        Int num_gcd(0), den_lcm(1);
        for (const auto& c : out.comps)
            for (const auto& tm : c.terms()) {
                Int t1;
                mpz_gcd(t1.get_mpz_t(), num_gcd.get_mpz_t(), tm.coef.num().get_mpz_t());
                num_gcd = t1;
                mpz_lcm(t1.get_mpz_t(), den_lcm.get_mpz_t(), tm.coef.den().get_mpz_t());
                den_lcm = t1;
            }
        Rational scale(den_lcm, num_gcd);
        // orient: first coefficient of the first nonzero component positive
        for (const auto& c : out.comps) {
            if (c.is_zero()) continue;
            if ((c.terms()[0].coef * scale).sign() < 0) scale = -scale;
            break;
        }
        for (auto& c : out.comps) c = c.scaled(fld, scale);
    } else {
        typename F::Elem lead = fld.one();
        for (const auto& c : out.comps) {
            if (c.is_zero()) continue;
            lead = c.terms()[0].coef;
            break;
        }
        auto s = fld.inv(lead);
        for (auto& c : out.comps) c = c.scaled(fld, s);
    }
    return out;
}

template <class F>
ProjTuple<F> compose_maps(const ProjTuple<F>& g, const ProjTuple<F>& f, size_t term_cap) {
    if (g.dim != f.dim) throw std::invalid_argument("compose_maps: dimension mismatch");
    ProjTuple<F> out;
    out.field = g.field;
    out.dim = g.dim;
    out.comps.reserve(g.comps.size());
    bool all_zero = true;
    for (const auto& c : g.comps) {
        Poly<F> composed = compose_poly(g.field, c, f.comps, term_cap);
        if (!composed.is_zero()) all_zero = false;
        out.comps.push_back(std::move(composed));
    }
    if (all_zero) throw DegenerateMapError("compose_maps: image lies in the indeterminacy locus");
    return content_free(out);
}

template <class F>
ProjTuple<F> identity_map(const F& fld, int dim) {
    ProjTuple<F> t;
    t.field = fld;
    t.dim = dim;
    for (int i = 0; i <= dim; ++i) t.comps.push_back(Poly<F>::variable(fld, dim + 1, i));
    return t;
}

template <class F>
bool certify_dominant(const ProjTuple<F>& t, std::uint64_t seed, int trials) {
    const F& fld = t.field;
    int d = t.dim;
    int nv = d + 1;
    // partial derivatives of all components
    std::vector<std::vector<Poly<F>>> jac(nv);
    for (int i = 0; i < nv; ++i)
        for (int v = 0; v < nv; ++v) jac[i].push_back(t.comps[i].derivative(fld, v));

    std::mt19937_64 rng(seed);
    auto rand_elem = [&]() {
        long r = static_cast<long>(rng() % 41) - 20;
        if constexpr (std::is_same_v<F, QField>)
            return Rational(r);
        else
            return fld.from_rational(Rational(r));
    };
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<typename F::Elem> x(nv);
        for (int i = 0; i < d; ++i) x[i] = rand_elem();
        x[d] = fld.one();  // source affine chart
        std::vector<typename F::Elem> fx(nv), dfx;
        for (int i = 0; i < nv; ++i) fx[i] = t.comps[i].eval(fld, x);
        for (int j = 0; j < nv; ++j) {  // target chart with denominator component j
            if (fld.is_zero(fx[j])) continue;
            // rows i != j, columns v != d: (dF_i * F_j - F_i * dF_j) / F_j^2;
            // the common positive denominator cannot change invertibility
            std::vector<std::vector<typename F::Elem>> m;
            for (int i = 0; i < nv; ++i) {
                if (i == j) continue;
                std::vector<typename F::Elem> row;
                for (int v = 0; v < d; ++v) {
                    auto a = fld.mul(jac[i][v].eval(fld, x), fx[j]);
                    auto b = fld.mul(fx[i], jac[j][v].eval(fld, x));
                    row.push_back(fld.sub(a, b));
                }
                m.push_back(std::move(row));
            }
            // exact Gaussian elimination over the field
            bool singular = false;
            for (int c = 0; c < d && !singular; ++c) {
                int piv = -1;
                for (int r = c; r < d; ++r)
                    if (!fld.is_zero(m[r][c])) {
                        piv = r;
                        break;
                    }
                if (piv < 0) {
                    singular = true;
                    break;
                }
                std::swap(m[c], m[piv]);
                for (int r = c + 1; r < d; ++r) {
                    if (fld.is_zero(m[r][c])) continue;
                    auto fct = fld.div(m[r][c], m[c][c]);
                    for (int k = c; k < d; ++k)
                        m[r][k] = fld.sub(m[r][k], fld.mul(fct, m[c][k]));
                }
            }
            if (!singular) return true;
        }
    }
    return false;
}

template <class F>
DegreeSequence degree_sequence(const ProjTuple<F>& f, long n_max, size_t term_cap) {
    DegreeSequence out;
    out.degrees.push_back(Int(1));
    if (n_max == 0) return out;
    ProjTuple<F> cur = content_free(f);
    out.degrees.push_back(Int(cur.degree()));
    try {
        for (long n = 2; n <= n_max; ++n) {
            cur = compose_maps(cur, f, term_cap);
            out.degrees.push_back(Int(cur.degree()));
        }
    } catch (const BudgetError&) {
        out.complete = false;
    }
    return out;
}

}  // namespace dyndeg
