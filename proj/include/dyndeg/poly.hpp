#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "dyndeg/rational.hpp"

namespace dyndeg {

/// Thrown when a computation exceeds its configured term budget.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a composition collapses to the zero tuple.
struct DegenerateMapError : std::runtime_error {
    explicit DegenerateMapError(const std::string& what) : std::runtime_error(what) {}
};

struct QField {
    using Elem = Rational;
    static Elem zero() { return Rational(0); }
    static Elem one() { return Rational(1); }
    static bool is_zero(const Elem& a) { return a.sign() == 0; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem div(const Elem& a, const Elem& b) { return a / b; }
    static Elem neg(const Elem& a) { return -a; }
    static std::string str(const Elem& a) {
        return a.is_integer() ? a.num().get_str() : a.num().get_str() + "/" + a.den().get_str();
    }
};

/// Prime field with word-sized p (products fit in 64 bits).
struct FpField {
    std::uint64_t p = 2;

    using Elem = std::uint64_t;
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem from_rational(const Rational& r) const;  // throws if p divides the denominator
    static std::string str(const Elem& a) { return std::to_string(a); }
};

bool is_prime_u64(std::uint64_t n);

using ExpVec = std::vector<std::uint32_t>;

struct ExpVecHash {
    size_t operator()(const ExpVec& e) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline long exp_total(const ExpVec& e) {
    long s = 0;
    for (auto x : e) s += x;
    return s;
}

/// graded lexicographic, descending storage order
inline bool grlex_greater(const ExpVec& a, const ExpVec& b) {
    long ta = exp_total(a), tb = exp_total(b);
    if (ta != tb) return ta > tb;
    return a > b;
}

/// Sparse multivariate polynomial over field F. Terms are kept in descending
/// graded-lexicographic order with no zero coefficients.
template <class F>
class Poly {
public:
    struct Term {
        ExpVec exp;
        typename F::Elem coef;
    };

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly constant(const F& fld, int nvars, typename F::Elem c) {
        Poly p(nvars);
        if (!fld.is_zero(c)) p.terms_.push_back({ExpVec(nvars, 0), c});
        return p;
    }
    static Poly monomial(const F& fld, ExpVec e, typename F::Elem c) {
        Poly p(static_cast<int>(e.size()));
        if (!fld.is_zero(c)) p.terms_.push_back({std::move(e), c});
        return p;
    }
    static Poly variable(const F& fld, int nvars, int v) {
        ExpVec e(nvars, 0);
        e[v] = 1;
        return monomial(fld, std::move(e), fld.one());
    }

    /// total degree of the leading term; -1 for the zero polynomial
    long degree() const { return terms_.empty() ? -1 : exp_total(terms_[0].exp); }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        long d = exp_total(terms_[0].exp);
        for (const auto& t : terms_)
            if (exp_total(t.exp) != d) return false;
        return true;
    }

    /// build from arbitrary term list: combines duplicates, drops zeros, sorts
    static Poly from_terms(const F& fld, int nvars, std::vector<Term> raw) {
        std::unordered_map<ExpVec, typename F::Elem, ExpVecHash> acc;
        for (auto& t : raw) {
            auto it = acc.find(t.exp);
            if (it == acc.end())
                acc.emplace(std::move(t.exp), std::move(t.coef));
            else
                it->second = fld.add(it->second, t.coef);
        }
        return from_map(fld, nvars, std::move(acc));
    }

    static Poly from_map(const F& fld, int nvars,
                         std::unordered_map<ExpVec, typename F::Elem, ExpVecHash> acc) {
        Poly p(nvars);
        p.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (!fld.is_zero(c)) p.terms_.push_back({e, c});
        std::sort(p.terms_.begin(), p.terms_.end(),
                  [](const Term& a, const Term& b) { return grlex_greater(a.exp, b.exp); });
        return p;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coef == b.terms_[i].coef))
                return false;
        return true;
    }

    Poly plus(const F& fld, const Poly& o) const {
        std::vector<Term> raw = terms_;
        for (const auto& t : o.terms_) raw.push_back(t);
        return from_terms(fld, nvars_, std::move(raw));
    }

    Poly scaled(const F& fld, const typename F::Elem& c) const {
        Poly p(nvars_);
        if (fld.is_zero(c)) return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({t.exp, fld.mul(t.coef, c)});
        return p;
    }

    Poly mono_scaled(const F& fld, const ExpVec& m, const typename F::Elem& c) const {
        Poly p(nvars_);
        if (fld.is_zero(c)) return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            ExpVec e = t.exp;
            for (int i = 0; i < nvars_; ++i) e[i] += m[i];
            p.terms_.push_back({std::move(e), fld.mul(t.coef, c)});
        }
        return p;
    }

    Poly times(const F& fld, const Poly& o, size_t term_cap = 0) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("Poly::times: variable mismatch");
        const Poly& small = terms_.size() <= o.terms_.size() ? *this : o;
        const Poly& big = terms_.size() <= o.terms_.size() ? o : *this;
        std::unordered_map<ExpVec, typename F::Elem, ExpVecHash> acc;
        acc.reserve(big.terms_.size() * 2);
        for (const auto& s : small.terms_) {
            for (const auto& t : big.terms_) {
                ExpVec e = t.exp;
                for (int i = 0; i < nvars_; ++i) e[i] += s.exp[i];
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(std::move(e), fld.mul(s.coef, t.coef));
                else
                    it->second = fld.add(it->second, fld.mul(s.coef, t.coef));
            }
            if (term_cap && acc.size() > term_cap) throw BudgetError("polynomial term budget exceeded");
        }
        return from_map(fld, nvars_, std::move(acc));
    }

    Poly pow(const F& fld, long e, size_t term_cap = 0) const {
        if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
        Poly r = constant(fld, nvars_, fld.one());
        Poly b = *this;
        while (e) {
            if (e & 1) r = r.times(fld, b, term_cap);
            e >>= 1;
            if (e) b = b.times(fld, b, term_cap);
        }
        return r;
    }

    typename F::Elem eval(const F& fld, const std::vector<typename F::Elem>& x) const {
        typename F::Elem s = fld.zero();
        for (const auto& t : terms_) {
            typename F::Elem m = t.coef;
            for (int i = 0; i < nvars_; ++i)
                for (std::uint32_t k = 0; k < t.exp[i]; ++k) m = fld.mul(m, x[i]);
            s = fld.add(s, m);
        }
        return s;
    }

    Poly derivative(const F& fld, int v) const;

    /// per-variable minimum exponent over all terms (monomial content part)
    ExpVec min_exponents() const {
        ExpVec m(nvars_, 0);
        if (terms_.empty()) return m;
        m = terms_[0].exp;
        for (const auto& t : terms_)
            for (int i = 0; i < nvars_; ++i)
                if (t.exp[i] < m[i]) m[i] = t.exp[i];
        return m;
    }

    Poly divide_monomial(const ExpVec& m) const {
        Poly p(nvars_);
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            ExpVec e = t.exp;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] < m[i]) throw std::logic_error("divide_monomial: not divisible");
                e[i] -= m[i];
            }
            p.terms_.push_back({std::move(e), t.coef});
        }
        return p;
    }

private:
    int nvars_ = 0;
    std::vector<Term> terms_;
};

template <class F>
Poly<F> Poly<F>::derivative(const F& fld, int v) const {
    std::vector<Term> raw;
    for (const auto& t : terms_) {
        if (t.exp[v] == 0) continue;
        typename F::Elem c = t.coef;
        // multiply by the exponent in the field
        typename F::Elem k = fld.zero();
        for (std::uint32_t i = 0; i < t.exp[v]; ++i) k = fld.add(k, fld.one());
        c = fld.mul(c, k);
        ExpVec e = t.exp;
        --e[v];
        raw.push_back({std::move(e), std::move(c)});
    }
    return from_terms(fld, nvars_, std::move(raw));
}

/// Substitute comps[v] for variable v in g, exactly. Groups the terms of g by
/// the exponent of a pivot variable (the one whose substitute expands widest)
/// and walks its powers incrementally; other components' powers are memoized.
template <class F>
Poly<F> compose_poly(const F& fld, const Poly<F>& g, const std::vector<Poly<F>>& comps,
                     size_t term_cap = 0) {
    int nv = g.nvars();
    if (static_cast<int>(comps.size()) != nv)
        throw std::invalid_argument("compose_poly: component count mismatch");
    for (const auto& c : comps)
        if (c.nvars() != comps[0].nvars())
            throw std::invalid_argument("compose_poly: component variable mismatch");
    int out_nv = comps.empty() ? nv : comps[0].nvars();
    if (g.is_zero()) return Poly<F>::zero(out_nv);

    // pivot: largest (max exponent) * (component width - 1)
    std::vector<std::uint32_t> maxexp(nv, 0);
    for (const auto& t : g.terms())
        for (int v = 0; v < nv; ++v) maxexp[v] = std::max(maxexp[v], t.exp[v]);
    int pivot = 0;
    long best = -1;
    for (int v = 0; v < nv; ++v) {
        long w = static_cast<long>(maxexp[v]) *
                 std::max<long>(0, static_cast<long>(comps[v].term_count()) - 1);
        if (w > best) {
            best = w;
            pivot = v;
        }
    }

    // group terms by pivot exponent
    std::vector<std::vector<const typename Poly<F>::Term*>> groups(maxexp[pivot] + 1);
    for (const auto& t : g.terms()) groups[t.exp[pivot]].push_back(&t);

    // memoized powers of the non-pivot components
    std::vector<std::vector<Poly<F>>> powcache(nv);
    auto power_of = [&](int v, std::uint32_t e) -> const Poly<F>& {
        auto& cache = powcache[v];
        if (cache.empty()) cache.push_back(Poly<F>::constant(fld, out_nv, fld.one()));
        while (cache.size() <= e) cache.push_back(cache.back().times(fld, comps[v], term_cap));
        return cache[e];
    };

    std::unordered_map<ExpVec, typename F::Elem, ExpVecHash> acc;
    Poly<F> pivot_pow = Poly<F>::constant(fld, out_nv, fld.one());
    for (std::uint32_t b = 0; b < groups.size(); ++b) {
        if (b > 0) pivot_pow = pivot_pow.times(fld, comps[pivot], term_cap);
        if (groups[b].empty()) continue;
        Poly<F> inner = Poly<F>::zero(out_nv);
        for (const auto* t : groups[b]) {
            Poly<F> prod = Poly<F>::constant(fld, out_nv, t->coef);
            for (int v = 0; v < nv; ++v) {
                if (v == pivot || t->exp[v] == 0) continue;
                prod = prod.times(fld, power_of(v, t->exp[v]), term_cap);
            }
            inner = inner.plus(fld, prod);
        }
        // acc += pivot_pow * inner
        for (const auto& a : inner.terms()) {
            for (const auto& p : pivot_pow.terms()) {
                ExpVec e = p.exp;
                for (int i = 0; i < out_nv; ++i) e[i] += a.exp[i];
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(std::move(e), fld.mul(a.coef, p.coef));
                else
                    it->second = fld.add(it->second, fld.mul(a.coef, p.coef));
            }
            if (term_cap && acc.size() > term_cap)
                throw BudgetError("composition term budget exceeded");
        }
    }
    return Poly<F>::from_map(fld, out_nv, std::move(acc));
}

namespace polydetail {

// view of p as a univariate polynomial in variable v with Poly coefficients
template <class F>
std::vector<Poly<F>> decompose(const F& fld, const Poly<F>& p, int v) {
    std::uint32_t dv = 0;
    for (const auto& t : p.terms()) dv = std::max(dv, t.exp[v]);
    std::vector<std::vector<typename Poly<F>::Term>> raw(dv + 1);
    for (const auto& t : p.terms()) {
        ExpVec e = t.exp;
        std::uint32_t k = e[v];
        e[v] = 0;
        raw[k].push_back({std::move(e), t.coef});
    }
    std::vector<Poly<F>> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.push_back(Poly<F>::from_terms(fld, p.nvars(), std::move(r)));
    return out;
}

template <class F>
Poly<F> recompose(const F& fld, const std::vector<Poly<F>>& coeffs, int v, int nvars) {
    std::vector<typename Poly<F>::Term> raw;
    for (std::uint32_t k = 0; k < coeffs.size(); ++k)
        for (const auto& t : coeffs[k].terms()) {
            ExpVec e = t.exp;
            e[v] += k;
            raw.push_back({std::move(e), t.coef});
        }
    return Poly<F>::from_terms(fld, nvars, std::move(raw));
}

template <class F>
int top_variable(const Poly<F>& p) {
    for (int v = p.nvars() - 1; v >= 0; --v)
        for (const auto& t : p.terms())
            if (t.exp[v] > 0) return v;
    return -1;
}

template <class F>
bool is_unit(const Poly<F>& p) {
    return p.term_count() == 1 && exp_total(p.terms()[0].exp) == 0;
}

// pseudo-remainder of a by b with respect to variable v (deg_v a >= deg_v b)
template <class F>
Poly<F> pseudo_rem(const F& fld, const Poly<F>& a, const Poly<F>& b, int v) {
    auto ac = decompose(fld, a, v);
    auto bc = decompose(fld, b, v);
    long db = static_cast<long>(bc.size()) - 1;
    const Poly<F>& lead_b = bc[db];
    while (true) {
        long da = static_cast<long>(ac.size()) - 1;
        while (da >= 0 && ac[da].is_zero()) {
            ac.pop_back();
            --da;
        }
        if (da < db) break;
        Poly<F> lead_a = ac[da];
        for (auto& c : ac) c = c.times(fld, lead_b);
        for (long i = 0; i <= db; ++i) {
            Poly<F> sub = bc[i].times(fld, lead_a);
            ac[da - db + i] = ac[da - db + i].plus(fld, sub.scaled(fld, fld.neg(fld.one())));
        }
    }
    return recompose(fld, ac, v, a.nvars());
}

}  // namespace polydetail

template <class F>
Poly<F> poly_divide_exact(const F& fld, const Poly<F>& a, const Poly<F>& d);

/// gcd via content/primitive-part recursion on the top variable with a
/// primitive pseudo-remainder sequence; result normalized to leading
/// coefficient 1
template <class F>
Poly<F> poly_gcd(const F& fld, const Poly<F>& a, const Poly<F>& b) {
    using polydetail::decompose;
    using polydetail::is_unit;
    using polydetail::top_variable;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int va = top_variable(a), vb = top_variable(b);
    if (va < 0 || vb < 0) return Poly<F>::constant(fld, a.nvars(), fld.one());
    int v = std::max(va, vb);
    auto cont_of = [&](const Poly<F>& p) {
        auto cs = decompose(fld, p, v);
        Poly<F> g = Poly<F>::zero(p.nvars());
        for (const auto& c : cs) {
            if (c.is_zero()) continue;
            g = poly_gcd(fld, g, c);
            if (is_unit(g)) break;
        }
        return g;
    };
    Poly<F> ca = cont_of(a), cb = cont_of(b);
    Poly<F> cont = poly_gcd(fld, ca, cb);
    Poly<F> pa = poly_divide_exact(fld, a, ca);
    Poly<F> pb = poly_divide_exact(fld, b, cb);
    // primitive PRS in variable v
    auto degv = [&](const Poly<F>& p) {
        std::uint32_t d = 0;
        for (const auto& t : p.terms()) d = std::max(d, t.exp[v]);
        return static_cast<long>(d);
    };
    if (degv(pa) < degv(pb)) std::swap(pa, pb);
    while (!pb.is_zero() && degv(pb) > 0) {
        Poly<F> r = polydetail::pseudo_rem(fld, pa, pb, v);
        if (!r.is_zero()) {
            Poly<F> cr = cont_of(r);
            r = poly_divide_exact(fld, r, cr);
        }
        pa = std::move(pb);
        pb = std::move(r);
    }
    Poly<F> g;
    if (pb.is_zero())
        g = pa;
    else
        g = Poly<F>::constant(fld, a.nvars(), fld.one());  // nontrivial constant in v: coprime parts
    Poly<F> result = cont.times(fld, g);
    // normalize: leading coefficient 1
    if (!result.is_zero()) {
        auto lead = result.terms()[0].coef;
        result = result.scaled(fld, fld.div(fld.one(), lead));
    }
    return result;
}

/// exact division a / d (throws std::logic_error if not divisible)
template <class F>
Poly<F> poly_divide_exact(const F& fld, const Poly<F>& a, const Poly<F>& d) {
    if (d.is_zero()) throw std::domain_error("poly_divide_exact: division by zero");
    if (a.is_zero()) return a;
    if (polydetail::is_unit(d)) return a.scaled(fld, fld.div(fld.one(), d.terms()[0].coef));
    int v = polydetail::top_variable(d);
    auto ac = polydetail::decompose(fld, a, v);
    auto dc = polydetail::decompose(fld, d, v);
    long dd = static_cast<long>(dc.size()) - 1;
    std::vector<Poly<F>> q;
    while (true) {
        long da = static_cast<long>(ac.size()) - 1;
        while (da >= 0 && ac[da].is_zero()) {
            ac.pop_back();
            --da;
        }
        if (da < dd) break;
        Poly<F> qc = poly_divide_exact(fld, ac[da], dc[dd]);
        if (static_cast<long>(q.size()) < da - dd + 1) q.resize(da - dd + 1, Poly<F>::zero(a.nvars()));
        q[da - dd] = qc;
        for (long i = 0; i <= dd; ++i) {
            Poly<F> sub = dc[i].times(fld, qc);
            ac[da - dd + i] = ac[da - dd + i].plus(fld, sub.scaled(fld, fld.neg(fld.one())));
        }
    }
    for (const auto& c : ac)
        if (!c.is_zero()) throw std::logic_error("poly_divide_exact: not divisible");
    return polydetail::recompose(fld, q, v, a.nvars());
}

template <class F>
Poly<F> parse_poly(const F& fld, const std::vector<std::string>& vars, const std::string& text) {
    int nv = static_cast<int>(vars.size());
    std::vector<typename Poly<F>::Term> raw;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("parse_poly: empty polynomial");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("parse_poly: expected '+' or '-'");
        }
        first = false;
        // one term: factors separated by '*'
        Rational coef(sign);
        ExpVec exp(nv, 0);
        bool any_factor = false;
        while (true) {
            skip_ws();
            size_t start = i;
            if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])))) {
                while (i < text.size() &&
                       (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
                    ++i;
                coef *= Rational::parse(text.substr(start, i - start));
                any_factor = true;
            } else if (i < text.size() &&
                       (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                           text[i] == '_'))
                    ++i;
                std::string name = text.substr(start, i - start);
                int v = -1;
                for (int k = 0; k < nv; ++k)
                    if (vars[k] == name) v = k;
                if (v < 0) throw std::invalid_argument("parse_poly: unknown variable '" + name + "'");
                long e = 1;
                skip_ws();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip_ws();
                    size_t es = i;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                    if (es == i) throw std::invalid_argument("parse_poly: bad exponent");
                    e = std::stol(text.substr(es, i - es));
                }
                exp[v] += static_cast<std::uint32_t>(e);
                any_factor = true;
            } else {
                throw std::invalid_argument("parse_poly: unexpected character in term");
            }
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any_factor) throw std::invalid_argument("parse_poly: empty term");
        typename F::Elem c;
        if constexpr (std::is_same_v<F, QField>)
            c = coef;
        else
            c = fld.from_rational(coef);
        raw.push_back({std::move(exp), std::move(c)});
    }
    return Poly<F>::from_terms(fld, nv, std::move(raw));
}

template <class F>
std::string poly_to_string(const F& fld, const Poly<F>& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::string cs = F::str(t.coef);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (int v = 0; v < p.nvars(); ++v) {
            if (t.exp[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[v];
            if (t.exp[v] > 1) mono += "^" + std::to_string(t.exp[v]);
        }
        if (mono.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    return out;
}

}  // namespace dyndeg
