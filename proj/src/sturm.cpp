#include "dyndeg/sturm.hpp"

#include <algorithm>

namespace dyndeg {

IMatrix mat_mul(const IMatrix& x, const IMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("mat_mul: size mismatch");
    IMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const Int& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

IMatrix mat_pow(const IMatrix& x, long e) {
    if (e < 0) throw std::invalid_argument("mat_pow: negative exponent");
    IMatrix r(x.n);
    for (int i = 0; i < x.n; ++i) r.at(i, i) = 1;
    IMatrix b = x;
    while (e) {
        if (e & 1) r = mat_mul(r, b);
        e >>= 1;
        if (e) b = mat_mul(b, b);
    }
    return r;
}

Int mat_det(const IMatrix& x) {
    // fraction-free Bareiss elimination
    IMatrix m = x;
    int n = m.n;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

namespace {

void subsets_lex(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

IMatrix exterior_power(const IMatrix& x, int k) {
    if (k < 1 || k > x.n) throw std::invalid_argument("exterior_power: bad k");
    std::vector<std::vector<int>> subs;
    subsets_lex(x.n, k, subs);
    IMatrix r(static_cast<int>(subs.size()));
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j) {
            IMatrix minor(k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) minor.at(a, b) = x.at(subs[i][a], subs[j][b]);
            r.at(static_cast<int>(i), static_cast<int>(j)) = mat_det(minor);
        }
    return r;
}

IntPoly char_poly(const IMatrix& a) {
    // Faddeev-LeVerrier over the rationals; the result is integral and monic.
    int n = a.n;
    std::vector<Rational> c(static_cast<size_t>(n) + 1);
    c[n] = Rational(1);
    // M_0 = 0; M_{k} = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (int k = 1; k <= n; ++k) {
        // M = A*M + c[n-k+1]*I
        std::vector<std::vector<Rational>> am(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (a.at(i, l) == 0) continue;
                Rational f{a.at(i, l)};
                for (int j = 0; j < n; ++j) am[i][j] += f * m[l][j];
            }
        for (int i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
        m = std::move(am);
        Rational tr(0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                if (a.at(i, l) != 0) tr += Rational(a.at(i, l)) * m[l][i];
        c[n - k] = -tr / Rational(k);
    }
    IntPoly p(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        if (!c[i].is_integer()) throw std::logic_error("char_poly: non-integer coefficient");
        p[i] = c[i].num();
    }
    return p;
}

int poly_degree(const IntPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

Rational poly_eval(const IntPoly& p, const Rational& x) {
    Rational r(0);
    for (int i = poly_degree(p); i >= 0; --i) r = r * x + Rational(p[i]);
    return r;
}

IntPoly poly_derivative(const IntPoly& p) {
    IntPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return d;
}

namespace {

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Int poly_content(const IntPoly& p) {
    Int g(0);
    for (const Int& c : p) {
        Int t;
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        g = t;
    }
    return g;
}

void make_primitive(IntPoly& p) {
    trim(p);
    Int g = poly_content(p);
    if (g > 1)
        for (Int& c : p) c /= g;
}

// primitive part of the pseudo-remainder of a by b (deg a >= deg b)
IntPoly prem_primitive(const IntPoly& a, const IntPoly& b) {
    IntPoly r = a;
    int db = poly_degree(b);
    const Int lb = b[db];
    while (true) {
        int dr = poly_degree(r);
        if (dr < db) break;
        Int lead = r[dr];
        for (Int& c : r) c *= lb;
        for (int i = 0; i <= db; ++i) r[static_cast<size_t>(dr - db) + i] -= lead * b[i];
        trim(r);
        if (r.empty()) break;
    }
    make_primitive(r);
    return r;
}

// exact quotient p / g (g must divide p), primitivized
IntPoly poly_divide_exact(const IntPoly& p, const IntPoly& g) {
    int dp = poly_degree(p), dg = poly_degree(g);
    std::vector<Rational> rem(static_cast<size_t>(dp) + 1);
    for (int i = 0; i <= dp; ++i) rem[i] = Rational(p[i]);
    std::vector<Rational> q(static_cast<size_t>(dp - dg) + 1, Rational(0));
    Rational glead{g[dg]};
    for (int d = dp; d >= dg; --d) {
        if (rem[d].sign() == 0) continue;
        Rational f = rem[d] / glead;
        q[static_cast<size_t>(d - dg)] = f;
        for (int i = 0; i <= dg; ++i) rem[static_cast<size_t>(d - dg) + i] -= f * Rational(g[i]);
    }
    Int l(1);
    for (const auto& c : q) {
        Int t;
        mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
        l = t;
    }
    IntPoly out(q.size());
    for (size_t i = 0; i < q.size(); ++i) out[i] = (q[i] * Rational(l)).num();
    make_primitive(out);
    return out;
}

IntPoly poly_gcd_int(IntPoly a, IntPoly b) {
    make_primitive(a);
    make_primitive(b);
    if (poly_degree(a) < poly_degree(b)) std::swap(a, b);
    while (poly_degree(b) >= 0) {
        IntPoly r = prem_primitive(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    make_primitive(a);
    return a;
}

int sign_at(const IntPoly& p, const Rational& x) { return poly_eval(p, x).sign(); }

int variations_at(const std::vector<IntPoly>& chain, const Rational& x) {
    int v = 0, last = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

std::vector<IntPoly> sturm_chain(const IntPoly& p_in) {
    IntPoly p = p_in;
    trim(p);
    if (poly_degree(p) <= 0) return {p};
    // squarefree part
    IntPoly g = poly_gcd_int(p, poly_derivative(p));
    if (poly_degree(g) > 0) p = poly_divide_exact(p, g);
    std::vector<IntPoly> chain;
    chain.push_back(p);
    IntPoly d = poly_derivative(p);
    make_primitive(d);
    chain.push_back(d);
    while (poly_degree(chain.back()) > 0) {
        IntPoly r = prem_primitive(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Int& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int roots_in_interval(const std::vector<IntPoly>& chain, const Rational& a, const Rational& b) {
    if (!(a < b)) return 0;
    return variations_at(chain, a) - variations_at(chain, b);
}

namespace {

Rational cauchy_bound(const IntPoly& p) {
    int d = poly_degree(p);
    Rational lead{p[d]};
    Rational m(0);
    for (int i = 0; i < d; ++i) {
        Rational r = Rational(p[i]).abs() / lead.abs();
        if (r > m) m = r;
    }
    return m + Rational(1);
}

}  // namespace

bool has_root_above(const IntPoly& p, const Rational& x) {
    auto chain = sturm_chain(p);
    if (poly_degree(chain[0]) <= 0) return false;
    Rational bound = cauchy_bound(chain[0]);
    if (!(x < bound)) return false;
    return roots_in_interval(chain, x, bound) > 0;
}

Enclosure largest_real_root(const IntPoly& p, const Rational& tol) {
    if (tol.sign() <= 0) throw std::domain_error("largest_real_root: tol must be positive");
    auto chain = sturm_chain(p);
    const IntPoly& sf = chain[0];
    int d = poly_degree(sf);
    if (d <= 0) throw std::domain_error("largest_real_root: constant polynomial");
    Rational hi = cauchy_bound(sf);
    Rational lo = -hi;
    if (roots_in_interval(chain, lo, hi) == 0) throw std::domain_error("largest_real_root: no real root");
    // keep the invariant: largest root lies in (lo, hi]
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / Rational(2);
        if (roots_in_interval(chain, mid, hi) > 0)
            lo = mid;
        else
            hi = mid;
    }
    if (sign_at(sf, hi) == 0) return Enclosure(hi, hi);
    return Enclosure(lo, hi);
}

}  // namespace dyndeg
