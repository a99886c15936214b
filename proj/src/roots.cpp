#include "dyndeg/roots.hpp"

namespace dyndeg {

Int iroot_floor(const Int& n, unsigned long k, bool* exact) {
    if (n < 0) throw std::domain_error("iroot_floor: negative argument");
    if (k == 0) throw std::domain_error("iroot_floor: zero index");
    Int r;
    int ex = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (exact) *exact = (ex != 0);
    return r;
}

namespace {

// smallest k with 2^-k <= tol
unsigned long dyadic_bits(const Rational& tol) {
    if (tol.sign() <= 0) throw std::domain_error("tolerance must be positive");
    unsigned long k = 0;
    Rational step(1);
    Rational half(1, 2);
    while (step > tol) {
        step *= half;
        ++k;
        if (k > (1u << 20)) throw std::domain_error("tolerance too small");
    }
    return k;
}

Int pow_int_ui(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

Enclosure nth_root_enclosure(const Rational& q, long n, const Rational& tol) {
    if (q.sign() <= 0) throw std::domain_error("nth_root_enclosure: q must be positive");
    if (n < 1) throw std::domain_error("nth_root_enclosure: n must be positive");
    if (tol.sign() <= 0) throw std::domain_error("nth_root_enclosure: tol must be positive");
    if (n == 1) return Enclosure(q, q);
    auto un = static_cast<unsigned long>(n);

    // exact root fast path
    bool en = false, ed = false;
    Int rn = iroot_floor(q.num(), un, &en);
    Int rd = iroot_floor(q.den(), un, &ed);
    if (en && ed) {
        Rational r(rn, rd);
        return Enclosure(r, r);
    }

    unsigned long k = dyadic_bits(tol);
    Int scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), k);
    Int scale_n = pow_int_ui(scale, un);

    // r = floor((q * scale^n)^(1/n)), then certify r/scale and (r+1)/scale
    // by exact comparison, nudging r if floor division lost precision.
    Int r = iroot_floor((q.num() * scale_n) / q.den(), un);
    auto cmp_q = [&](const Int& m) {  // sign of (m/scale)^n - q
        return cmp(pow_int_ui(m, un) * q.den(), q.num() * scale_n);
    };
    while (r > 0 && cmp_q(r) > 0) --r;
    while (cmp_q(r + 1) <= 0) ++r;
    if (cmp_q(r) == 0) {
        Rational v(r, scale);
        return Enclosure(v, v);
    }
    return Enclosure(Rational(r, scale), Rational(r + 1, scale));
}

Enclosure pow_rational_exponent_enclosure(const Int& base, const Rational& e, const Rational& tol) {
    if (base < 1) throw std::domain_error("pow_rational_exponent_enclosure: base must be >= 1");
    if (e.sign() < 0) throw std::domain_error("pow_rational_exponent_enclosure: negative exponent");
    if (e.is_integer()) {
        Rational p(pow_int_ui(base, e.num().get_ui()));
        return Enclosure(p, p);
    }
    unsigned long k = dyadic_bits(tol);
    Int scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), k);
    Int lo_e = (e.num() * scale) / e.den();  // floor(e * 2^k); e > 0 and non-integer
    Int hi_e = lo_e + 1;
    long root_deg = static_cast<long>(scale.get_ui());
    Enclosure lo = nth_root_enclosure(Rational(pow_int_ui(base, lo_e.get_ui())), root_deg, tol);
    Enclosure hi = nth_root_enclosure(Rational(pow_int_ui(base, hi_e.get_ui())), root_deg, tol);
    return Enclosure(lo.lower, hi.upper);
}

}  // namespace dyndeg
