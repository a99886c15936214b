#include "dyndeg/rational.hpp"

namespace dyndeg {

Rational::Rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    auto bad = [&] { return std::invalid_argument("Rational::parse: bad input '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s), Int(1));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

std::string Rational::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (inv && v_ == 0) throw std::domain_error("Rational::pow_int: 0 to negative power");
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
    return inv ? Rational(d, n) : Rational(n, d);
}

Rational Rational::abs() const {
    Rational r;
    r.v_ = ::abs(v_);
    return r;
}

Int Rational::height() const {
    Int n = ::abs(v_.get_num());
    return n > v_.get_den() ? n : Int(v_.get_den());
}

Int binomial(long d, long k) {
    if (d < 0 || k < 0 || k > d) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    return r;
}

bool lt_pow(const Rational& x, const Rational& y, long n) {
    if (n < 1) throw std::domain_error("lt_pow: n must be positive");
    return x < y.pow_int(n);
}

Enclosure::Enclosure(Rational lo, Rational hi, bool lo_open, bool hi_open)
    : lower(std::move(lo)), upper(std::move(hi)), lower_open(lo_open), upper_open(hi_open) {
    if (lower > upper) throw std::invalid_argument("Enclosure: lower > upper");
}

bool Enclosure::contains(const Rational& x) const {
    if (lower_open ? !(lower < x) : !(lower <= x)) return false;
    if (upper_open ? !(x < upper) : !(x <= upper)) return false;
    return true;
}

}  // namespace dyndeg
