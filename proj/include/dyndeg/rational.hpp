#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dyndeg {

using Int = mpz_class;

/// Arbitrary-precision rational, always in canonical form: positive
/// denominator, numerator and denominator coprime. All arithmetic is exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}             // NOLINT(google-explicit-constructor)
    Rational(const Int& n) : v_(n) {}       // NOLINT(google-explicit-constructor)
    Rational(const Int& num, const Int& den);
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    /// Parse "num/den" or "num" (optional leading '-').
    static Rational parse(const std::string& s);

    /// Canonical text form "num/den" (denominator always printed).
    std::string str() const;

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// x^e for integer e; e < 0 requires x != 0.
    Rational pow_int(long e) const;

    Rational abs() const;

    /// Height of the canonical form: max(|num|, den). Used by the candidate
    /// enumeration order.
    Int height() const;

    double to_double() const { return v_.get_d(); }

private:
    mpq_class v_;
};

/// Exact binomial coefficient; zero outside 0 <= k <= d.
Int binomial(long d, long k);

/// Exact test x < y^n, decided by integer cross-multiplication.
bool lt_pow(const Rational& x, const Rational& y, long n);

/// A pair of exact rationals bracketing a real value, with endpoint
/// openness flags.
struct Enclosure {
    Rational lower;
    Rational upper;
    bool lower_open = false;
    bool upper_open = false;

    Enclosure() = default;
    Enclosure(Rational lo, Rational hi, bool lo_open = false, bool hi_open = false);

    Rational width() const { return upper - lower; }
    bool contains(const Rational& x) const;
};

}  // namespace dyndeg
