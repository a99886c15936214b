#pragma once

#include "dyndeg/rational.hpp"

namespace dyndeg {

/// floor(n^(1/k)) for n >= 0; sets *exact when the root is exact.
Int iroot_floor(const Int& n, unsigned long k, bool* exact = nullptr);

/// Certified enclosure of q^(1/n): returns E with E.lower^n <= q <= E.upper^n
/// and E.upper - E.lower <= tol. Exact roots collapse to a point. All
/// arithmetic is integer/rational; no floating point.
Enclosure nth_root_enclosure(const Rational& q, long n, const Rational& tol);

/// Certified enclosure of base^e for rational exponent e >= 0 and integer
/// base >= 1, via dyadic bracketing of the exponent. Width <= tol in the
/// exponent is approximated by a 2^-k grid with 2^-k <= tol.
Enclosure pow_rational_exponent_enclosure(const Int& base, const Rational& e, const Rational& tol);

}  // namespace dyndeg
