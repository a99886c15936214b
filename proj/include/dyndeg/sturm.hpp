#pragma once

#include <vector>

#include "dyndeg/rational.hpp"

namespace dyndeg {

/// Dense integer polynomial, coefficients[i] is the coefficient of x^i.
/// Trailing zeros are trimmed; the zero polynomial is the empty vector.
using IntPoly = std::vector<Int>;

/// Square integer matrix, row-major.
struct IMatrix {
    int n = 0;
    std::vector<Int> a;

    IMatrix() = default;
    explicit IMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, Int(0)) {}
    Int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

IMatrix mat_mul(const IMatrix& x, const IMatrix& y);
IMatrix mat_pow(const IMatrix& x, long e);
Int mat_det(const IMatrix& x);

/// k-th exterior power: the binom(n,k)-square matrix of k-minors, rows and
/// columns indexed by k-subsets in lexicographic order.
IMatrix exterior_power(const IMatrix& x, int k);

/// Characteristic polynomial det(xI - A), monic, exact.
IntPoly char_poly(const IMatrix& a);

int poly_degree(const IntPoly& p);
Rational poly_eval(const IntPoly& p, const Rational& x);
IntPoly poly_derivative(const IntPoly& p);

/// Sturm chain of the squarefree part of p.
std::vector<IntPoly> sturm_chain(const IntPoly& p);

/// Number of distinct real roots of p in the half-open interval (a, b].
int roots_in_interval(const std::vector<IntPoly>& chain, const Rational& a, const Rational& b);

/// Enclosure of the largest real root of p, width <= tol (point enclosure if
/// hit exactly). Throws std::domain_error if p has no real root.
Enclosure largest_real_root(const IntPoly& p, const Rational& tol);

/// Exact test: does p have a real root strictly greater than x?
bool has_root_above(const IntPoly& p, const Rational& x);

}  // namespace dyndeg
