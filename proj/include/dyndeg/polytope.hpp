#pragma once

#include <utility>
#include <vector>

#include "dyndeg/rational.hpp"

namespace dyndeg {

using RPoint = std::vector<Rational>;
using IPoint = std::vector<Int>;

/// Convex polytope given by its vertex set. Canonical form: the stored
/// vertices are exactly the extreme points of the hull, deduplicated and
/// sorted lexicographically by coordinate value.
struct Polytope {
    int ambient_dim = 0;
    std::vector<RPoint> vertices;
};

/// Canonical hull of a nonempty point set (extreme points only).
Polytope convex_hull(const std::vector<RPoint>& points);

/// Exact Euclidean volume; 0 for lower-dimensional polytopes.
Rational volume(const Polytope& p);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);

/// Normalized mixed volume d!*V(P_1,...,P_d), computed by inclusion-exclusion
/// over volumes of Minkowski subset sums. Normalization: the standard simplex
/// repeated d times gives 1.
Rational mixed_volume_normalized(const std::vector<Polytope>& ps);

/// Lattice fast path used by the monomial oracle: polytope i enters with
/// multiplicity ps[i].second; multiplicities must sum to dim. Result is
/// asserted integral.
Int mixed_volume_lattice(const std::vector<std::pair<std::vector<IPoint>, int>>& ps, int dim);

/// d! times the volume of the convex hull of integer points.
Int lattice_hull_volume_dfact(const std::vector<IPoint>& pts, int dim);

/// Exact membership test q in conv(points).
bool point_in_hull(const RPoint& q, const std::vector<RPoint>& points);

}  // namespace dyndeg
