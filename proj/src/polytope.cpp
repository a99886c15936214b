#include "dyndeg/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dyndeg/sturm.hpp"

namespace dyndeg {

namespace {

int ipoint_cmp(const IPoint& a, const IPoint& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

void dedup_points(std::vector<IPoint>& pts) {
    std::sort(pts.begin(), pts.end(),
              [](const IPoint& a, const IPoint& b) { return ipoint_cmp(a, b) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

Int factorial(int n) {
    Int f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// ---------------------------------------------------------------------------
// Orientation predicate with symbolic perturbation (simulation of simplicity).
//
// Point with global index i is perturbed by (t_i, t_i^2, ..., t_i^d) where
// t_i = eps^(B^i). The perturbed orientation determinant is a polynomial in
// eps whose monomial exponents, read as base-B digit vectors indexed by the
// point ids, never collide; the sign of the lowest-order nonzero coefficient
// decides. This makes every d+1 distinct points affinely independent, so the
// incremental hull never meets a degenerate case.
// ---------------------------------------------------------------------------

// sparse base-B digit vector: (point id, digit), digits in 1..d
using EpsExponent = std::vector<std::pair<int, int>>;

// dominance order: smaller exponent value = dominant term; high ids weigh more
bool eps_less(const EpsExponent& a, const EpsExponent& b) {
    // compare as numbers sum digit*B^id, from the most significant id down
    int ia = static_cast<int>(a.size()) - 1, ib = static_cast<int>(b.size()) - 1;
    while (ia >= 0 || ib >= 0) {
        int id_a = ia >= 0 ? a[ia].first : -1;
        int id_b = ib >= 0 ? b[ib].first : -1;
        if (id_a != id_b) return id_a < id_b;  // the one missing the high digit is smaller
        if (a[ia].second != b[ib].second) return a[ia].second < b[ib].second;
        --ia;
        --ib;
    }
    return false;
}

Int submatrix_det(const std::vector<std::vector<Int>>& h, const std::vector<int>& rows,
                  const std::vector<int>& cols) {
    int n = static_cast<int>(rows.size());
    IMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = h[rows[i]][cols[j]];
    return mat_det(m);
}

class OrientOracle {
public:
    OrientOracle(const std::vector<IPoint>& pts, int dim) : pts_(pts), d_(dim) {}

    // sign of the perturbed orientation of d+1 point indices
    int orient(const std::vector<int>& q) const {
        Int det = real_orient_det(q);
        if (det != 0) return sgn(det);
        return perturbed_sign(q);
    }

    // determinant of rows (pts[q_k] - pts[q_0]), k = 1..d
    Int real_orient_det(const std::vector<int>& q) const {
        IMatrix m(d_);
        for (int r = 1; r <= d_; ++r)
            for (int c = 0; c < d_; ++c) m.at(r - 1, c) = pts_[q[r]][c] - pts_[q[0]][c];
        return mat_det(m);
    }

private:
    int perturbed_sign(const std::vector<int>& q) const {
        int n = d_ + 1;
        // homogeneous matrix rows (coords, 1)
        std::vector<std::vector<Int>> h(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d_; ++j) h[i][j] = pts_[q[i]][j];
            h[i][d_] = 1;
        }
        struct Term {
            EpsExponent e;
            Int coef;
        };
        std::vector<Term> terms;
        // generalized Laplace expansion over the eps-perturbed rows S in
        // column sets C (subsets of the d coordinate columns), bijections pi
        int full = 1 << n;
        for (int smask = 1; smask < full; ++smask) {
            std::vector<int> srows;
            for (int i = 0; i < n; ++i)
                if (smask & (1 << i)) srows.push_back(i);
            int k = static_cast<int>(srows.size());
            if (k > d_) continue;
            std::vector<int> crows;  // complementary rows
            for (int i = 0; i < n; ++i)
                if (!(smask & (1 << i))) crows.push_back(i);
            // iterate column subsets C of {0..d-1} of size k
            std::vector<int> cols(k);
            std::iota(cols.begin(), cols.end(), 0);
            while (true) {
                std::vector<int> ccols;
                for (int j = 0, c = 0; j <= d_; ++j) {
                    if (c < k && cols[c] == j) {
                        ++c;
                        continue;
                    }
                    ccols.push_back(j);
                }
                Int minor = submatrix_det(h, crows, ccols);
                if (minor != 0) {
                    long par = 0;
                    for (int r : srows) par += r;
                    for (int c : cols) par += c;
                    // bijections pi: srows -> cols
                    std::vector<int> perm(k);
                    std::iota(perm.begin(), perm.end(), 0);
                    do {
                        int psign = perm_sign(perm);
                        EpsExponent e;
                        for (int i = 0; i < k; ++i)
                            e.emplace_back(q[srows[i]], cols[perm[i]] + 1);
                        std::sort(e.begin(), e.end());
                        // term = (-1)^par * sgn(pi) * minor * (eps powers)
                        Int coef = minor;
                        if (((par & 1) != 0) != (psign < 0)) coef = -coef;
                        terms.push_back({std::move(e), std::move(coef)});
                    } while (std::next_permutation(perm.begin(), perm.end()));
                }
                // next column subset
                int i = k - 1;
                while (i >= 0 && cols[i] == d_ - k + i) --i;
                if (i < 0) break;
                ++cols[i];
                for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
            }
        }
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return eps_less(a.e, b.e); });
        for (const auto& t : terms)
            if (t.coef != 0) return sgn(t.coef);
        throw std::logic_error("perturbed orientation: all terms vanished (duplicate points?)");
    }

    static int perm_sign(const std::vector<int>& p) {
        int s = 1;
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) s = -s;
        return s;
    }

    const std::vector<IPoint>& pts_;
    int d_;
};

// ---------------------------------------------------------------------------
// Incremental (beneath-beyond) hull on symbolically perturbed points.
// Facets are (d-1)-simplices oriented so that the interior tests negative.
// ---------------------------------------------------------------------------

class SosHull {
public:
    SosHull(const std::vector<IPoint>& pts, int dim) : pts_(pts), d_(dim), orient_(pts, dim) {
        if (static_cast<int>(pts_.size()) < d_ + 1) return;
        build();
        built_ = true;
    }

    bool full_dimensional() const { return built_; }

    // d! * volume (nonnegative); 0 when the point set is lower-dimensional
    Int volume_dfact() const {
        if (!built_) return Int(0);
        Int s(0);
        std::vector<int> q(d_ + 1);
        for (const auto& f : facets_) {
            if (!f.alive) continue;
            for (int i = 0; i < d_; ++i) q[i] = f.v[i];
            q[d_] = 0;  // base point
            s += orient_.real_orient_det(q);
        }
        // interior tests negative, so pyramids toward the base point sum to -vol
        if (s > 0) throw std::logic_error("hull volume: orientation inconsistency");
        return -s;
    }

    std::vector<int> vertex_indices() const {
        std::vector<int> v;
        if (!built_) {
            v.resize(pts_.size());
            std::iota(v.begin(), v.end(), 0);
            return v;
        }
        std::vector<char> seen(pts_.size(), 0);
        for (const auto& f : facets_)
            if (f.alive)
                for (int i : f.v) seen[i] = 1;
        for (size_t i = 0; i < pts_.size(); ++i)
            if (seen[i]) v.push_back(static_cast<int>(i));
        return v;
    }

    // q weakly inside every real facet halfspace => q in conv(pts)
    bool real_contains(const IPoint& q) const {
        if (!built_) throw std::logic_error("real_contains on degenerate hull");
        std::vector<IPoint> ext = pts_;
        ext.push_back(q);
        OrientOracle o2(ext, d_);
        int qi = static_cast<int>(ext.size()) - 1;
        std::vector<int> args(d_ + 1);
        for (const auto& f : facets_) {
            if (!f.alive) continue;
            for (int i = 0; i < d_; ++i) args[i] = f.v[i];
            args[d_] = qi;
            if (sgn(o2.real_orient_det(args)) > 0) return false;
        }
        return true;
    }

private:
    struct Facet {
        std::vector<int> v;
        bool alive = true;
    };

    void build() {
        // initial simplex: the first d+1 points (independent under perturbation)
        std::vector<int> base(d_ + 1);
        std::iota(base.begin(), base.end(), 0);
        for (int skip = 0; skip <= d_; ++skip) {
            Facet f;
            for (int i = 0; i <= d_; ++i)
                if (i != skip) f.v.push_back(base[i]);
            std::vector<int> args = f.v;
            args.push_back(base[skip]);
            if (orient_.orient(args) > 0) std::swap(f.v[0], f.v[1]);
            facets_.push_back(std::move(f));
        }
        for (int p = d_ + 1; p < static_cast<int>(pts_.size()); ++p) insert(p);
    }

    void insert(int p) {
        std::vector<int> visible;
        std::vector<int> args(d_ + 1);
        for (size_t fi = 0; fi < facets_.size(); ++fi) {
            if (!facets_[fi].alive) continue;
            for (int i = 0; i < d_; ++i) args[i] = facets_[fi].v[i];
            args[d_] = p;
            if (orient_.orient(args) > 0) visible.push_back(static_cast<int>(fi));
        }
        if (visible.empty()) return;  // inside (in the perturbed sense)
        std::vector<char> vis(facets_.size(), 0);
        for (int fi : visible) vis[fi] = 1;
        // ridge -> owning facets among alive ones
        std::map<std::vector<int>, std::vector<int>> ridges;
        for (size_t fi = 0; fi < facets_.size(); ++fi) {
            if (!facets_[fi].alive) continue;
            const auto& v = facets_[fi].v;
            for (int skip = 0; skip < d_; ++skip) {
                std::vector<int> r;
                for (int i = 0; i < d_; ++i)
                    if (i != skip) r.push_back(v[i]);
                std::sort(r.begin(), r.end());
                ridges[r].push_back(static_cast<int>(fi));
            }
        }
        std::vector<Facet> cone;
        for (const auto& [ridge, owners] : ridges) {
            if (owners.size() != 2) throw std::logic_error("hull: non-manifold ridge");
            bool va = vis[owners[0]], vb = vis[owners[1]];
            if (va == vb) continue;
            int fvis = va ? owners[0] : owners[1];
            // replace the vertex opposite the ridge with p, keeping slots
            Facet nf;
            nf.v = facets_[fvis].v;
            for (int& x : nf.v) {
                bool in_ridge = std::binary_search(ridge.begin(), ridge.end(), x);
                if (!in_ridge) {
                    x = p;
                    break;
                }
            }
            cone.push_back(std::move(nf));
        }
        for (int fi : visible) facets_[fi].alive = false;
        for (auto& f : cone) facets_.push_back(std::move(f));
    }

    const std::vector<IPoint>& pts_;
    int d_;
    OrientOracle orient_;
    std::vector<Facet> facets_;
    bool built_ = false;
};

// ---------------------------------------------------------------------------
// rational <-> integer scaling and affine-rank reduction
// ---------------------------------------------------------------------------

// scale rational points by the common denominator; returns the factor
Int to_integer_points(const std::vector<RPoint>& pts, std::vector<IPoint>& out) {
    Int l(1);
    for (const auto& p : pts)
        for (const auto& c : p) {
            Int t;
            mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
            l = t;
        }
    out.clear();
    out.reserve(pts.size());
    for (const auto& p : pts) {
        IPoint q(p.size());
        for (size_t i = 0; i < p.size(); ++i) q[i] = p[i].num() * (l / p[i].den());
        out.push_back(std::move(q));
    }
    return l;
}

// rank of the span of (pts[i] - pts[0]) and a basis index list
int affine_rank(const std::vector<RPoint>& pts, std::vector<size_t>* basis_points = nullptr) {
    if (pts.empty()) return -1;
    size_t d = pts[0].size();
    std::vector<std::vector<Rational>> rows;
    std::vector<size_t> chosen;
    for (size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rational> v(d);
        for (size_t j = 0; j < d; ++j) v[j] = pts[i][j] - pts[0][j];
        // eliminate against current rows
        for (const auto& r : rows) {
            size_t piv = 0;
            while (piv < d && r[piv].sign() == 0) ++piv;
            if (piv == d) continue;
            if (v[piv].sign() != 0) {
                Rational f = v[piv] / r[piv];
                for (size_t j = 0; j < d; ++j) v[j] -= f * r[j];
            }
        }
        bool nonzero = false;
        for (const auto& c : v)
            if (c.sign() != 0) nonzero = true;
        if (nonzero) {
            rows.push_back(std::move(v));
            chosen.push_back(i);
            if (rows.size() == d) break;
        }
    }
    if (basis_points) *basis_points = chosen;
    return static_cast<int>(rows.size());
}

// express points in coordinates of the affine basis spanned by basis_points
std::vector<RPoint> reduce_to_span(const std::vector<RPoint>& pts,
                                   const std::vector<size_t>& basis_points) {
    size_t d = pts[0].size();
    size_t r = basis_points.size();
    // basis matrix columns b_k = pts[basis_points[k]] - pts[0]
    // solve B * lambda = x - pts[0] by Gaussian elimination for each point
    std::vector<std::vector<Rational>> b(d, std::vector<Rational>(r));
    for (size_t k = 0; k < r; ++k)
        for (size_t j = 0; j < d; ++j) b[j][k] = pts[basis_points[k]][j] - pts[0][j];
    std::vector<RPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        // augmented elimination
        std::vector<std::vector<Rational>> m(d, std::vector<Rational>(r + 1));
        for (size_t j = 0; j < d; ++j) {
            for (size_t k = 0; k < r; ++k) m[j][k] = b[j][k];
            m[j][r] = p[j] - pts[0][j];
        }
        size_t row = 0;
        std::vector<size_t> pivot_row(r);
        for (size_t col = 0; col < r; ++col) {
            size_t piv = row;
            while (piv < d && m[piv][col].sign() == 0) ++piv;
            if (piv == d) throw std::logic_error("reduce_to_span: dependent basis");
            std::swap(m[piv], m[row]);
            for (size_t i = 0; i < d; ++i) {
                if (i == row || m[i][col].sign() == 0) continue;
                Rational f = m[i][col] / m[row][col];
                for (size_t k = col; k <= r; ++k) m[i][k] -= f * m[row][k];
            }
            pivot_row[col] = row;
            ++row;
        }
        // consistency: zero rows must have zero rhs (guaranteed by rank)
        for (size_t i = row; i < d; ++i)
            if (m[i][r].sign() != 0) throw std::logic_error("reduce_to_span: point outside span");
        RPoint q(r);
        for (size_t col = 0; col < r; ++col) q[col] = m[pivot_row[col]][r] / m[pivot_row[col]][col];
        out.push_back(std::move(q));
    }
    return out;
}

bool rpoint_less(const RPoint& a, const RPoint& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

// extreme-point indices of a full-dimensional integer point set; the SoS hull
// over-approximates the vertex set, then each candidate is checked against the
// hull of the remaining points (which may be lower-dimensional)
std::vector<int> extreme_indices_fulldim(const std::vector<IPoint>& pts, int dim) {
    SosHull hull(pts, dim);
    std::vector<int> cand = hull.vertex_indices();
    std::vector<int> out;
    for (int v : cand) {
        std::vector<RPoint> others;
        others.reserve(pts.size() - 1);
        for (size_t i = 0; i < pts.size(); ++i) {
            if (static_cast<int>(i) == v) continue;
            RPoint r(pts[i].size());
            for (size_t j = 0; j < pts[i].size(); ++j) r[j] = Rational(pts[i][j]);
            others.push_back(std::move(r));
        }
        RPoint q(pts[v].size());
        for (size_t j = 0; j < q.size(); ++j) q[j] = Rational(pts[v][j]);
        if (!point_in_hull(q, others)) out.push_back(v);
    }
    return out;
}

}  // namespace

bool point_in_hull(const RPoint& q, const std::vector<RPoint>& points) {
    if (points.empty()) return false;
    for (const auto& p : points)
        if (p == q) return true;
    int d = static_cast<int>(q.size());
    std::vector<size_t> basis;
    int r = affine_rank(points, &basis);
    if (r == 0) return false;  // single distinct point, and q differs
    std::vector<RPoint> all = points;
    all.push_back(q);
    std::vector<size_t> basis_all;
    if (affine_rank(all, &basis_all) > r) return false;  // q outside the affine span
    if (r < d) {
        auto red = reduce_to_span(all, basis);
        RPoint qr = red.back();
        red.pop_back();
        return point_in_hull(qr, red);
    }
    std::vector<IPoint> ipts;
    to_integer_points(all, ipts);
    IPoint qi = ipts.back();
    ipts.pop_back();
    dedup_points(ipts);
    SosHull hull(ipts, d);
    if (!hull.full_dimensional()) throw std::logic_error("point_in_hull: rank mismatch");
    return hull.real_contains(qi);
}

Polytope convex_hull(const std::vector<RPoint>& points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty point set");
    size_t d = points[0].size();
    if (d == 0) throw std::invalid_argument("convex_hull: zero-dimensional points");
    for (const auto& p : points)
        if (p.size() != d) throw std::invalid_argument("convex_hull: dimension mismatch");
    std::vector<RPoint> pts = points;
    std::sort(pts.begin(), pts.end(), rpoint_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Polytope out;
    out.ambient_dim = static_cast<int>(d);
    if (pts.size() == 1) {
        out.vertices = pts;
        return out;
    }
    std::vector<size_t> basis;
    int r = affine_rank(pts, &basis);
    std::vector<char> keep(pts.size(), 0);
    if (r == 1 && basis.size() == 1 && pts.size() >= 2) {
        // segment: endpoints along the basis direction
        auto red = reduce_to_span(pts, basis);
        size_t lo = 0, hi = 0;
        for (size_t i = 1; i < red.size(); ++i) {
            if (red[i][0] < red[lo][0]) lo = i;
            if (red[i][0] > red[hi][0]) hi = i;
        }
        keep[lo] = keep[hi] = 1;
    } else if (r < static_cast<int>(d)) {
        auto red = reduce_to_span(pts, basis);
        Polytope sub = convex_hull(red);
        for (size_t i = 0; i < red.size(); ++i)
            for (const auto& v : sub.vertices)
                if (red[i] == v) keep[i] = 1;
    } else {
        std::vector<IPoint> ipts;
        to_integer_points(pts, ipts);
        for (int idx : extreme_indices_fulldim(ipts, static_cast<int>(d))) keep[idx] = 1;
    }
    for (size_t i = 0; i < pts.size(); ++i)
        if (keep[i]) out.vertices.push_back(pts[i]);
    return out;
}

Rational volume(const Polytope& p) {
    if (p.vertices.empty()) throw std::invalid_argument("volume: empty polytope");
    int d = p.ambient_dim;
    if (static_cast<int>(p.vertices.size()) < d + 1) return Rational(0);
    std::vector<IPoint> ipts;
    Int scale = to_integer_points(p.vertices, ipts);
    dedup_points(ipts);
    Int vd = lattice_hull_volume_dfact(ipts, d);
    Rational v(vd, factorial(d));
    return v / Rational(scale).pow_int(d);
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("minkowski_sum: dimension mismatch");
    std::vector<RPoint> sums;
    sums.reserve(a.vertices.size() * b.vertices.size());
    for (const auto& u : a.vertices)
        for (const auto& v : b.vertices) {
            RPoint s(u.size());
            for (size_t i = 0; i < u.size(); ++i) s[i] = u[i] + v[i];
            sums.push_back(std::move(s));
        }
    return convex_hull(sums);
}

Int lattice_hull_volume_dfact(const std::vector<IPoint>& pts, int dim) {
    if (dim == 1) {
        Int lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) {
            if (p[0] < lo) lo = p[0];
            if (p[0] > hi) hi = p[0];
        }
        return hi - lo;
    }
    std::vector<IPoint> q = pts;
    dedup_points(q);
    SosHull hull(q, dim);
    return hull.volume_dfact();
}

Int mixed_volume_lattice(const std::vector<std::pair<std::vector<IPoint>, int>>& ps, int dim) {
    int total = 0;
    for (const auto& [verts, mult] : ps) {
        if (mult < 1) throw std::invalid_argument("mixed_volume_lattice: bad multiplicity");
        for (const auto& v : verts)
            if (static_cast<int>(v.size()) != dim)
                throw std::invalid_argument("mixed_volume_lattice: dimension mismatch");
        total += mult;
    }
    if (total != dim) throw std::invalid_argument("mixed_volume_lattice: multiplicities must sum to dim");

    size_t t = ps.size();
    std::vector<int> dil(t, 0);
    Int acc(0);
    Int dfact = factorial(dim);
    while (true) {
        // next dilation vector (odometer)
        size_t i = 0;
        while (i < t && dil[i] == ps[i].second) {
            dil[i] = 0;
            ++i;
        }
        if (i == t) break;
        ++dil[i];
        // Minkowski sum of dil[k] * P_k (dilation, since P+P = 2P for convex P)
        std::vector<IPoint> sum;
        sum.push_back(IPoint(dim, Int(0)));
        int used = 0;
        Int coef(1);
        for (size_t k = 0; k < t; ++k) {
            coef *= binomial(ps[k].second, dil[k]);
            if (dil[k] == 0) continue;
            used += dil[k];
            std::vector<IPoint> next;
            next.reserve(sum.size() * ps[k].first.size());
            for (const auto& s : sum)
                for (const auto& v : ps[k].first) {
                    IPoint w(dim);
                    for (int j = 0; j < dim; ++j) w[j] = s[j] + v[j] * dil[k];
                    next.push_back(std::move(w));
                }
            dedup_points(next);
            sum = std::move(next);
        }
        Int vol = lattice_hull_volume_dfact(sum, dim);
        if (((dim - used) & 1) != 0) vol = -vol;
        acc += coef * vol;
    }
    if (acc % dfact != 0)
        throw std::logic_error("mixed_volume_lattice: non-integral normalized mixed volume");
    return acc / dfact;
}

Rational mixed_volume_normalized(const std::vector<Polytope>& ps) {
    if (ps.empty()) throw std::invalid_argument("mixed_volume_normalized: empty input");
    int d = ps[0].ambient_dim;
    if (static_cast<int>(ps.size()) != d)
        throw std::invalid_argument("mixed_volume_normalized: need exactly d polytopes");
    Rational scale_prod(1);
    std::vector<std::pair<std::vector<IPoint>, int>> input;
    for (const auto& p : ps) {
        if (p.ambient_dim != d)
            throw std::invalid_argument("mixed_volume_normalized: dimension mismatch");
        std::vector<IPoint> ipts;
        Int s = to_integer_points(p.vertices, ipts);
        dedup_points(ipts);
        scale_prod *= Rational(s);
        // merge identical polytopes into multiplicities
        bool merged = false;
        for (auto& [verts, mult] : input)
            if (verts.size() == ipts.size()) {
                bool eq = true;
                for (size_t i = 0; i < verts.size() && eq; ++i)
                    if (ipoint_cmp(verts[i], ipts[i]) != 0) eq = false;
                if (eq) {
                    ++mult;
                    merged = true;
                    break;
                }
            }
        if (!merged) input.emplace_back(std::move(ipts), 1);
    }
    // the scaled polytopes may collide only if the scales matched; merging is
    // only an optimization, correctness does not depend on it
    Int mv = mixed_volume_lattice(input, d);
    return Rational(mv) / scale_prod;
}

}  // namespace dyndeg
