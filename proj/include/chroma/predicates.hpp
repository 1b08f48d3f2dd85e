#ifndef CHROMA_PREDICATES_HPP
#define CHROMA_PREDICATES_HPP

#include <stdexcept>
#include <vector>

#include "chroma/linalg.hpp"
#include "chroma/rational.hpp"

namespace chroma {

/// Color lift: append u_j to a point in R^d, with u_0 = 0 and u_j = e_j
/// (j-th standard basis vector of R^s) for j >= 1.
inline RatVec lift_chromatic(const RatVec& a, int color, int d, int s) {
    if (static_cast<int>(a.size()) != d) throw InputError("lift_chromatic: point has wrong dimension");
    if (color < 0 || color > s) throw InputError("lift_chromatic: color out of range");
    RatVec out = a;
    out.resize(d + s, Rat(0));
    if (color >= 1) out[d + color - 1] = 1;
    return out;
}

/// Sign of the determinant of edge vectors p_1-p_0, ..., p_m-p_0 for m+1
/// points in R^m.  Zero iff the points are affinely degenerate.
inline int orientation(const std::vector<RatVec>& pts) {
    const size_t m = pts.size() - 1;
    RatMat mat(m, RatVec(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) mat[i][j] = pts[i + 1][j] - pts[0][j];
    return sign_det(mat);
}

/// |v|^2 under the quadratic form G (identity when G is empty).
inline Rat norm2(const RatVec& v, const RatMat& g) {
    if (g.empty()) return dot(v, v);
    Rat s = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < v.size(); ++j) s += v[i] * g[i][j] * v[j];
    }
    return s;
}

/// Raw paraboloid-lift determinant: rows (p_i - q, |p_i|^2 - |q|^2) for the
/// m+1 sphere-defining points.  Metric G generalizes to ellipsoids traced by
/// a quadratic form (used when working in coordinates of an affine hull).
/// For q strictly inside the circumsphere the sign equals
/// orientation(pts) * (-1)^m; multiply accordingly to normalize.
inline int in_sphere_raw(const std::vector<RatVec>& pts, const RatVec& q, const RatMat& g = {}) {
    const size_t m = q.size();
    const Rat q2 = norm2(q, g);
    RatMat mat(m + 1, RatVec(m + 1));
    for (size_t i = 0; i <= m; ++i) {
        for (size_t j = 0; j < m; ++j) mat[i][j] = pts[i][j] - q[j];
        mat[i][m] = norm2(pts[i], g) - q2;
    }
    return sign_det(mat);
}

/// Sign factor turning the raw determinant into the inside test: q is
/// strictly inside iff in_sphere_raw * orientation * in_sphere_parity(m) > 0.
inline int in_sphere_parity(size_t m) { return (m % 2 == 0) ? 1 : -1; }

/// +1 if q lies strictly inside the circumsphere of pts, 0 on it, -1 outside.
/// pts must be affinely independent.
inline int in_sphere(const std::vector<RatVec>& pts, const RatVec& q, const RatMat& g = {}) {
    int orient = orientation(pts);
    if (orient == 0) throw InputError("in_sphere: sphere-defining points are affinely degenerate");
    return in_sphere_raw(pts, q, g) * orient * in_sphere_parity(q.size());
}

/// True iff the m+2 (or more) given points lie on a common sphere/ellipsoid:
/// rank of the lifted point set drops.  Points on a common hyperplane also
/// make the lift degenerate; callers distinguish via affine rank.
inline bool lifted_degenerate(const std::vector<RatVec>& pts, const RatMat& g = {}) {
    const size_t m = pts[0].size();
    if (pts.size() != m + 2) throw InputError("lifted_degenerate: expected m+2 points");
    RatMat mat(m + 1, RatVec(m + 1));
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        for (size_t j = 0; j < m; ++j) mat[i][j] = pts[i][j] - pts.back()[j];
        mat[i][m] = norm2(pts[i], g) - norm2(pts.back(), g);
    }
    return sign_det(mat) == 0;
}

}  // namespace chroma

#endif
