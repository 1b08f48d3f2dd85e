#ifndef CHROMA_AFFINE_HPP
#define CHROMA_AFFINE_HPP

#include <vector>

#include "chroma/linalg.hpp"
#include "chroma/rational.hpp"

namespace chroma {

/// Exact coordinates of a point set inside its own affine hull.  The basis is
/// rational (not orthonormal), so distances in the reduced coordinates are
/// measured by the Gram form G = B^T B.
struct AffineFrame {
    int rank = 0;                     // dimension k of the affine hull
    std::vector<int> spanning;        // k+1 affinely independent input indices
    RatMat gram;                      // k x k, positive definite
    std::vector<RatVec> coords;       // one length-k vector per input point

    static AffineFrame build(const std::vector<RatVec>& pts) {
        AffineFrame f;
        const size_t n = pts.size();
        const size_t m = n ? pts[0].size() : 0;
        f.spanning.push_back(0);
        std::vector<RatVec> basis;  // independent difference vectors
        RatMat echelon;             // row echelon of basis for rank tests
        auto try_add = [&](size_t idx) {
            RatVec v = sub(pts[idx], pts[0]);
            RatVec w = v;
            for (const auto& row : echelon) {
                size_t piv = 0;
                while (piv < m && row[piv] == 0) ++piv;
                if (piv < m && w[piv] != 0) {
                    Rat fct = w[piv] / row[piv];
                    for (size_t j = 0; j < m; ++j) w[j] -= fct * row[j];
                }
            }
            bool nonzero = false;
            for (const auto& x : w) nonzero |= (x != 0);
            if (!nonzero) return false;
            echelon.push_back(w);
            basis.push_back(v);
            f.spanning.push_back(static_cast<int>(idx));
            return true;
        };
        for (size_t i = 1; i < n && basis.size() < m; ++i) try_add(i);
        f.rank = static_cast<int>(basis.size());
        const int k = f.rank;

        f.gram.assign(k, RatVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) f.gram[i][j] = dot(basis[i], basis[j]);

        // coordinates: solve (B^T B) t = B^T (p - p0) per point
        f.coords.resize(n);
        for (size_t i = 0; i < n; ++i) {
            RatVec rhs(k);
            RatVec diff = sub(pts[i], pts[0]);
            for (int r = 0; r < k; ++r) rhs[r] = dot(basis[r], diff);
            auto sol = solve_affine(f.gram, rhs);
            f.coords[i] = sol->particular;  // gram is invertible
        }
        return f;
    }
};

}  // namespace chroma

#endif
