#ifndef CHROMA_GENERICITY_HPP
#define CHROMA_GENERICITY_HPP

#include <optional>
#include <vector>

#include "chroma/affine.hpp"
#include "chroma/predicates.hpp"
#include "chroma/types.hpp"

namespace chroma {

inline std::vector<RatVec> lifted_points(const ChromaticPointSet& chi) {
    std::vector<RatVec> out;
    out.reserve(chi.size());
    for (int i = 0; i < chi.size(); ++i)
        out.push_back(lift_chromatic(chi.point(i), chi.color(i), chi.dim(), chi.s()));
    return out;
}

struct GenericityReport {
    bool ok = true;
    std::vector<int> violating;  // one offending subset of point indices, if any
};

/// Exhaustive check of the genericity assumption: no d+s+2 lifted points on a
/// common (d+s-1)-sphere.  Works in the affine hull of the lifted set, so
/// point sets spanning a lower-dimensional flat are judged inside that flat.
/// Subsets lying in a proper hyperplane of the hull are allowed.
/// Cost is binomial(n, k+2); intended for desk-scale inputs.
inline GenericityReport validate_genericity(const ChromaticPointSet& chi) {
    const auto lifted = lifted_points(chi);
    const auto frame = AffineFrame::build(lifted);
    const int k = frame.rank;
    const int n = chi.size();
    const int need = k + 2;
    if (n < need) return {};

    std::vector<int> idx(need);
    std::vector<RatVec> subset(need);
    // enumerate all (k+2)-subsets
    std::vector<int> c(need);
    for (int i = 0; i < need; ++i) c[i] = i;
    while (true) {
        for (int i = 0; i < need; ++i) subset[i] = frame.coords[c[i]];
        if (lifted_degenerate(subset, frame.gram)) {
            // distinguish co-spherical (violation) from co-hyperplanar (allowed)
            RatMat diffs(need - 1, RatVec(k));
            for (int i = 1; i < need; ++i)
                for (int j = 0; j < k; ++j) diffs[i - 1][j] = subset[i][j] - subset[0][j];
            if (rank_of(diffs) == static_cast<size_t>(k)) {
                GenericityReport r;
                r.ok = false;
                r.violating.assign(c.begin(), c.end());
                return r;
            }
        }
        // next combination
        int i = need - 1;
        while (i >= 0 && c[i] == n - need + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < need; ++j) c[j] = c[j - 1] + 1;
    }
    return {};
}

}  // namespace chroma

#endif
