#ifndef CHROMA_MOSAIC_HPP
#define CHROMA_MOSAIC_HPP

#include <set>
#include <vector>

#include "chroma/delaunay.hpp"
#include "chroma/genericity.hpp"
#include "chroma/types.hpp"

namespace chroma {

/// Chromatic Delaunay mosaic: the Delaunay mosaic of the color-lifted points
/// in R^{d+s}, with vertices labeled by the original point indices.
/// lift_scale multiplies the color offsets u_j; the resulting complex does not
/// depend on it (any non-degenerate simplex works), which a property test
/// exercises with lift_scale = 2.
inline SimplicialComplex chromatic_delaunay(const ChromaticPointSet& chi, const Rat& lift_scale = Rat(1)) {
    std::vector<RatVec> lifted = lifted_points(chi);
    if (lift_scale != 1) {
        for (auto& p : lifted)
            for (int j = chi.dim(); j < chi.dim() + chi.s(); ++j) p[j] *= lift_scale;
    }
    return delaunay_mosaic(lifted);
}

/// Simplices of K whose color set is contained in tau.
inline SimplicialComplex subcomplex_by_colors(const SimplicialComplex& k, const ChromaticPointSet& chi,
                                              const std::set<int>& tau) {
    std::vector<Simplex> maximal;
    for (const auto& top : k.generators()) {
        Simplex kept;
        for (int v : top)
            if (tau.count(chi.color(v))) kept.push_back(v);
        if (!kept.empty()) maximal.push_back(std::move(kept));
    }
    return SimplicialComplex(std::move(maximal));
}

/// Union of subcomplex_by_colors over all tau with |tau| <= k_colors.
inline SimplicialComplex k_chromatic_subcomplex(const SimplicialComplex& k, const ChromaticPointSet& chi,
                                                int k_colors) {
    if (k_colors < 1 || k_colors > chi.num_colors()) throw InputError("k-chromatic level out of range");
    std::vector<Simplex> maximal;
    for (const auto& face : k.closure())
        if (static_cast<int>(simplex_colors(chi, face).size()) <= k_colors) maximal.push_back(face);
    return SimplicialComplex(std::move(maximal));
}

}  // namespace chroma

#endif
