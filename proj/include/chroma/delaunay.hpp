#ifndef CHROMA_DELAUNAY_HPP
#define CHROMA_DELAUNAY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "chroma/affine.hpp"
#include "chroma/predicates.hpp"
#include "chroma/types.hpp"

namespace chroma {

/// Delaunay mosaic of a point set in R^m by randomized incremental insertion
/// (Bowyer-Watson) with exact predicates and a symbolic vertex at infinity.
/// The triangulation is built inside the affine hull of the input, so inputs
/// spanning a lower-dimensional flat need no special treatment; distances in
/// hull coordinates are measured by the Gram form of the hull basis.
class DelaunayBuilder {
  public:
    static constexpr int kInf = -1;

    explicit DelaunayBuilder(const std::vector<RatVec>& pts) : pts_(pts) {
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j])
                    throw InputError("duplicate points at indices " + std::to_string(i) + " and " +
                                     std::to_string(j));
        frame_ = AffineFrame::build(pts);
        k_ = frame_.rank;
    }

    /// Top-dimensional Delaunay simplices (vertex index lists, sorted).
    std::vector<Simplex> build() {
        const size_t n = pts_.size();
        if (n == 1 || k_ == 0) return {Simplex{0}};
        init_first_cell();
        std::vector<int> rest;
        std::vector<char> used(n, 0);
        for (int v : frame_.spanning) used[v] = 1;
        for (size_t i = 0; i < n; ++i)
            if (!used[i]) rest.push_back(static_cast<int>(i));
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);  // fixed seed: deterministic output
        std::shuffle(rest.begin(), rest.end(), rng);
        for (int v : rest) insert(v);

        std::vector<Simplex> out;
        for (size_t c = 0; c < cells_.size(); ++c) {
            if (!alive_[c] || is_infinite(c)) continue;
            Simplex s(cells_[c].begin(), cells_[c].end());
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    using Cell = std::vector<int>;  // k+1 vertex ids, kInf allowed once

    const std::vector<RatVec>& pts_;
    AffineFrame frame_;
    int k_ = 0;
    std::vector<Cell> cells_;
    std::vector<Cell> neigh_;  // neigh_[c][i] = cell across the facet opposite cells_[c][i]
    std::vector<char> alive_;
    size_t last_cell_ = 0;

    const RatVec& coord(int v) const { return frame_.coords[v]; }
    bool is_infinite(size_t c) const {
        return std::find(cells_[c].begin(), cells_[c].end(), kInf) != cells_[c].end();
    }

    int orient_facet(const std::vector<int>& facet, int v) const {
        std::vector<RatVec> p;
        p.reserve(facet.size() + 1);
        for (int f : facet) p.push_back(coord(f));
        p.push_back(coord(v));
        // orientation() expects m+1 points of dimension m with the base point
        // first; facet has k vertices, so this is a k x k determinant
        RatMat mat(k_, RatVec(k_));
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) mat[i][j] = p[i + 1][j] - p[0][j];
        return sign_det(mat);
    }

    bool in_conflict(size_t c, int v) {
        const Cell& cell = cells_[c];
        auto inf_pos = std::find(cell.begin(), cell.end(), kInf);
        if (inf_pos == cell.end()) {
            std::vector<RatVec> p;
            for (int u : cell) p.push_back(coord(u));
            int raw = in_sphere_raw(p, coord(v), frame_.gram);
            if (raw == 0) report_degeneracy(cell, v);
            int orient = orientation_of(cell);
            return raw * orient * in_sphere_parity(k_) > 0;
        }
        // infinite cell: facet = finite vertices, compare v against the apex
        // of the finite neighbor across that facet
        size_t ip = static_cast<size_t>(inf_pos - cell.begin());
        std::vector<int> facet;
        for (size_t i = 0; i < cell.size(); ++i)
            if (i != ip) facet.push_back(cell[i]);
        size_t nb = neigh_[c][ip];
        int apex = opposite_vertex(nb, facet);
        int ov = orient_facet(facet, v);
        int oa = orient_facet(facet, apex);
        if (ov == 0) return in_conflict(nb, v);  // on the hull hyperplane
        return ov != oa;                          // strictly outside the hull facet
    }

    int orientation_of(const Cell& cell) const {
        RatMat mat(k_, RatVec(k_));
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) mat[i][j] = coord(cell[i + 1])[j] - coord(cell[0])[j];
        return sign_det(mat);
    }

    int opposite_vertex(size_t cell, const std::vector<int>& facet) const {
        for (int u : cells_[cell])
            if (u != kInf && std::find(facet.begin(), facet.end(), u) == facet.end()) return u;
        throw std::logic_error("opposite_vertex: broken adjacency");
    }

    [[noreturn]] void report_degeneracy(const Cell& cell, int v) const {
        std::vector<int> subset(cell.begin(), cell.end());
        subset.push_back(v);
        std::sort(subset.begin(), subset.end());
        throw GenericityViolation(subset);
    }

    void init_first_cell() {
        Cell first(frame_.spanning.begin(), frame_.spanning.begin() + k_ + 1);
        size_t c0 = new_cell(first);
        std::vector<size_t> infs;
        for (int i = 0; i <= k_; ++i) {
            Cell inf_cell;
            for (int j = 0; j <= k_; ++j) inf_cell.push_back(j == i ? kInf : first[j]);
            infs.push_back(new_cell(inf_cell));
        }
        for (int i = 0; i <= k_; ++i) {
            neigh_[c0][i] = infs[i];
            // in inf cell i, kInf sits at position i; neighbor opposite kInf is c0
            neigh_[infs[i]][i] = c0;
            for (int j = 0; j <= k_; ++j) {
                if (j == i) continue;
                neigh_[infs[i]][j] = infs[j];
            }
        }
        last_cell_ = c0;
    }

    size_t new_cell(Cell verts) {
        cells_.push_back(std::move(verts));
        neigh_.emplace_back(cells_.back().size(), SIZE_MAX);
        alive_.push_back(1);
        return cells_.size() - 1;
    }

    size_t locate_conflict(int v) {
        // visibility walk from the last created cell, with a linear-scan fallback
        size_t c = last_cell_;
        if (!alive_[c]) c = any_alive();
        size_t steps = 0, cap = cells_.size() + 16;
        while (steps++ < cap) {
            if (in_conflict(c, v)) return c;
            if (is_infinite(c)) break;  // not in conflict with hull cell: fall back
            bool moved = false;
            const Cell& cell = cells_[c];
            for (size_t i = 0; i <= static_cast<size_t>(k_); ++i) {
                std::vector<int> facet;
                for (size_t j = 0; j < cell.size(); ++j)
                    if (j != i) facet.push_back(cell[j]);
                int ov = orient_facet(facet, v);
                int oa = orient_facet(facet, cell[i]);
                if (ov != 0 && ov != oa) {
                    c = neigh_[c][i];
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        for (size_t i = 0; i < cells_.size(); ++i)
            if (alive_[i] && in_conflict(i, v)) return i;
        throw std::logic_error("locate_conflict: no conflicting cell found");
    }

    size_t any_alive() const {
        for (size_t i = cells_.size(); i-- > 0;)
            if (alive_[i]) return i;
        throw std::logic_error("no alive cells");
    }

    void insert(int v) {
        size_t seed = locate_conflict(v);
        // BFS over the conflict region
        std::vector<size_t> region{seed};
        std::map<size_t, char> status;  // 1 = conflict, 0 = not
        status[seed] = 1;
        std::vector<size_t> stack{seed};
        struct BoundaryFacet {
            std::vector<int> facet;
            size_t outside;  // surviving cell across the facet
        };
        std::vector<BoundaryFacet> boundary;
        while (!stack.empty()) {
            size_t c = stack.back();
            stack.pop_back();
            const Cell cell = cells_[c];
            for (size_t i = 0; i < cell.size(); ++i) {
                size_t nb = neigh_[c][i];
                auto it = status.find(nb);
                char nb_conflict;
                if (it != status.end()) {
                    nb_conflict = it->second;
                } else {
                    nb_conflict = in_conflict(nb, v) ? 1 : 0;
                    status[nb] = nb_conflict;
                    if (nb_conflict) {
                        region.push_back(nb);
                        stack.push_back(nb);
                    }
                }
                if (!nb_conflict) {
                    std::vector<int> facet;
                    for (size_t j = 0; j < cell.size(); ++j)
                        if (j != i) facet.push_back(cell[j]);
                    boundary.push_back({std::move(facet), nb});
                }
            }
        }
        for (size_t c : region) alive_[c] = 0;

        // fan new cells from v over the boundary facets and stitch them
        std::map<std::vector<int>, std::pair<size_t, size_t>> ridge_map;  // ridge -> (cell, position)
        for (auto& bf : boundary) {
            Cell verts = bf.facet;
            verts.push_back(v);
            size_t nc = new_cell(verts);
            size_t vpos = verts.size() - 1;
            neigh_[nc][vpos] = bf.outside;
            // fix the outside cell's back-pointer
            for (size_t i = 0; i < cells_[bf.outside].size(); ++i)
                if (neigh_[bf.outside][i] < alive_.size() && !alive_[neigh_[bf.outside][i]] &&
                    facet_matches(bf.outside, i, bf.facet)) {
                    neigh_[bf.outside][i] = nc;
                }
            for (size_t i = 0; i < bf.facet.size(); ++i) {
                std::vector<int> ridge;
                for (size_t j = 0; j < bf.facet.size(); ++j)
                    if (j != i) ridge.push_back(bf.facet[j]);
                std::sort(ridge.begin(), ridge.end());
                auto it = ridge_map.find(ridge);
                if (it == ridge_map.end()) {
                    ridge_map[ridge] = {nc, i};
                } else {
                    neigh_[nc][i] = it->second.first;
                    neigh_[it->second.first][it->second.second] = nc;
                    ridge_map.erase(it);
                }
            }
            last_cell_ = nc;
        }
        if (!ridge_map.empty()) throw std::logic_error("insert: unstitched cavity ridge");
    }

    bool facet_matches(size_t cell, size_t pos, const std::vector<int>& facet) const {
        std::vector<int> f;
        for (size_t j = 0; j < cells_[cell].size(); ++j)
            if (j != pos) f.push_back(cells_[cell][j]);
        std::sort(f.begin(), f.end());
        std::vector<int> g = facet;
        std::sort(g.begin(), g.end());
        return f == g;
    }
};

/// Full Delaunay complex of a point set (maximal simplices; all faces admit
/// an empty circumsphere).
inline SimplicialComplex delaunay_mosaic(const std::vector<RatVec>& pts) {
    if (pts.empty()) return SimplicialComplex{};
    DelaunayBuilder builder(pts);
    return SimplicialComplex(builder.build());
}

}  // namespace chroma

#endif
