// Shared fixtures for the test suite.
#ifndef CHROMA_TESTS_HELPERS_HPP
#define CHROMA_TESTS_HELPERS_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "chroma/generators.hpp"
#include "chroma/mosaic.hpp"
#include "chroma/radius.hpp"
#include "chroma/sixpack.hpp"
#include "chroma/types.hpp"

namespace chroma::testing {

/// The worked example: three points on the line, middle one colored.
inline ChromaticPointSet ex1() {
    return ChromaticPointSet(1, {{Rat(0)}, {Rat(1)}, {Rat(2)}}, {0, 1, 0});
}

inline PersistenceDiagram diagram_of(int degree,
                                     std::vector<std::pair<Rat, std::optional<Rat>>> pts) {
    PersistenceDiagram d;
    d.degree = degree;
    for (auto& [b, dd] : pts) d.add(DiagramPoint{b, dd, {}, {}});
    d.sort();
    return d;
}

/// A small seeded chromatic instance plus its radius filtration and the
/// membership flags of the color-tau subcomplex.
struct SmallInstance {
    ChromaticPointSet chi;
    Filtration filt;
    std::vector<char> in_l;
};

inline SmallInstance small_instance(int n, int num_colors, unsigned long seed,
                                    std::set<int> tau = {0}) {
    SmallInstance out{generate_uniform(n, 2, num_colors, seed), {}, {}};
    SimplicialComplex k = chromatic_delaunay(out.chi);
    out.filt = radius_function(out.chi, k);
    out.in_l = membership_flags(out.filt, subcomplex_by_colors(k, out.chi, tau));
    return out;
}

/// Two five-step filtered pairs that differ by the single 2-cell inserted in
/// their fourth steps; five of the six diagram families coincide while the
/// codomain families differ.
inline std::pair<Filtration, std::vector<char>> five_step_fixture(bool variant) {
    std::vector<std::pair<Simplex, int>> cells = {
        {{0}, 1}, {{1}, 2}, {{2}, 2}, {{3}, 2}, {{0, 2}, 2}, {{0, 3}, 2},
        {{1, 3}, 2}, {{1, 2}, 3}, {{2, 3}, 3}, {{0, 1}, 4}, {{1, 2, 3}, 5}};
    cells.emplace_back(variant ? Simplex{0, 1, 2} : Simplex{0, 2, 3}, 4);
    std::set<Simplex> lset = {{0}, {1}, {3}, {0, 3}, {1, 3}, {0, 1}};
    std::vector<Simplex> sx;
    std::vector<Rat> vv;
    for (auto& [s, v] : cells) {
        sx.push_back(s);
        vv.push_back(v);
    }
    Filtration f(std::move(sx), std::move(vv));
    std::vector<char> in_l(f.size(), 0);
    for (size_t i = 0; i < f.size(); ++i) in_l[i] = lset.count(f.simplex(i)) ? 1 : 0;
    return {std::move(f), std::move(in_l)};
}

}  // namespace chroma::testing

#endif
