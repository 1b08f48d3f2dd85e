#include <gtest/gtest.h>

#include <random>

#include "chroma/persistence.hpp"
#include "chroma/rank_oracle.hpp"
#include "helpers.hpp"

using namespace chroma;
namespace ct = chroma::testing;

TEST(Persistence, TriangleBoundaryCircle) {
    Filtration f({{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}},
                 {Rat(0), Rat(0), Rat(0), Rat(1), Rat(1), Rat(1)});
    auto dgms = persistence_diagrams(f);
    EXPECT_TRUE(dgms[0].same_points(
        ct::diagram_of(0, {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}, {Rat(0), std::nullopt}})));
    EXPECT_TRUE(dgms[1].same_points(ct::diagram_of(1, {{Rat(1), std::nullopt}})));
}

TEST(Persistence, SingleVertex) {
    Filtration f({{0}}, {Rat(0)});
    auto dgms = persistence_diagrams(f);
    EXPECT_TRUE(dgms[0].same_points(ct::diagram_of(0, {{Rat(0), std::nullopt}})));
}

TEST(Persistence, ZeroPersistencePointsDropped) {
    ChromaticPointSet chi = ct::ex1();
    Filtration f = radius_function(chi, chromatic_delaunay(chi));
    auto dgms = persistence_diagrams(f);
    // degree 1: the {0,2} cycle and the filling triangle both enter at 1
    auto it = dgms.find(1);
    EXPECT_TRUE(it == dgms.end() || it->second.points.empty());
    EXPECT_TRUE(dgms[0].same_points(
        ct::diagram_of(0, {{Rat(0), Rat(1, 4)}, {Rat(0), Rat(1, 4)}, {Rat(0), std::nullopt}})));
}

TEST(SixPack, Ex1AllFamilies) {
    ChromaticPointSet chi = ct::ex1();
    Filtration f = radius_function(chi, chromatic_delaunay(chi));
    SixPack pack = six_module_diagrams(f, SimplicialComplex({{0, 2}}));
    EXPECT_TRUE(pack.kernel[0].same_points(ct::diagram_of(0, {{Rat(1, 4), Rat(1)}})));
    EXPECT_TRUE(pack.relative[0].same_points(ct::diagram_of(0, {{Rat(0), Rat(1, 4)}})));
    EXPECT_TRUE(pack.relative[1].same_points(ct::diagram_of(1, {{Rat(1, 4), Rat(1)}})));
    EXPECT_TRUE(pack.cokernel[0].same_points(ct::diagram_of(0, {{Rat(0), Rat(1, 4)}})));
    EXPECT_TRUE(pack.domain[0].same_points(
        ct::diagram_of(0, {{Rat(0), Rat(1)}, {Rat(0), std::nullopt}})));
    EXPECT_TRUE(pack.image[0].same_points(
        ct::diagram_of(0, {{Rat(0), Rat(1, 4)}, {Rat(0), std::nullopt}})));
    EXPECT_TRUE(pack.codomain[0].same_points(ct::diagram_of(
        0, {{Rat(0), Rat(1, 4)}, {Rat(0), Rat(1, 4)}, {Rat(0), std::nullopt}})));
}

TEST(SixPack, DegenerateSubcomplexChoices) {
    ChromaticPointSet chi = ct::ex1();
    Filtration f = radius_function(chi, chromatic_delaunay(chi));
    // L = K: kernel and cokernel empty, image = codomain
    std::vector<char> all(f.size(), 1);
    SixPack full = six_pack_diagrams(f, all);
    for (auto& [d, dg] : full.kernel) EXPECT_TRUE(dg.points.empty());
    for (auto& [d, dg] : full.cokernel) EXPECT_TRUE(dg.points.empty());
    EXPECT_TRUE(families_equal(full.image, full.codomain));
    for (auto& [d, dg] : full.relative) EXPECT_TRUE(dg.points.empty());
    // L = empty: image and kernel empty, cokernel = codomain
    std::vector<char> none(f.size(), 0);
    SixPack empty = six_pack_diagrams(f, none);
    for (auto& [d, dg] : empty.kernel) EXPECT_TRUE(dg.points.empty());
    for (auto& [d, dg] : empty.image) EXPECT_TRUE(dg.points.empty());
    EXPECT_TRUE(families_equal(empty.cokernel, empty.codomain));
}

TEST(SixPack, MatchesRankOracleOnRandomPairs) {
    for (unsigned long seed : {31ul, 32ul, 33ul}) {
        ct::SmallInstance inst = ct::small_instance(10, 2, seed);
        SixPack fast = six_pack_diagrams(inst.filt, inst.in_l);
        SixPack oracle = rank_oracle_six_pack(inst.filt, inst.in_l);
        for (const auto& label : SixPack::labels())
            EXPECT_TRUE(families_equal(fast.by_label(label), oracle.by_label(label)))
                << label << " seed " << seed;
    }
}

// Pairing must be invariant under the valid tie-breaking order: permuting
// equal-valued simplices (keeping faces before cofaces) gives the same
// diagrams as multisets of value pairs.
TEST(SixPack, TieOrderInvariance) {
    ct::SmallInstance inst = ct::small_instance(12, 2, 41);
    SixPack a = six_pack_diagrams(inst.filt, inst.in_l);
    // rebuild the filtration with reversed vertex labels: same values, a
    // different lexicographic order within equal-value groups
    int n = 0;
    for (size_t i = 0; i < inst.filt.size(); ++i)
        for (int v : inst.filt.simplex(i)) n = std::max(n, v + 1);
    std::vector<Simplex> sx;
    std::vector<Rat> vv;
    std::map<Simplex, char> lmap;
    for (size_t i = 0; i < inst.filt.size(); ++i) {
        Simplex s = inst.filt.simplex(i);
        for (int& v : s) v = n - 1 - v;
        std::sort(s.begin(), s.end());
        lmap[s] = inst.in_l[i];
        sx.push_back(std::move(s));
        vv.push_back(inst.filt.value(i));
    }
    Filtration relabeled(std::move(sx), std::move(vv));
    std::vector<char> in_l(relabeled.size());
    for (size_t i = 0; i < relabeled.size(); ++i) in_l[i] = lmap.at(relabeled.simplex(i));
    SixPack b = six_pack_diagrams(relabeled, in_l);
    for (const auto& label : SixPack::labels())
        EXPECT_TRUE(families_equal(a.by_label(label), b.by_label(label))) << label;
}

TEST(Norms, WorkedValuesAndGuards) {
    PersistenceDiagram dl = ct::diagram_of(0, {{Rat(0), Rat(1)}, {Rat(0), std::nullopt}});
    DiagramNorms n = norms(dl, Rat(2));
    EXPECT_EQ(n.zero_norm, 2);
    EXPECT_EQ(n.one_norm, Rat(3));
    PersistenceDiagram ker = ct::diagram_of(0, {{Rat(1, 4), Rat(1)}});
    DiagramNorms nk = norms(ker, Rat(2));
    EXPECT_EQ(nk.zero_norm, 1);
    EXPECT_EQ(nk.one_norm, Rat(3, 4));
    EXPECT_EQ(norms(PersistenceDiagram{}, Rat(2)).one_norm, Rat(0));
    EXPECT_THROW(norms(dl, Rat(1, 2)), InputError);  // cutoff below a finite death
}

TEST(Bottleneck, WorkedValues) {
    PersistenceDiagram a = ct::diagram_of(0, {{Rat(0), Rat(2)}});
    PersistenceDiagram empty;
    EXPECT_EQ(bottleneck_distance(a, a, Rat(10)), Rat(0));
    EXPECT_EQ(bottleneck_distance(a, empty, Rat(10)), Rat(1));
    PersistenceDiagram b = ct::diagram_of(0, {{Rat(0), Rat(3)}});
    EXPECT_EQ(bottleneck_distance(a, b, Rat(10)), Rat(1));
}

// Jittering filtration values by at most epsilon moves every diagram by at
// most epsilon in bottleneck distance.
TEST(Bottleneck, StabilityUnderValueJitter) {
    ct::SmallInstance inst = ct::small_instance(14, 2, 51);
    auto base = persistence_diagrams(inst.filt);
    std::mt19937_64 rng(99);
    const Rat eps(1, 1000);
    const Rat m = inst.filt.max_value();
    for (int trial = 0; trial < 20; ++trial) {
        // f'(s) = f(s) * (1 + t*eps/max f) is monotone whenever f is and
        // satisfies max |f' - f| = t*eps <= eps.
        Rat scale = eps / (m == 0 ? Rat(1) : m);
        Rat t(static_cast<long>(rng() % 1001), 1000);
        std::vector<Rat> vv;
        for (size_t i = 0; i < inst.filt.size(); ++i)
            vv.push_back(inst.filt.value(i) * (Rat(1) + scale * t));
        Filtration jit(std::vector<Simplex>(inst.filt.simplices()), std::move(vv));
        auto moved = persistence_diagrams(jit);
        Rat cut = Rat(2) * (jit.max_value() + 1);
        EXPECT_LE(bottleneck_distance(base, moved, cut), eps) << "trial " << trial;
    }
}

TEST(RankOracle, Ex1PointwiseRanks) {
    ChromaticPointSet chi = ct::ex1();
    Filtration f = radius_function(chi, chromatic_delaunay(chi));
    std::vector<char> in_l(f.size(), 0);
    for (size_t i = 0; i < f.size(); ++i)
        in_l[i] = simplex_colors(chi, f.simplex(i)) == std::set<int>{0} ? 1 : 0;
    SixPack oracle = rank_oracle_six_pack(f, in_l);
    EXPECT_TRUE(oracle.kernel[0].same_points(ct::diagram_of(0, {{Rat(1, 4), Rat(1)}})));
    EXPECT_TRUE(oracle.image[0].same_points(
        ct::diagram_of(0, {{Rat(0), Rat(1, 4)}, {Rat(0), std::nullopt}})));
}

TEST(RankOracle, SizeGuard) {
    ct::SmallInstance inst = ct::small_instance(12, 2, 61);
    EXPECT_THROW(rank_oracle_six_pack(inst.filt, inst.in_l, {}, 3), InputError);
}
