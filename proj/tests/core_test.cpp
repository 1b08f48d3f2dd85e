#include <gtest/gtest.h>

#include <sstream>

#include "chroma/genericity.hpp"
#include "chroma/io.hpp"
#include "chroma/types.hpp"
#include "helpers.hpp"

using namespace chroma;

TEST(ChromaticPointSet, Basics) {
    ChromaticPointSet chi = chroma::testing::ex1();
    EXPECT_EQ(chi.dim(), 1);
    EXPECT_EQ(chi.num_colors(), 2);
    EXPECT_EQ(chi.s(), 1);
    EXPECT_EQ(chi.size(), 3);
    EXPECT_EQ(chi.color_class(0), (std::vector<int>{0, 2}));
    EXPECT_EQ(chi.color_class(1), (std::vector<int>{1}));
    EXPECT_EQ(simplex_colors(chi, {0, 1}), (std::set<int>{0, 1}));
    EXPECT_EQ(simplex_colors(chi, {0, 2}), (std::set<int>{0}));
}

TEST(ChromaticPointSet, EveryColorMustOccur) {
    EXPECT_THROW(ChromaticPointSet(1, {{Rat(0)}, {Rat(1)}}, {0, 2}), InputError);
}

TEST(ChromaticPointSet, RestrictAndDecolor) {
    ChromaticPointSet chi = chroma::testing::ex1();
    auto [sub, kept] = chi.restrict_to_colors({0});
    EXPECT_EQ(sub.size(), 2);
    EXPECT_EQ(sub.num_colors(), 1);
    EXPECT_EQ(kept, (std::vector<int>{0, 2}));
    ChromaticPointSet mono = chi.decolored();
    EXPECT_EQ(mono.num_colors(), 1);
    EXPECT_EQ(mono.size(), 3);
}

TEST(SimplicialComplex, ClosureAndContains) {
    SimplicialComplex k({{0, 1, 2}, {2, 3}});
    EXPECT_EQ(k.dim(), 2);
    EXPECT_TRUE(k.contains({0, 2}));
    EXPECT_TRUE(k.contains({3}));
    EXPECT_FALSE(k.contains({1, 3}));
    EXPECT_EQ(k.closure().size(), 9u);  // 4 vertices, 4 edges, 1 triangle
}

TEST(Filtration, OrderAndMonotonicity) {
    Filtration f({{0}, {1}, {0, 1}}, {Rat(0), Rat(0), Rat(1, 4)});
    EXPECT_EQ(f.size(), 3u);
    EXPECT_EQ(f.simplex(2), (Simplex{0, 1}));
    EXPECT_EQ(f.value_of({0, 1}), Rat(1, 4));
    // non-monotone input rejected
    EXPECT_THROW(Filtration({{0}, {1}, {0, 1}}, {Rat(1), Rat(0), Rat(0)}), InputError);
}

TEST(Genericity, AcceptsGenericRejectsCospherical) {
    EXPECT_TRUE(validate_genericity(chroma::testing::ex1()).ok);
    // four cocircular points of one color in the plane: d+s+2 = 4 on a sphere
    ChromaticPointSet square(
        2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}}, {0, 0, 0, 0});
    GenericityReport rep = validate_genericity(square);
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.violating.size(), 4u);
    // breaking the symmetry restores genericity
    ChromaticPointSet bent(
        2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(2)}}, {0, 0, 0, 0});
    EXPECT_TRUE(validate_genericity(bent).ok);
}

TEST(Ingest, ParsesEx1WithHeaderAndRelabel) {
    std::istringstream in("x,color\n0,0\n1,7\n2,0\n");
    IngestResult res = ingest_csv(in, 1);
    EXPECT_EQ(res.points.size(), 3);
    EXPECT_EQ(res.points.color(1), 1);  // label 7 densely relabeled to 1
    EXPECT_EQ(res.color_relabel.at(7), 1);
    EXPECT_EQ(res.points.point(2)[0], Rat(2));
}

TEST(Ingest, ErrorsNameTheRow) {
    std::istringstream wide("0,0\n1,2,3,0\n");
    try {
        ingest_csv(wide, 1);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
    std::istringstream dup("1,0\n1.0,0\n");
    EXPECT_THROW(ingest_csv(dup, 1), InputError);
    std::istringstream empty("x,color\n");
    EXPECT_THROW(ingest_csv(empty, 1), InputError);
    std::istringstream badnum("0,zebra\n");
    EXPECT_THROW(ingest_csv(badnum, 1), InputError);
}

TEST(Ingest, CsvRoundTrip) {
    ChromaticPointSet chi = generate_uniform(15, 2, 3, 99);
    std::ostringstream out;
    write_points_csv(out, chi);
    std::istringstream in(out.str());
    IngestResult back = ingest_csv(in, 2);
    ASSERT_EQ(back.points.size(), chi.size());
    for (int i = 0; i < chi.size(); ++i) {
        EXPECT_EQ(back.points.point(i), chi.point(i));
        EXPECT_EQ(back.points.color(i), chi.color(i));
    }
}

TEST(Generators, DeterministicAndValid) {
    ChromaticPointSet a = generate_uniform(20, 2, 3, 5);
    ChromaticPointSet b = generate_uniform(20, 2, 3, 5);
    ASSERT_EQ(a.size(), b.size());
    for (int i = 0; i < a.size(); ++i) EXPECT_EQ(a.point(i), b.point(i));
    EXPECT_NE(generate_uniform(20, 2, 3, 6).point(0), a.point(0));
    EXPECT_EQ(generate_circle_on_background(10, 30, 1).num_colors(), 2);
    EXPECT_EQ(generate_split_background_circle(10, 30, 1).num_colors(), 3);
    EXPECT_THROW(generate("circle-on-background", 0, 10, 2, 1), InputError);
    EXPECT_THROW(generate("no-such-pattern", 5, 5, 2, 1), InputError);
}
