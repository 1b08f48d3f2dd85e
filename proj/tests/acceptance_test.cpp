// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion is self-contained and uses only the public API
// plus the built-in brute-force oracles.

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chroma/generators.hpp"
#include "chroma/mosaic.hpp"
#include "chroma/persistence.hpp"
#include "chroma/radius.hpp"
#include "chroma/rank_oracle.hpp"
#include "chroma/sixpack.hpp"
#include "helpers.hpp"

using namespace chroma;
namespace ct = chroma::testing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what
              << std::endl;
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// the seeded instance pool shared by criteria 2, 4, and 5:
// 50 instances, n <= 25, d = 2, s in {1, 2}
struct PoolEntry {
    ChromaticPointSet chi;
    Filtration filt;
};
std::vector<PoolEntry>& instance_pool() {
    static std::vector<PoolEntry> pool = [] {
        std::vector<PoolEntry> out;
        for (int i = 0; i < 50; ++i) {
            int n = 8 + (i * 7) % 18;           // 8..25
            int colors = 2 + (i % 2);           // s in {1, 2}
            ChromaticPointSet chi = generate_uniform(n, 2, colors, 1000 + i);
            Filtration filt = radius_function(chi, chromatic_delaunay(chi));
            out.push_back({std::move(chi), std::move(filt)});
        }
        return out;
    }();
    return pool;
}

void criterion_1() {
    auto t0 = Clock::now();
    ChromaticPointSet chi = ct::ex1();
    Filtration f = radius_function(chi, chromatic_delaunay(chi));
    std::map<Simplex, Rat> want = {{{0}, Rat(0)},        {{1}, Rat(0)},      {{2}, Rat(0)},
                                   {{0, 1}, Rat(1, 4)},  {{1, 2}, Rat(1, 4)}, {{0, 2}, Rat(1)},
                                   {{0, 1, 2}, Rat(1)}};
    bool ok = f.size() == want.size();
    for (auto& [s, v] : want) ok = ok && f.contains(s) && f.value_of(s) == v;
    std::vector<char> in_l(f.size(), 0);
    for (size_t i = 0; i < f.size(); ++i)
        in_l[i] = simplex_colors(chi, f.simplex(i)) == std::set<int>{0} ? 1 : 0;
    SixPack fast = six_pack_diagrams(f, in_l);
    SixPack oracle = rank_oracle_six_pack(f, in_l);
    for (const auto& label : SixPack::labels())
        ok = ok && families_equal(fast.by_label(label), oracle.by_label(label));
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    std::ostringstream msg;
    msg << "worked-example golden values and rank-oracle agreement (" << dt << " s)";
    report(1, ok, msg.str());
}

void criterion_2() {
    auto t0 = Clock::now();
    bool ok = true;
    for (auto& inst : instance_pool())
        for (size_t i = 0; i < inst.filt.size() && ok; ++i)
            ok = radius_oracle(inst.chi, inst.filt.simplex(i)) == inst.filt.value(i);
    double dt = seconds_since(t0);
    ok = ok && dt < 120.0;
    std::ostringstream msg;
    msg << "radius function equals brute-force oracle on 50 seeded instances (" << dt << " s)";
    report(2, ok, msg.str());
}

void criterion_3() {
    bool ok = true;
    int found = 0;
    for (unsigned long seed = 2000; found < 50 && seed < 2400; ++seed) {
        int n = 5 + (int)(seed % 3);
        int colors = 2 + (int)(seed % 2);
        ChromaticPointSet chi = generate_uniform(n, 2, colors, seed);
        Filtration filt = radius_function(chi, chromatic_delaunay(chi));
        if (filt.size() > 60) continue;
        ++found;
        std::vector<char> in_l =
            membership_flags(filt, subcomplex_by_colors(chromatic_delaunay(chi), chi, {0}));
        SixPack fast = six_pack_diagrams(filt, in_l);
        SixPack oracle = rank_oracle_six_pack(filt, in_l);
        for (const auto& label : SixPack::labels())
            ok = ok && families_equal(fast.by_label(label), oracle.by_label(label));
    }
    report(3, ok && found == 50,
           "all six diagram families match the inclusion-exclusion rank oracle on 50 pairs");
}

void criterion_4() {
    bool ok = true;
    for (auto& inst : instance_pool()) {
        SimplicialComplex k = chromatic_delaunay(inst.chi);
        std::vector<char> in_l = membership_flags(inst.filt, subcomplex_by_colors(k, inst.chi, {0}));
        PackResult res = make_pack(inst.filt, in_l);
        for (int p = 0; p <= inst.chi.dim() && ok; ++p)
            ok = verify_norm_relations(res.pack, p, res.cutoff).ok();
        ok = ok && norm_alternating_sum(res.pack, res.cutoff) == 0;
        if (!ok) break;
    }
    report(4, ok, "norm relations and alternating sum exactly zero on every pool instance");
}

void criterion_5() {
    bool ok = true;
    for (auto& inst : instance_pool()) {
        SimplicialComplex k = chromatic_delaunay(inst.chi);
        std::vector<char> in_l = membership_flags(inst.filt, subcomplex_by_colors(k, inst.chi, {0}));
        RankIdentityReport rep = verify_rank_identities(inst.filt, in_l);
        if (!rep.ok) {
            ok = false;
            std::cerr << rep.detail << "\n";
            break;
        }
    }
    report(5, ok, "rank identities, Euler sums, and step-pattern exclusions at every index");
}

void criterion_6() {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
        int n = 20 + (i * 5) % 31;  // 20..50
        int colors = 2 + (i % 2);
        ChromaticPointSet chi = generate_uniform(n, 2, colors, 3000 + i);
        Filtration chrom_f = radius_function(chi, chromatic_delaunay(chi));
        ChromaticPointSet mono = chi.decolored();
        Filtration mono_f = radius_function(mono, chromatic_delaunay(mono));
        auto chrom = persistence_diagrams(chrom_f);
        auto plain = persistence_diagrams(mono_f);
        std::set<Rat> values;
        for (size_t j = 0; j < chrom_f.size(); ++j) values.insert(chrom_f.value(j));
        for (size_t j = 0; j < mono_f.size(); ++j) values.insert(mono_f.value(j));
        auto betti = [](const std::map<int, PersistenceDiagram>& dgms, int p, const Rat& r) {
            long b = 0;
            auto it = dgms.find(p);
            if (it == dgms.end()) return b;
            for (const auto& pt : it->second.points)
                if (pt.birth <= r && (!pt.death || *pt.death > r)) ++b;
            return b;
        };
        for (const Rat& r : values)
            for (int p = 0; p <= 2 && ok; ++p) ok = betti(chrom, p, r) == betti(plain, p, r);
    }
    report(6, ok, "Betti numbers of the chromatic and uncolored sublevel complexes agree");
}

void criterion_7() {
    ChromaticPointSet chi = generate_uniform(16, 2, 2, 4000);
    Filtration filt = radius_function(chi, chromatic_delaunay(chi));
    auto base = persistence_diagrams(filt);
    const Rat m = filt.max_value();
    std::mt19937_64 rng(4001);
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        Rat eps(1 + (long)(rng() % 50), 1000);
        Rat t((long)(rng() % 1001), 1000);
        Rat scale = (eps * t) / (m == 0 ? Rat(1) : m);
        std::vector<Rat> vv;
        for (size_t i = 0; i < filt.size(); ++i) vv.push_back(filt.value(i) * (Rat(1) + scale));
        Filtration jit(std::vector<Simplex>(filt.simplices()), std::move(vv));
        auto moved = persistence_diagrams(jit);
        Rat cut = Rat(2) * (jit.max_value() + 1);
        ok = bottleneck_distance(base, moved, cut) <= eps;
    }
    report(7, ok, "bottleneck distance bounded by the value-jitter magnitude, 20 trials");
}

void criterion_8() {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
        ChromaticPointSet chi = generate_uniform(12 + (i % 5), 2, 3, 5000 + i);
        TripleReport rep = triple_analysis(chi);
        ok = rep.shared_diagrams_consistent && rep.rank_inequalities_hold;
        if (!ok) std::cerr << rep.detail << "\n";
    }
    report(8, ok, "triple rank inequalities and shared-diagram consistency on 20 instances");
}

void criterion_9() {
    // circle on background, seed frozen by the reference run
    ChromaticPointSet circle = generate_circle_on_background(30, 120, 7);
    PackResult res = six_pack(circle, Selector::by_colors({0}));
    bool ok = true;
    auto k1 = res.pack.kernel.find(1);
    auto i1 = res.pack.image.find(1);
    ok = ok && k1 != res.pack.kernel.end() && k1->second.points.size() == 1;
    ok = ok && i1 != res.pack.image.end() && i1->second.points.size() == 1;
    if (ok) {
        const DiagramPoint& kp = k1->second.points[0];
        const DiagramPoint& ip = i1->second.points[0];
        ok = ip.death.has_value() && *ip.death == kp.birth;
        // dominance: the split points carry the circle-scale persistence
        ok = ok && (kp.death ? *kp.death : res.cutoff) - kp.birth > Rat(1, 20);
    }
    // split background circle, seed frozen by the reference run
    ChromaticPointSet split = generate_split_background_circle(30, 120, 7);
    TripleReport rep = triple_analysis(split);
    auto c2 = rep.pair_pack.cokernel.find(2);
    ok = ok && c2 != rep.pair_pack.cokernel.end() && c2->second.points.size() == 1;
    auto d2 = rep.pair_pack.domain.find(2);
    bool equal_death = false;
    if (d2 != rep.pair_pack.domain.end()) {
        std::map<Rat, int> deaths;
        for (const auto& p : d2->second.points)
            if (p.death) equal_death = equal_death || ++deaths[*p.death] > 1;
    }
    ok = ok && equal_death;
    report(9, ok,
           "seeded circle and split-background instances show the frozen qualitative signatures");
}

void criterion_10() {
    auto [f1, l1] = ct::five_step_fixture(false);
    auto [f2, l2] = ct::five_step_fixture(true);
    SixPack p1 = six_pack_diagrams(f1, l1);
    SixPack p2 = six_pack_diagrams(f2, l2);
    bool ok = families_equal(p1.kernel, p2.kernel) && families_equal(p1.relative, p2.relative) &&
              families_equal(p1.cokernel, p2.cokernel) && families_equal(p1.domain, p2.domain) &&
              families_equal(p1.image, p2.image) && !families_equal(p1.codomain, p2.codomain);
    report(10, ok, "five-step fixtures agree on five families and differ in the codomain");
}

void criterion_11() {
    auto t0 = Clock::now();
    ChromaticPointSet chi = generate_uniform(500, 2, 2, 6000);
    PackResult res = six_pack(chi, Selector::by_colors({0}));
    double dt = seconds_since(t0);
    bool ok = dt < 60.0 && !res.pack.codomain.empty();
    std::ostringstream msg;
    msg << "full pair six-pack for n=500, d=2, two colors in " << dt << " s (< 60 s)";
    report(11, ok, msg.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
