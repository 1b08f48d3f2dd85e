#ifndef CHROMA_GENERATORS_HPP
#define CHROMA_GENERATORS_HPP

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chroma/types.hpp"

namespace chroma {

/// Deterministic helpers on top of the (standardized) mt19937_64 stream;
/// distributions from <random> are implementation-defined, so integers are
/// drawn directly and coordinates live on a fine rational grid.
namespace gen {

inline long draw(std::mt19937_64& rng, long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

constexpr long kGrid = 1000000;  // coordinate denominator

inline Rat grid_rat(long numer) {
    Rat r{Int(numer), Int(kGrid)};
    r.canonicalize();
    return r;
}

/// nearest grid point to a double in [lo, hi] grid units
inline long to_grid(double x) { return std::lround(x * kGrid); }

inline void push_unique(std::vector<RatVec>& pts, std::vector<int>& colors, RatVec p, int c,
                        std::set<std::vector<Rat>>& seen, std::mt19937_64& rng) {
    while (seen.count(p)) {
        for (auto& coord : p) coord += grid_rat(draw(rng, 1, 7));
    }
    seen.insert(p);
    pts.push_back(std::move(p));
    colors.push_back(c);
}

}  // namespace gen

/// n points per color drawn uniformly from the unit box (grid-snapped).
inline ChromaticPointSet generate_uniform(int n, int d, int num_colors, unsigned long seed) {
    if (n < num_colors) throw InputError("generate: need at least one point per color");
    std::mt19937_64 rng(seed);
    std::vector<RatVec> pts;
    std::vector<int> colors;
    std::set<std::vector<Rat>> seen;
    for (int i = 0; i < n; ++i) {
        RatVec p(d);
        for (int j = 0; j < d; ++j) p[j] = gen::grid_rat(gen::draw(rng, 0, gen::kGrid));
        gen::push_unique(pts, colors, std::move(p), i % num_colors, seen, rng);
    }
    return ChromaticPointSet(d, std::move(pts), std::move(colors));
}

/// One color on a noisy circle, the rest uniform background (d = 2).
/// Circle points are color 0; background points are color 1.
inline ChromaticPointSet generate_circle_on_background(int n_circle, int n_bg,
                                                       unsigned long seed) {
    if (n_circle < 1 || n_bg < 1) throw InputError("generate: counts must be positive");
    std::mt19937_64 rng(seed);
    std::vector<RatVec> pts;
    std::vector<int> colors;
    std::set<std::vector<Rat>> seen;
    const double r = 0.3, cx = 0.5, cy = 0.5;
    const long noise = gen::kGrid / 50;  // 2% of the box
    for (int i = 0; i < n_circle; ++i) {
        double a = 2.0 * M_PI * i / n_circle;
        RatVec p = {gen::grid_rat(gen::to_grid(cx + r * std::cos(a)) +
                                  gen::draw(rng, -noise, noise)),
                    gen::grid_rat(gen::to_grid(cy + r * std::sin(a)) +
                                  gen::draw(rng, -noise, noise))};
        gen::push_unique(pts, colors, std::move(p), 0, seen, rng);
    }
    for (int i = 0; i < n_bg; ++i) {
        RatVec p = {gen::grid_rat(gen::draw(rng, 0, gen::kGrid)),
                    gen::grid_rat(gen::draw(rng, 0, gen::kGrid))};
        gen::push_unique(pts, colors, std::move(p), 1, seen, rng);
    }
    return ChromaticPointSet(2, std::move(pts), std::move(colors));
}

/// One color on a noisy circle, background split into two half-plane colors
/// (left half color 1, right half color 2); d = 2, three colors.
inline ChromaticPointSet generate_split_background_circle(int n_circle, int n_bg,
                                                          unsigned long seed) {
    if (n_circle < 1 || n_bg < 2) throw InputError("generate: counts too small for the pattern");
    std::mt19937_64 rng(seed);
    std::vector<RatVec> pts;
    std::vector<int> colors;
    std::set<std::vector<Rat>> seen;
    const double r = 0.3, cx = 0.5, cy = 0.5;
    const long noise = gen::kGrid / 50;
    for (int i = 0; i < n_circle; ++i) {
        double a = 2.0 * M_PI * i / n_circle;
        RatVec p = {gen::grid_rat(gen::to_grid(cx + r * std::cos(a)) +
                                  gen::draw(rng, -noise, noise)),
                    gen::grid_rat(gen::to_grid(cy + r * std::sin(a)) +
                                  gen::draw(rng, -noise, noise))};
        gen::push_unique(pts, colors, std::move(p), 0, seen, rng);
    }
    bool saw1 = false, saw2 = false;
    for (int i = 0; i < n_bg; ++i) {
        long x = gen::draw(rng, 0, gen::kGrid), y = gen::draw(rng, 0, gen::kGrid);
        int c = x < gen::kGrid / 2 ? 1 : 2;
        if (i == n_bg - 2 && !saw1) c = 1;
        if (i == n_bg - 1 && !saw2) c = 2;
        (c == 1 ? saw1 : saw2) = true;
        RatVec p = {gen::grid_rat(x), gen::grid_rat(y)};
        gen::push_unique(pts, colors, std::move(p), c, seen, rng);
    }
    return ChromaticPointSet(2, std::move(pts), std::move(colors));
}

/// Well-separated blobs, one color per blob (d = 2).
inline ChromaticPointSet generate_blobs(int n_per_blob, int num_blobs, unsigned long seed) {
    if (n_per_blob < 1 || num_blobs < 1) throw InputError("generate: counts must be positive");
    std::mt19937_64 rng(seed);
    std::vector<RatVec> pts;
    std::vector<int> colors;
    std::set<std::vector<Rat>> seen;
    const long spread = gen::kGrid / 10;
    for (int b = 0; b < num_blobs; ++b) {
        double a = 2.0 * M_PI * b / num_blobs;
        long bx = gen::to_grid(0.5 + 0.35 * std::cos(a));
        long by = gen::to_grid(0.5 + 0.35 * std::sin(a));
        for (int i = 0; i < n_per_blob; ++i) {
            RatVec p = {gen::grid_rat(bx + gen::draw(rng, -spread, spread)),
                        gen::grid_rat(by + gen::draw(rng, -spread, spread))};
            gen::push_unique(pts, colors, std::move(p), b, seen, rng);
        }
    }
    return ChromaticPointSet(2, std::move(pts), std::move(colors));
}

inline ChromaticPointSet generate(const std::string& pattern, int n1, int n2, int num_colors,
                                  unsigned long seed) {
    if (pattern == "uniform-random") return generate_uniform(n1, 2, num_colors, seed);
    if (pattern == "circle-on-background") return generate_circle_on_background(n1, n2, seed);
    if (pattern == "split-background-circle")
        return generate_split_background_circle(n1, n2, seed);
    if (pattern == "blobs") return generate_blobs(n1, num_colors, seed);
    throw InputError("unknown generator pattern: " + pattern);
}

}  // namespace chroma

#endif
