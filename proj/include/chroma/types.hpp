#ifndef CHROMA_TYPES_HPP
#define CHROMA_TYPES_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chroma/rational.hpp"

namespace chroma {

/// Vertices as a strictly increasing list of point indices.
using Simplex = std::vector<int>;

struct GenericityViolation : std::runtime_error {
    std::vector<int> subset;  // indices of the offending points
    explicit GenericityViolation(std::vector<int> pts)
        : std::runtime_error("genericity violation"), subset(std::move(pts)) {}
};

/// Finite point set in R^d with a color label per point.  Immutable after
/// construction; point indices are stable identifiers.
class ChromaticPointSet {
  public:
    ChromaticPointSet(int dim, std::vector<RatVec> points, std::vector<int> colors)
        : dim_(dim), points_(std::move(points)), colors_(std::move(colors)) {
        if (dim_ < 1) throw InputError("dimension must be >= 1");
        if (points_.size() != colors_.size()) throw InputError("one color per point required");
        if (points_.empty()) throw InputError("point set must be nonempty");
        int max_color = -1;
        for (int c : colors_) {
            if (c < 0) throw InputError("colors must be non-negative");
            max_color = std::max(max_color, c);
        }
        num_colors_ = max_color + 1;
        std::vector<char> seen(num_colors_, 0);
        for (int c : colors_) seen[c] = 1;
        for (int j = 0; j < num_colors_; ++j)
            if (!seen[j]) throw InputError("color " + std::to_string(j) + " has no points (labels must be dense 0..s)");
        for (const auto& p : points_)
            if (static_cast<int>(p.size()) != dim_) throw InputError("coordinate vector of wrong length");
        color_classes_.resize(num_colors_);
        for (size_t i = 0; i < colors_.size(); ++i) color_classes_[colors_[i]].push_back(static_cast<int>(i));
    }

    int dim() const { return dim_; }
    int num_colors() const { return num_colors_; }          // s + 1
    int s() const { return num_colors_ - 1; }
    int size() const { return static_cast<int>(points_.size()); }
    const RatVec& point(int i) const { return points_[i]; }
    const std::vector<RatVec>& points() const { return points_; }
    int color(int i) const { return colors_[i]; }
    const std::vector<int>& colors() const { return colors_; }
    const std::vector<int>& color_class(int j) const { return color_classes_[j]; }

    /// Restriction to the colors in tau; point indices are re-labeled densely
    /// and the mapping new->old is returned alongside.
    std::pair<ChromaticPointSet, std::vector<int>> restrict_to_colors(const std::set<int>& tau) const {
        std::vector<RatVec> pts;
        std::vector<int> cols, back;
        std::map<int, int> relabel;
        int next = 0;
        for (int c : tau) relabel[c] = next++;
        for (int i = 0; i < size(); ++i) {
            if (!tau.count(colors_[i])) continue;
            pts.push_back(points_[i]);
            cols.push_back(relabel.at(colors_[i]));
            back.push_back(i);
        }
        if (pts.empty()) throw InputError("color restriction yields empty point set");
        return {ChromaticPointSet(dim_, std::move(pts), std::move(cols)), back};
    }

    /// Same points, all re-colored to 0 (used for the mono-chromatic comparison runs).
    ChromaticPointSet decolored() const {
        return ChromaticPointSet(dim_, points_, std::vector<int>(points_.size(), 0));
    }

  private:
    int dim_;
    int num_colors_;
    std::vector<RatVec> points_;
    std::vector<int> colors_;
    std::vector<std::vector<int>> color_classes_;
};

inline std::set<int> simplex_colors(const ChromaticPointSet& chi, const Simplex& s) {
    std::set<int> out;
    for (int v : s) out.insert(chi.color(v));
    return out;
}

/// Simplicial complex stored by a generating family of simplices (for the
/// Delaunay mosaic these are exactly the maximal cells); all faces are
/// materialized on demand by closure().
class SimplicialComplex {
  public:
    SimplicialComplex() = default;
    explicit SimplicialComplex(std::vector<Simplex> generators) : generators_(std::move(generators)) {
        std::sort(generators_.begin(), generators_.end());
        generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
    }

    const std::vector<Simplex>& generators() const { return generators_; }
    bool empty() const { return generators_.empty(); }

    int dim() const {
        int d = -1;
        for (const auto& s : generators_) d = std::max<int>(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    /// All faces of all generators, deduplicated, sorted by
    /// (dimension, lexicographic vertices).
    std::vector<Simplex> closure() const {
        std::set<Simplex> all;
        for (const auto& top : generators_) {
            const size_t n = top.size();
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                Simplex face;
                for (size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) face.push_back(top[i]);
                all.insert(std::move(face));
            }
        }
        std::vector<Simplex> out(all.begin(), all.end());
        std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        return out;
    }

    bool contains(const Simplex& s) const {
        for (const auto& t : generators_)
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) return true;
        return false;
    }

    /// Equality as point sets of simplices (generator lists may differ).
    bool operator==(const SimplicialComplex& o) const { return closure() == o.closure(); }

  private:
    std::vector<Simplex> generators_;
};

/// A complex plus a monotone squared-radius value per simplex.  The simplex
/// order refines (value, dimension, lexicographic vertices) and therefore
/// places every face before its cofaces.
class Filtration {
  public:
    Filtration() = default;
    Filtration(std::vector<Simplex> simplices, std::vector<Rat> values)
        : simplices_(std::move(simplices)), values_(std::move(values)) {
        if (simplices_.size() != values_.size()) throw InputError("filtration: one value per simplex");
        std::vector<size_t> order(simplices_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (values_[a] != values_[b]) return values_[a] < values_[b];
            if (simplices_[a].size() != simplices_[b].size()) return simplices_[a].size() < simplices_[b].size();
            return simplices_[a] < simplices_[b];
        });
        std::vector<Simplex> s2;
        std::vector<Rat> v2;
        s2.reserve(order.size());
        v2.reserve(order.size());
        for (size_t i : order) {
            s2.push_back(std::move(simplices_[i]));
            v2.push_back(std::move(values_[i]));
        }
        simplices_ = std::move(s2);
        values_ = std::move(v2);
        for (size_t i = 0; i < simplices_.size(); ++i) index_[simplices_[i]] = i;
        check_monotone();
    }

    size_t size() const { return simplices_.size(); }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const Simplex& simplex(size_t i) const { return simplices_[i]; }
    const Rat& value(size_t i) const { return values_[i]; }
    const Rat& value_of(const Simplex& s) const { return values_[index_.at(s)]; }
    size_t index_of(const Simplex& s) const { return index_.at(s); }
    bool contains(const Simplex& s) const { return index_.count(s) > 0; }

    Rat max_value() const {
        Rat m = 0;
        for (const auto& v : values_) m = std::max(m, v);
        return m;
    }

  private:
    void check_monotone() const {
        for (size_t i = 0; i < simplices_.size(); ++i) {
            const Simplex& s = simplices_[i];
            if (s.size() < 2) continue;
            for (size_t k = 0; k < s.size(); ++k) {
                Simplex face;
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != k) face.push_back(s[j]);
                auto it = index_.find(face);
                if (it == index_.end()) throw InputError("filtration: complex not closed under faces");
                if (values_[it->second] > values_[i]) throw InputError("filtration: value not monotone");
                if (it->second > i) throw InputError("filtration: face ordered after coface");
            }
        }
    }

    std::vector<Simplex> simplices_;
    std::vector<Rat> values_;
    std::map<Simplex, size_t> index_;
};

struct DiagramPoint {
    Rat birth;
    std::optional<Rat> death;  // nullopt == infinite
    Simplex birth_simplex;
    Simplex death_simplex;

    bool finite() const { return death.has_value(); }
    bool operator<(const DiagramPoint& o) const {
        if (birth != o.birth) return birth < o.birth;
        if (death.has_value() != o.death.has_value()) return o.death.has_value();  // infinite last
        if (death && o.death && *death != *o.death) return *death < *o.death;
        return birth_simplex < o.birth_simplex;
    }
};

/// Multiset of (birth, death) pairs for one homological degree.  Points with
/// birth == death are dropped at construction.
struct PersistenceDiagram {
    int degree = 0;
    std::vector<DiagramPoint> points;

    void add(DiagramPoint p) {
        if (p.death && *p.death == p.birth) return;  // zero persistence
        if (p.death && *p.death < p.birth) throw InputError("diagram point with death < birth");
        points.push_back(std::move(p));
    }
    void sort() { std::sort(points.begin(), points.end()); }

    /// Equality as multisets of (birth, death) value pairs.
    bool same_points(const PersistenceDiagram& o) const {
        auto key = [](const PersistenceDiagram& d) {
            std::multiset<std::pair<Rat, std::optional<Rat>>> k;
            for (const auto& p : d.points) k.insert({p.birth, p.death});
            return k;
        };
        return key(*this) == key(o);
    }
};

}  // namespace chroma

#endif
