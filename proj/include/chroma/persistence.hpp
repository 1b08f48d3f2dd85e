#ifndef CHROMA_PERSISTENCE_HPP
#define CHROMA_PERSISTENCE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chroma/types.hpp"

namespace chroma {

/// Dense Z/2 column with xor and highest-set-bit ("low") support.
struct BitCol {
    std::vector<uint64_t> w;

    void set(size_t i) {
        size_t word = i / 64;
        if (word >= w.size()) w.resize(word + 1, 0);
        w[word] ^= (uint64_t{1} << (i % 64));
    }
    bool test(size_t i) const {
        size_t word = i / 64;
        return word < w.size() && (w[word] >> (i % 64)) & 1;
    }
    void operator^=(const BitCol& o) {
        if (o.w.size() > w.size()) w.resize(o.w.size(), 0);
        for (size_t i = 0; i < o.w.size(); ++i) w[i] ^= o.w[i];
        while (!w.empty() && w.back() == 0) w.pop_back();
    }
    int low() const {
        for (size_t i = w.size(); i-- > 0;)
            if (w[i]) return static_cast<int>(i * 64 + (63 - __builtin_clzll(w[i])));
        return -1;
    }
    bool empty() const {
        for (uint64_t x : w)
            if (x) return false;
        return true;
    }
    std::vector<size_t> ones() const {
        std::vector<size_t> out;
        for (size_t i = 0; i < w.size(); ++i)
            for (uint64_t x = w[i]; x; x &= x - 1) out.push_back(i * 64 + __builtin_ctzll(x));
        return out;
    }
};

/// Standard reduction R = D V with V invertible upper-triangular and all
/// nonzero columns of R having distinct lows.
struct Reduction {
    std::vector<BitCol> r, v;
    std::vector<int> low_of;                  // -1 for zero (positive) columns
    std::vector<int> col_with_low;            // row -> column index, -1 if none

    explicit Reduction(const std::vector<BitCol>& d, size_t nrows) {
        const size_t n = d.size();
        r.resize(n);
        v.resize(n);
        low_of.assign(n, -1);
        col_with_low.assign(nrows, -1);
        for (size_t j = 0; j < n; ++j) {
            r[j] = d[j];
            v[j].set(j);
            int l;
            while ((l = r[j].low()) >= 0 && col_with_low[l] >= 0) {
                r[j] ^= r[col_with_low[l]];
                v[j] ^= v[col_with_low[l]];
            }
            low_of[j] = l;
            if (l >= 0) col_with_low[l] = static_cast<int>(j);
        }
    }
};

/// Persistence of a quotient module presented by generators and relations
/// supplied in filtration order.  Generators are kept in an echelon with
/// expression tracking; each relation reduces to a combination of generators
/// and kills the youngest one still alive (elder rule).  A relation with a
/// nonzero echelon remainder enlarges the span without killing anything
/// (it coincides with a generator that was never emitted).
class QuotientTracker {
public:
    int add_generator(BitCol vec, int degree, Rat birth, Simplex s) {
        int id = static_cast<int>(gen_degree_.size());
        gen_degree_.push_back(degree);
        gen_birth_.push_back(std::move(birth));
        gen_simplex_.push_back(std::move(s));
        alive_.push_back(true);
        BitCol expr;
        expr.set(static_cast<size_t>(id));
        insert(std::move(vec), std::move(expr));
        return id;
    }

    void add_relation(BitCol vec, const Rat& death, const Simplex& s,
                      std::map<int, PersistenceDiagram>& out) {
        BitCol expr;
        int l;
        while ((l = vec.low()) >= 0) {
            auto it = pivot_.find(l);
            if (it == pivot_.end()) break;
            vec ^= ech_[it->second].vec;
            expr ^= ech_[it->second].expr;
        }
        if (l >= 0) {
            // remainder spans a class that is born and immediately relatable:
            // remember the vector so later elements still reduce correctly
            insert(std::move(vec), std::move(expr));
            return;
        }
        // substitute generators already killed by earlier relations
        int g;
        while ((g = expr.low()) >= 0 && !alive_[g]) expr ^= relexpr_.at(g);
        if (g < 0) return;  // redundant relation
        alive_[g] = false;
        relexpr_[g] = expr;
        DiagramPoint p;
        p.birth = gen_birth_[g];
        p.death = death;
        p.birth_simplex = gen_simplex_[g];
        p.death_simplex = s;
        diagram_for(out, gen_degree_[g]).add(std::move(p));
    }

    void finish(std::map<int, PersistenceDiagram>& out) const {
        for (size_t g = 0; g < alive_.size(); ++g) {
            if (!alive_[g]) continue;
            DiagramPoint p;
            p.birth = gen_birth_[g];
            p.birth_simplex = gen_simplex_[g];
            diagram_for(out, gen_degree_[g]).add(std::move(p));
        }
    }

private:
    struct Col {
        BitCol vec, expr;
    };

    static PersistenceDiagram& diagram_for(std::map<int, PersistenceDiagram>& out, int degree) {
        auto [it, inserted] = out.try_emplace(degree);
        if (inserted) it->second.degree = degree;
        return it->second;
    }

    void insert(BitCol vec, BitCol expr) {
        int l;
        while ((l = vec.low()) >= 0) {
            auto it = pivot_.find(l);
            if (it == pivot_.end()) break;
            vec ^= ech_[it->second].vec;
            expr ^= ech_[it->second].expr;
        }
        if (l < 0) throw std::logic_error("QuotientTracker: dependent generator");
        pivot_[l] = static_cast<int>(ech_.size());
        ech_.push_back({std::move(vec), std::move(expr)});
    }

    std::vector<Col> ech_;
    std::map<int, int> pivot_;
    std::map<int, BitCol> relexpr_;
    std::vector<char> alive_;
    std::vector<int> gen_degree_;
    std::vector<Rat> gen_birth_;
    std::vector<Simplex> gen_simplex_;
};

/// The six persistence diagrams of the map induced by a filtered inclusion.
/// Each entry maps homological degree to a diagram.
struct SixPack {
    std::map<int, PersistenceDiagram> kernel, relative, cokernel, domain, image, codomain;

    static const std::vector<std::string>& labels() {
        static const std::vector<std::string> l = {"kernel",   "relative", "cokernel",
                                                   "domain",   "image",    "codomain"};
        return l;
    }
    const std::map<int, PersistenceDiagram>& by_label(const std::string& name) const {
        if (name == "kernel") return kernel;
        if (name == "relative") return relative;
        if (name == "cokernel") return cokernel;
        if (name == "domain") return domain;
        if (name == "image") return image;
        if (name == "codomain") return codomain;
        throw InputError("unknown diagram label: " + name);
    }
    std::map<int, PersistenceDiagram>& by_label(const std::string& name) {
        return const_cast<std::map<int, PersistenceDiagram>&>(
            static_cast<const SixPack*>(this)->by_label(name));
    }
};

namespace detail {

inline void ordinary_diagrams(const Filtration& filt, const std::vector<int>& cols,
                              const std::vector<int>& pos_of, const Reduction& red,
                              std::map<int, PersistenceDiagram>& out) {
    const size_t n = cols.size();
    std::vector<char> is_death_row(n, 0);
    for (size_t j = 0; j < n; ++j)
        if (red.low_of[j] >= 0) is_death_row[red.low_of[j]] = 1;
    for (size_t j = 0; j < n; ++j) {
        if (red.low_of[j] < 0) continue;
        size_t birth_col = static_cast<size_t>(red.low_of[j]);
        const Simplex& bs = filt.simplex(cols[birth_col]);
        DiagramPoint p;
        p.birth = filt.value(cols[birth_col]);
        p.death = filt.value(cols[j]);
        p.birth_simplex = bs;
        p.death_simplex = filt.simplex(cols[j]);
        int degree = static_cast<int>(bs.size()) - 1;
        auto [it, ins] = out.try_emplace(degree);
        if (ins) it->second.degree = degree;
        it->second.add(std::move(p));
    }
    for (size_t j = 0; j < n; ++j) {
        if (red.low_of[j] >= 0 || is_death_row[j]) continue;
        const Simplex& bs = filt.simplex(cols[j]);
        DiagramPoint p;
        p.birth = filt.value(cols[j]);
        p.birth_simplex = bs;
        int degree = static_cast<int>(bs.size()) - 1;
        auto [it, ins] = out.try_emplace(degree);
        if (ins) it->second.degree = degree;
        it->second.add(std::move(p));
    }
    (void)pos_of;
}

}  // namespace detail

/// Ordinary persistence diagrams of a filtration, one per degree present.
inline std::map<int, PersistenceDiagram> persistence_diagrams(const Filtration& filt) {
    const size_t n = filt.size();
    std::vector<int> cols(n);
    std::vector<int> pos(n);
    for (size_t i = 0; i < n; ++i) cols[i] = static_cast<int>(i), pos[i] = static_cast<int>(i);
    std::vector<BitCol> d(n);
    for (size_t i = 0; i < n; ++i) {
        const Simplex& s = filt.simplex(i);
        if (s.size() < 2) continue;
        for (size_t k = 0; k < s.size(); ++k) {
            Simplex face;
            for (size_t j = 0; j < s.size(); ++j)
                if (j != k) face.push_back(s[j]);
            d[i].set(filt.index_of(face));
        }
    }
    Reduction red(d, n);
    std::map<int, PersistenceDiagram> out;
    detail::ordinary_diagrams(filt, cols, pos, red, out);
    for (auto& [deg, dg] : out) dg.sort();
    return out;
}

/// Six-pack of the inclusion of the sub-filtration flagged by in_l into the
/// full filtration; if in_m is nonempty, both sides are taken relative to the
/// sub-filtration flagged by in_m (which must be contained in in_l).
inline SixPack six_pack_diagrams(const Filtration& filt, const std::vector<char>& in_l,
                                 std::vector<char> in_m = {}) {
    const size_t n = filt.size();
    if (in_l.size() != n) throw InputError("six_pack_diagrams: flag size mismatch");
    if (in_m.empty()) in_m.assign(n, 0);
    if (in_m.size() != n) throw InputError("six_pack_diagrams: flag size mismatch");
    for (size_t i = 0; i < n; ++i)
        if (in_m[i] && !in_l[i]) throw InputError("six_pack_diagrams: inner complex not nested");

    // active simplices (not in M), K order; L ones get the leading block
    std::vector<int> k_cols, l_cols, rel_cols;
    std::vector<int> k_pos(n, -1), l_pos(n, -1), rel_pos(n, -1), im_row(n, -1);
    for (size_t i = 0; i < n; ++i) {
        if (in_m[i]) continue;
        k_pos[i] = static_cast<int>(k_cols.size());
        k_cols.push_back(static_cast<int>(i));
        if (in_l[i]) {
            l_pos[i] = static_cast<int>(l_cols.size());
            l_cols.push_back(static_cast<int>(i));
        } else {
            rel_pos[i] = static_cast<int>(rel_cols.size());
            rel_cols.push_back(static_cast<int>(i));
        }
    }
    const size_t nl = l_cols.size();
    for (size_t i = 0; i < n; ++i) {
        if (in_m[i]) continue;
        im_row[i] = in_l[i] ? l_pos[i] : static_cast<int>(nl) + rel_pos[i];
    }

    auto boundary = [&](int gi, const std::vector<int>& row_of) {
        BitCol col;
        const Simplex& s = filt.simplex(gi);
        if (s.size() < 2) return col;
        for (size_t k = 0; k < s.size(); ++k) {
            Simplex face;
            for (size_t j = 0; j < s.size(); ++j)
                if (j != k) face.push_back(s[j]);
            int r = row_of[filt.index_of(face)];
            if (r >= 0) col.set(static_cast<size_t>(r));
        }
        return col;
    };
    auto build = [&](const std::vector<int>& cs, const std::vector<int>& row_of) {
        std::vector<BitCol> d(cs.size());
        for (size_t j = 0; j < cs.size(); ++j) d[j] = boundary(cs[j], row_of);
        return d;
    };

    Reduction red_k(build(k_cols, k_pos), k_cols.size());
    Reduction red_l(build(l_cols, l_pos), l_cols.size());
    Reduction red_im(build(k_cols, im_row), k_cols.size());
    Reduction red_rel(build(rel_cols, rel_pos), rel_cols.size());

    SixPack pack;
    detail::ordinary_diagrams(filt, k_cols, k_pos, red_k, pack.codomain);
    detail::ordinary_diagrams(filt, l_cols, l_pos, red_l, pack.domain);
    detail::ordinary_diagrams(filt, rel_cols, rel_pos, red_rel, pack.relative);

    // image: negative columns whose reduced boundary lies in the leading
    // (sub-complex) row block pair with that row; leftover positive rows of
    // the sub-complex are essential
    std::vector<char> l_row_used(nl, 0);
    for (size_t j = 0; j < k_cols.size(); ++j) {
        int l = red_im.low_of[j];
        if (l < 0 || l >= static_cast<int>(nl)) continue;
        l_row_used[l] = 1;
        const Simplex& bs = filt.simplex(l_cols[l]);
        DiagramPoint p;
        p.birth = filt.value(l_cols[l]);
        p.death = filt.value(k_cols[j]);
        p.birth_simplex = bs;
        p.death_simplex = filt.simplex(k_cols[j]);
        int degree = static_cast<int>(bs.size()) - 1;
        auto [it, ins] = pack.image.try_emplace(degree);
        if (ins) it->second.degree = degree;
        it->second.add(std::move(p));
    }
    for (size_t j = 0; j < nl; ++j) {
        if (red_l.low_of[j] >= 0 || l_row_used[j]) continue;
        const Simplex& bs = filt.simplex(l_cols[j]);
        DiagramPoint p;
        p.birth = filt.value(l_cols[j]);
        p.birth_simplex = bs;
        int degree = static_cast<int>(bs.size()) - 1;
        auto [it, ins] = pack.image.try_emplace(degree);
        if (ins) it->second.degree = degree;
        it->second.add(std::move(p));
    }

    // kernel and cokernel as presented quotient modules
    QuotientTracker ker, coker;
    for (size_t j = 0; j < k_cols.size(); ++j) {
        int gi = k_cols[j];
        const Simplex& s = filt.simplex(gi);
        int p = static_cast<int>(s.size()) - 1;
        bool is_l = in_l[gi] != 0;
        // kernel: a cycle of the sub-complex first bounds in the big complex
        if (!is_l && red_im.low_of[j] >= 0 && red_im.low_of[j] < static_cast<int>(nl))
            ker.add_generator(red_im.r[j], p - 1, filt.value(gi), s);
        // cokernel: every new cycle of the big complex is a generator...
        if (red_k.low_of[j] < 0) coker.add_generator(red_k.v[j], p, filt.value(gi), s);
        // ...killed by boundaries or by cycles of the sub-complex
        if (red_k.low_of[j] >= 0) coker.add_relation(red_k.r[j], filt.value(gi), s, pack.cokernel);
        if (is_l) {
            int lj = l_pos[gi];
            if (red_l.low_of[lj] >= 0) {
                ker.add_relation(red_l.r[lj], filt.value(gi), s, pack.kernel);
            } else {
                BitCol lifted;
                for (size_t row : red_l.v[lj].ones()) lifted.set(k_pos[l_cols[row]]);
                coker.add_relation(lifted, filt.value(gi), s, pack.cokernel);
            }
        }
    }
    ker.finish(pack.kernel);
    coker.finish(pack.cokernel);

    for (const std::string& name : SixPack::labels())
        for (auto& [deg, dg] : pack.by_label(name)) dg.sort();
    return pack;
}

/// 2 * (largest finite birth or death across all diagrams of a pack); 1 if
/// every value is zero.  Shared truncation level for essential classes.
inline Rat default_cutoff(const SixPack& pack) {
    Rat m = 0;
    for (const std::string& name : SixPack::labels()) {
        for (const auto& [deg, dg] : pack.by_label(name)) {
            for (const auto& p : dg.points) {
                m = std::max(m, p.birth);
                if (p.death) m = std::max(m, *p.death);
            }
        }
    }
    return m == 0 ? Rat(1) : Rat(2) * m;
}

/// Diagrams of the inclusion of an explicit subcomplex (flags derived by
/// membership in the closure of the given complex).
inline SixPack six_module_diagrams(const Filtration& filt, const SimplicialComplex& l) {
    std::vector<char> in_l(filt.size(), 0);
    for (size_t i = 0; i < filt.size(); ++i) in_l[i] = l.contains(filt.simplex(i)) ? 1 : 0;
    return six_pack_diagrams(filt, in_l);
}

struct DiagramNorms {
    long zero_norm = 0;  // points strictly above the diagonal
    Rat one_norm;        // total persistence, infinite deaths cut at C
    Rat cutoff;
};

inline DiagramNorms norms(const PersistenceDiagram& d, const Rat& cutoff) {
    for (const auto& p : d.points)
        if (cutoff <= p.birth || (p.death && cutoff < *p.death))
            throw InputError("norms: cutoff does not exceed all finite values");
    DiagramNorms out;
    out.cutoff = cutoff;
    out.zero_norm = static_cast<long>(d.points.size());
    out.one_norm = 0;
    for (const auto& p : d.points) out.one_norm += (p.death ? *p.death : cutoff) - p.birth;
    return out;
}

/// 1-norm: total persistence with infinite deaths truncated at the cutoff.
inline Rat norm_1(const PersistenceDiagram& d, const Rat& cutoff) {
    Rat total = 0;
    for (const auto& p : d.points) {
        Rat death = p.death ? *p.death : cutoff;
        if (death > cutoff) death = cutoff;
        Rat birth = std::min(p.birth, cutoff);
        total += death - birth;
    }
    return total;
}

inline Rat norm_1(const std::map<int, PersistenceDiagram>& per_degree, const Rat& cutoff) {
    Rat total = 0;
    for (const auto& [deg, d] : per_degree) total += norm_1(d, cutoff);
    return total;
}

/// Bottleneck distance between two diagrams, with infinite deaths replaced by
/// the cutoff.  Exact: binary search over the candidate cost set with a
/// bipartite matching test (diagonal projections allowed).
inline Rat bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                               const Rat& cutoff) {
    struct Pt {
        Rat b, d;
    };
    auto gather = [&](const PersistenceDiagram& dg) {
        std::vector<Pt> out;
        for (const auto& p : dg.points) out.push_back({p.birth, p.death ? *p.death : cutoff});
        return out;
    };
    std::vector<Pt> pa = gather(a), pb = gather(b);
    const size_t na = pa.size(), nb = pb.size();
    auto linf = [](const Pt& x, const Pt& y) {
        Rat db = abs(x.b - y.b), dd = abs(x.d - y.d);
        return std::max(db, dd);
    };
    auto diag = [](const Pt& x) -> Rat { return (x.d - x.b) / 2; };

    std::vector<Rat> cand;
    cand.push_back(Rat(0));
    for (const auto& x : pa) cand.push_back(diag(x));
    for (const auto& y : pb) cand.push_back(diag(y));
    for (const auto& x : pa)
        for (const auto& y : pb) cand.push_back(linf(x, y));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    // perfect matching on (points of a + diagonal copies) x (points of b +
    // diagonal copies) with edges of cost <= eps
    auto feasible = [&](const Rat& eps) {
        const size_t nleft = na + nb, nright = nb + na;
        auto edge = [&](size_t i, size_t j) {
            bool li = i < na, rj = j < nb;
            if (li && rj) return linf(pa[i], pb[j]) <= eps;
            if (li && !rj) return diag(pa[i]) <= eps;
            if (!li && rj) return diag(pb[j]) <= eps;
            return true;  // diagonal to diagonal
        };
        std::vector<int> match_r(nright, -1);
        std::vector<char> seen;
        std::function<bool(size_t)> aug = [&](size_t i) -> bool {
            for (size_t j = 0; j < nright; ++j) {
                if (seen[j] || !edge(i, j)) continue;
                seen[j] = 1;
                if (match_r[j] < 0 || aug(static_cast<size_t>(match_r[j]))) {
                    match_r[j] = static_cast<int>(i);
                    return true;
                }
            }
            return false;
        };
        for (size_t i = 0; i < nleft; ++i) {
            seen.assign(nright, 0);
            if (!aug(i)) return false;
        }
        return true;
    };

    size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (feasible(cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return cand[lo];
}

/// Largest bottleneck distance over the degrees present in either family.
inline Rat bottleneck_distance(const std::map<int, PersistenceDiagram>& a,
                               const std::map<int, PersistenceDiagram>& b, const Rat& cutoff) {
    std::set<int> degrees;
    for (const auto& [d, x] : a) degrees.insert(d);
    for (const auto& [d, x] : b) degrees.insert(d);
    static const PersistenceDiagram kEmpty{};
    Rat m = 0;
    for (int d : degrees) {
        const auto ia = a.find(d);
        const auto ib = b.find(d);
        m = std::max(m, bottleneck_distance(ia == a.end() ? kEmpty : ia->second,
                                            ib == b.end() ? kEmpty : ib->second, cutoff));
    }
    return m;
}

}  // namespace chroma

#endif
