#ifndef CHROMA_RANK_ORACLE_HPP
#define CHROMA_RANK_ORACLE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "chroma/persistence.hpp"
#include "chroma/types.hpp"

namespace chroma {

/// Recomputes the six diagrams of a filtered inclusion directly from the
/// two-parameter rank function of each module: for levels i <= j the rank of
/// M_i -> M_j is obtained as dim span(P_i u Q_j) - dim span(Q_j) for
/// module-specific generating families P (numerator) and Q (denominator),
/// each rank by fresh Gaussian elimination.  Diagram multiplicities follow by
/// inclusion-exclusion over the value grid.  Quadratic in the number of
/// levels and cubic in the complex size, hence guarded by max_simplices.
namespace rankdetail {

using Echelon = std::map<int, BitCol>;  // pivot row -> vector

/// Adds v to the echelon; returns true if it enlarged the span.
inline bool ech_add(Echelon& e, BitCol v) {
    int l;
    while ((l = v.low()) >= 0) {
        auto it = e.find(l);
        if (it == e.end()) {
            e.emplace(l, std::move(v));
            return true;
        }
        v ^= it->second;
    }
    return false;
}

/// Basis of the combination space of columns summing to zero.  Combos are
/// reported over column indices, in column order.
inline std::vector<BitCol> nullspace_combos(const std::vector<BitCol>& cols) {
    Echelon e;
    std::vector<BitCol> out;
    // tracked reduction: pair each working column with its combination
    std::map<int, BitCol> pivot_combo;
    for (size_t j = 0; j < cols.size(); ++j) {
        BitCol v = cols[j];
        BitCol c;
        c.set(j);
        int l;
        while ((l = v.low()) >= 0) {
            auto it = e.find(l);
            if (it == e.end()) break;
            v ^= it->second;
            c ^= pivot_combo[l];
        }
        if (l >= 0) {
            e.emplace(l, std::move(v));
            pivot_combo[l] = std::move(c);
        } else {
            out.push_back(std::move(c));
        }
    }
    return out;
}

/// Basis of span(A) intersected with span(B).
inline std::vector<BitCol> intersection_basis(const std::vector<BitCol>& a,
                                              const std::vector<BitCol>& b) {
    std::vector<BitCol> stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    std::vector<BitCol> out;
    Echelon dedup;
    for (const BitCol& combo : nullspace_combos(stacked)) {
        BitCol v;
        for (size_t idx : combo.ones())
            if (idx < a.size()) v ^= a[idx];
        if (!v.empty() && ech_add(dedup, v)) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace rankdetail

inline SixPack rank_oracle_six_pack(const Filtration& filt, const std::vector<char>& in_l,
                                    std::vector<char> in_m = {}, size_t max_simplices = 300) {
    using rankdetail::Echelon;
    const size_t n = filt.size();
    if (n > max_simplices)
        throw InputError("rank oracle: filtration exceeds the size guard (" +
                         std::to_string(n) + " > " + std::to_string(max_simplices) + " simplices)");
    if (in_l.size() != n) throw InputError("rank oracle: flag size mismatch");
    if (in_m.empty()) in_m.assign(n, 0);
    for (size_t i = 0; i < n; ++i)
        if (in_m[i] && !in_l[i]) throw InputError("rank oracle: inner complex not nested");

    // value levels: level 1..m, level_of[i] = smallest level containing simplex i
    std::vector<Rat> values;
    for (size_t i = 0; i < n; ++i) values.push_back(filt.value(i));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const size_t m = values.size();
    auto level_of = [&](size_t i) {
        return static_cast<size_t>(std::lower_bound(values.begin(), values.end(), filt.value(i)) -
                                   values.begin()) + 1;
    };

    int top = 0;
    for (size_t i = 0; i < n; ++i)
        if (!in_m[i]) top = std::max(top, static_cast<int>(filt.simplex(i).size()) - 1);

    SixPack pack;
    auto emit = [&](std::map<int, PersistenceDiagram>& target, int degree,
                    const std::vector<std::vector<long>>& r) {
        // r is (m+1) x (m+1), r[a][b] = rank for levels a <= b, r[a][a] = dim
        auto [it, ins] = target.try_emplace(degree);
        if (ins) it->second.degree = degree;
        PersistenceDiagram& dg = it->second;
        for (size_t a = 1; a <= m; ++a) {
            for (size_t b = a + 1; b <= m; ++b) {
                long mult = (r[a][b - 1] - r[a][b]) - (r[a - 1][b - 1] - r[a - 1][b]);
                for (long t = 0; t < mult; ++t) {
                    DiagramPoint p;
                    p.birth = values[a - 1];
                    p.death = values[b - 1];
                    dg.add(std::move(p));
                }
            }
            long ess = r[a][m] - r[a - 1][m];
            for (long t = 0; t < ess; ++t) {
                DiagramPoint p;
                p.birth = values[a - 1];
                dg.add(std::move(p));
            }
        }
        dg.sort();
    };

    for (int p = 0; p <= top; ++p) {
        // ambient coordinates: p-simplices outside M, and the quotient
        // coordinates (outside L) for the relative module
        std::vector<size_t> p_simps, p_rel;
        std::map<Simplex, int> row_k, row_rel, row_km;  // p and (p-1) rows
        std::map<Simplex, int> face_row_k, face_row_rel;
        for (size_t i = 0; i < n; ++i) {
            if (in_m[i]) continue;
            int dim = static_cast<int>(filt.simplex(i).size()) - 1;
            if (dim == p) {
                row_k[filt.simplex(i)] = static_cast<int>(p_simps.size());
                p_simps.push_back(i);
                if (!in_l[i]) {
                    row_rel[filt.simplex(i)] = static_cast<int>(p_rel.size());
                    p_rel.push_back(i);
                }
            } else if (dim == p - 1) {
                face_row_k[filt.simplex(i)] = static_cast<int>(face_row_k.size());
                if (!in_l[i]) face_row_rel[filt.simplex(i)] = static_cast<int>(face_row_rel.size());
            }
        }
        auto boundary_col = [&](size_t gi, const std::map<Simplex, int>& rows) {
            BitCol col;
            const Simplex& s = filt.simplex(gi);
            if (s.size() < 2) return col;
            for (size_t k = 0; k < s.size(); ++k) {
                Simplex face;
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != k) face.push_back(s[j]);
                auto it = rows.find(face);
                if (it != rows.end()) col.set(static_cast<size_t>(it->second));
            }
            return col;
        };

        // per level: new cycle-basis vectors and new boundary generators
        std::vector<std::vector<BitCol>> dz_l(m + 1), dz_k(m + 1), dz_rel(m + 1);
        std::vector<std::vector<BitCol>> db_l(m + 1), db_k(m + 1), db_rel(m + 1), zl_in_k(m + 1);
        {
            // cycle spaces: nullspace combos of the boundary restricted to the
            // column prefix of each level; combos found over the full matrix
            // restrict to each level because reduction proceeds column by
            // column, so each combo is attributed to its latest column
            auto new_cycles_by_level = [&](bool l_only, bool relative) {
                std::vector<size_t> cols_gi;
                std::vector<BitCol> cols;
                for (size_t gi : p_simps) {
                    if (l_only && !in_l[gi]) continue;
                    if (relative && in_l[gi]) continue;
                    cols_gi.push_back(gi);
                    cols.push_back(boundary_col(gi, relative ? face_row_rel : face_row_k));
                }
                auto combos = rankdetail::nullspace_combos(cols);
                std::vector<std::vector<BitCol>> per_level(m + 1);
                const auto& ambient_rows = relative ? row_rel : row_k;
                for (const BitCol& c : combos) {
                    size_t lvl = 0;
                    BitCol vec;
                    for (size_t idx : c.ones()) {
                        lvl = std::max(lvl, level_of(cols_gi[idx]));
                        vec.set(ambient_rows.at(filt.simplex(cols_gi[idx])));
                    }
                    per_level[lvl].push_back(std::move(vec));
                }
                return per_level;
            };
            dz_l = new_cycles_by_level(true, false);
            dz_k = new_cycles_by_level(false, false);
            dz_rel = new_cycles_by_level(false, true);
            // boundary generators from (p+1)-simplices
            for (size_t i = 0; i < n; ++i) {
                if (in_m[i]) continue;
                if (static_cast<int>(filt.simplex(i).size()) - 1 != p + 1) continue;
                size_t lv = level_of(i);
                BitCol bk = boundary_col(i, row_k);
                if (in_l[i]) db_l[lv].push_back(bk);
                if (!in_l[i]) db_rel[lv].push_back(boundary_col(i, row_rel));
                db_k[lv].push_back(std::move(bk));
            }
            std::vector<BitCol> zl_cum, bk_cum;
            for (size_t lv = 1; lv <= m; ++lv) {
                for (const auto& v : dz_l[lv]) zl_cum.push_back(v);
                for (const auto& v : db_k[lv]) bk_cum.push_back(v);
                zl_in_k[lv] = rankdetail::intersection_basis(zl_cum, bk_cum);
            }
        }

        // grid of ranks from numerator family P and denominator family Q;
        // prefix_p says whether P grows by inclusion over levels
        auto grid = [&](const std::vector<std::vector<BitCol>>& p_fam,
                        const std::vector<std::vector<BitCol>>& q_fam, bool prefix_p,
                        const std::vector<std::vector<BitCol>>* q_extra = nullptr) {
            std::vector<std::vector<long>> r(m + 1, std::vector<long>(m + 1, 0));
            Echelon q_ech;
            long q_rank = 0;
            for (size_t b = 1; b <= m; ++b) {
                for (const auto& v : q_fam[b])
                    if (rankdetail::ech_add(q_ech, v)) ++q_rank;
                if (q_extra)
                    for (const auto& v : (*q_extra)[b])
                        if (rankdetail::ech_add(q_ech, v)) ++q_rank;
                if (prefix_p) {
                    Echelon work = q_ech;
                    long total = q_rank;
                    for (size_t a = 1; a <= b; ++a) {
                        for (const auto& v : p_fam[a])
                            if (rankdetail::ech_add(work, v)) ++total;
                        r[a][b] = total - q_rank;
                    }
                } else {
                    for (size_t a = 1; a <= b; ++a) {
                        Echelon work = q_ech;
                        long total = 0;
                        for (const auto& v : p_fam[a])
                            if (rankdetail::ech_add(work, v)) ++total;
                        r[a][b] = total;
                    }
                }
            }
            return r;
        };
        emit(pack.domain, p, grid(dz_l, db_l, true));
        emit(pack.codomain, p, grid(dz_k, db_k, true));
        emit(pack.image, p, grid(dz_l, db_k, true));
        emit(pack.relative, p, grid(dz_rel, db_rel, true));
        emit(pack.kernel, p, grid(zl_in_k, db_l, false));
        emit(pack.cokernel, p, grid(dz_k, db_k, true, &dz_l));
    }

    // drop empty diagrams so comparisons with the direct computation align
    for (const std::string& name : SixPack::labels()) {
        auto& target = pack.by_label(name);
        for (auto it = target.begin(); it != target.end();)
            it = it->second.points.empty() ? target.erase(it) : std::next(it);
    }
    return pack;
}

/// Ordinary persistence recomputed through the rank oracle.
inline std::map<int, PersistenceDiagram> rank_oracle_diagrams(const Filtration& filt,
                                                              size_t max_simplices = 300) {
    std::vector<char> none(filt.size(), 0);
    return rank_oracle_six_pack(filt, none, {}, max_simplices).codomain;
}

}  // namespace chroma

#endif
