#ifndef CHROMA_SIXPACK_HPP
#define CHROMA_SIXPACK_HPP

#include <array>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chroma/mosaic.hpp"
#include "chroma/persistence.hpp"
#include "chroma/radius.hpp"
#include "chroma/rank_oracle.hpp"
#include "chroma/types.hpp"

namespace chroma {

/// How to pick the subcomplex L of the mosaic.
struct Selector {
    enum Kind { kColors, kLevel, kExplicit } kind = kColors;
    std::set<int> colors;       // kColors
    int k = 0;                  // kLevel: simplices with at most k distinct colors
    SimplicialComplex sub;      // kExplicit

    static Selector by_colors(std::set<int> tau) {
        Selector s;
        s.kind = kColors;
        s.colors = std::move(tau);
        return s;
    }
    static Selector by_level(int k) {
        Selector s;
        s.kind = kLevel;
        s.k = k;
        return s;
    }
    static Selector explicit_sub(SimplicialComplex c) {
        Selector s;
        s.kind = kExplicit;
        s.sub = std::move(c);
        return s;
    }
};

inline SimplicialComplex apply_selector(const SimplicialComplex& k, const ChromaticPointSet& chi,
                                        const Selector& sel) {
    switch (sel.kind) {
        case Selector::kColors:
            return subcomplex_by_colors(k, chi, sel.colors);
        case Selector::kLevel:
            return k_chromatic_subcomplex(k, chi, sel.k);
        case Selector::kExplicit:
            for (const auto& g : sel.sub.generators())
                if (!k.contains(g)) throw InputError("selector simplex not in the mosaic");
            return sel.sub;
    }
    throw InputError("bad selector");
}

/// A computed pair: radius filtration on the mosaic, membership flags of the
/// chosen subcomplex, the six diagram families, and the shared cutoff.
struct PackResult {
    Filtration filt;
    std::vector<char> in_l;
    std::vector<char> in_m;  // empty unless a pair of pairs
    SixPack pack;
    Rat cutoff;
};

inline std::vector<char> membership_flags(const Filtration& filt, const SimplicialComplex& sub) {
    std::vector<char> flags(filt.size(), 0);
    for (size_t i = 0; i < filt.size(); ++i) flags[i] = sub.contains(filt.simplex(i)) ? 1 : 0;
    return flags;
}

inline PackResult make_pack(Filtration filt, std::vector<char> in_l, std::vector<char> in_m = {},
                            std::optional<Rat> cutoff = std::nullopt) {
    PackResult out;
    out.pack = six_pack_diagrams(filt, in_l, in_m);
    out.filt = std::move(filt);
    out.in_l = std::move(in_l);
    out.in_m = std::move(in_m);
    out.cutoff = cutoff ? *cutoff : default_cutoff(out.pack);
    return out;
}

inline PackResult six_pack(const ChromaticPointSet& chi, const Selector& sel,
                           std::optional<Rat> cutoff = std::nullopt) {
    SimplicialComplex k = chromatic_delaunay(chi);
    Filtration filt = radius_function(chi, k);
    SimplicialComplex l = apply_selector(k, chi, sel);
    std::vector<char> flags = membership_flags(filt, l);
    return make_pack(std::move(filt), std::move(flags), {}, cutoff);
}

/// Residuals of the three 1-norm relations for one degree; all must be zero.
struct NormRelationReport {
    Rat domain_residual;    // |Dgm_p(f_L)| - |ker_p| - |im_p|
    Rat codomain_residual;  // |Dgm_p(f_K)| - |im_p| - |coker_p|
    Rat relative_residual;  // |Dgm_p(f_K,L)| - |coker_p| - |ker_{p-1}|
    bool ok() const {
        return domain_residual == 0 && codomain_residual == 0 && relative_residual == 0;
    }
};

inline Rat norm_1_at(const std::map<int, PersistenceDiagram>& fam, int p, const Rat& c) {
    auto it = fam.find(p);
    return it == fam.end() ? Rat(0) : norm_1(it->second, c);
}

inline NormRelationReport verify_norm_relations(const SixPack& pack, int p, const Rat& c) {
    NormRelationReport r;
    r.domain_residual =
        norm_1_at(pack.domain, p, c) - norm_1_at(pack.kernel, p, c) - norm_1_at(pack.image, p, c);
    r.codomain_residual = norm_1_at(pack.codomain, p, c) - norm_1_at(pack.image, p, c) -
                          norm_1_at(pack.cokernel, p, c);
    r.relative_residual = norm_1_at(pack.relative, p, c) - norm_1_at(pack.cokernel, p, c) -
                          norm_1_at(pack.kernel, p - 1, c);
    return r;
}

/// Alternating sum over degrees of the three-term 1-norm combination; always
/// zero when the three norm relations hold degree by degree.
inline Rat norm_alternating_sum(const SixPack& pack, const Rat& c) {
    int top = 0;
    for (const std::string& name : SixPack::labels())
        for (const auto& [deg, dg] : pack.by_label(name)) top = std::max(top, deg);
    Rat sum = 0;
    for (int p = 0; p <= top + 1; ++p) {
        Rat term = norm_1_at(pack.domain, p, c) - norm_1_at(pack.codomain, p, c) +
                   norm_1_at(pack.relative, p, c);
        sum += (p % 2 == 0) ? term : -term;
    }
    return sum;
}

/// Dimensions of the six modules after each single-simplex step, per degree.
/// Order: domain, codomain, relative, kernel, image, cokernel.
struct StepDims {
    std::map<int, std::array<long, 6>> by_degree;
    long get(int degree, int module) const {
        auto it = by_degree.find(degree);
        return it == by_degree.end() ? 0 : it->second[module];
    }
};
enum ModuleIndex { kDomain = 0, kCodomain, kRelative, kKernel, kImage, kCokernel };

/// Per-step module dimensions by incremental Gaussian elimination: cycle
/// spaces grow via tracked reductions, boundary spans via echelons, and the
/// kernel/image/cokernel dimensions follow from
///   dim ker = dim Z(L) + dim B(K) - dim(Z(L)+B(K)) - dim B(L)
///   dim im  = dim Z(L) - dim Z(L)nB(K),  dim coker = dim Z(K) - dim(Z(L)+B(K)).
inline std::vector<StepDims> module_dims_per_step(const Filtration& filt,
                                                  const std::vector<char>& in_outer,
                                                  const std::vector<char>& in_inner,
                                                  std::vector<char> in_m = {}) {
    using rankdetail::Echelon;
    const size_t n = filt.size();
    if (in_m.empty()) in_m.assign(n, 0);

    // tracked cycle-space reductions per degree for the three chain contexts
    struct CycleSpace {
        Echelon pivots;                // of boundary columns
        long cycle_dim = 0;
        // feed a boundary column; returns the cycle combo if dependent
        std::optional<BitCol> add(BitCol bd, size_t col_id) {
            BitCol combo;
            combo.set(col_id);
            int l;
            while ((l = bd.low()) >= 0) {
                auto it = pivots.find(l);
                if (it == pivots.end()) break;
                bd ^= it->second;
                combo ^= combos.at(l);
            }
            if (l >= 0) {
                pivots.emplace(l, std::move(bd));
                combos.emplace(l, std::move(combo));
                return std::nullopt;
            }
            ++cycle_dim;
            return combo;
        }
        std::map<int, BitCol> combos;
    };
    struct DegreeState {
        CycleSpace z_inner, z_outer, z_rel;
        Echelon b_inner, b_outer, b_rel, union_zi_bo;  // span(Z(inner) + B(outer))
        long db_inner = 0, db_outer = 0, db_rel = 0, dunion = 0;
        std::map<Simplex, int> row, row_rel;  // degree-p rows (all / quotient coords)
        std::vector<Simplex> col_simplex;     // column id -> p-simplex (per context shared)
    };
    std::map<int, DegreeState> state;

    // pre-assign rows per degree so vectors are stable across steps
    for (size_t i = 0; i < n; ++i) {
        if (in_m[i] || !in_outer[i]) continue;
        int p = static_cast<int>(filt.simplex(i).size()) - 1;
        auto& st = state[p];
        st.row[filt.simplex(i)] = static_cast<int>(st.row.size());
        if (!in_inner[i]) st.row_rel[filt.simplex(i)] = static_cast<int>(st.row_rel.size());
    }

    auto boundary_of = [&](size_t i, const std::map<Simplex, int>& rows) {
        BitCol col;
        const Simplex& s = filt.simplex(i);
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

    std::vector<StepDims> out(n + 1);
    StepDims current;
    for (size_t i = 0; i < n; ++i) {
        out[i] = current;  // dims before step i+1 filled at the end of the loop
        if (in_m[i] || !in_outer[i]) {
            out[i + 1] = current;
            current = out[i + 1];
            continue;
        }
        const Simplex& s = filt.simplex(i);
        int q = static_cast<int>(s.size()) - 1;
        bool inner = in_inner[i] != 0;
        auto& stq = state[q];

        // degree-q effects: sigma's boundary column extends the cycle spaces
        auto* face_state = q > 0 ? &state[q - 1] : nullptr;
        BitCol bd = face_state ? boundary_of(i, face_state->row) : BitCol{};
        size_t col_id = stq.col_simplex.size();
        stq.col_simplex.push_back(s);
        auto cyc_vec = [&](const std::optional<BitCol>& combo, const std::map<Simplex, int>& rows) {
            BitCol v;
            if (combo)
                for (size_t idx : combo->ones()) v.set(rows.at(stq.col_simplex[idx]));
            return v;
        };
        stq.z_outer.add(bd, col_id);
        if (inner) {
            auto ci = stq.z_inner.add(bd, col_id);
            if (ci) {
                BitCol v = cyc_vec(ci, stq.row);
                if (rankdetail::ech_add(stq.union_zi_bo, v)) ++stq.dunion;
            }
        } else {
            BitCol bd_rel = face_state ? boundary_of(i, face_state->row_rel) : BitCol{};
            stq.z_rel.add(bd_rel, col_id);
        }

        // degree-(q-1) effects: sigma contributes a boundary generator
        if (face_state) {
            auto& stf = *face_state;
            BitCol bo = boundary_of(i, stf.row);
            if (rankdetail::ech_add(stf.b_outer, bo)) ++stf.db_outer;
            if (rankdetail::ech_add(stf.union_zi_bo, bo)) ++stf.dunion;
            if (inner) {
                BitCol bi = boundary_of(i, stf.row);
                if (rankdetail::ech_add(stf.b_inner, bi)) ++stf.db_inner;
            } else {
                BitCol br = boundary_of(i, stf.row_rel);
                if (rankdetail::ech_add(stf.b_rel, br)) ++stf.db_rel;
            }
        }

        StepDims dims;
        for (const auto& [p, st] : state) {
            std::array<long, 6> a{};
            long zi = st.z_inner.cycle_dim, zo = st.z_outer.cycle_dim, zr = st.z_rel.cycle_dim;
            long bi = st.db_inner, bo = st.db_outer, br = st.db_rel, un = st.dunion;
            long zi_cap_bo = zi + bo - un;
            a[kDomain] = zi - bi;
            a[kCodomain] = zo - bo;
            a[kRelative] = zr - br;
            a[kKernel] = zi_cap_bo - bi;
            a[kImage] = zi - zi_cap_bo;
            a[kCokernel] = zo - un;
            if (a != std::array<long, 6>{}) dims.by_degree[p] = a;
        }
        out[i + 1] = dims;
        current = dims;
    }
    return out;
}

/// Per-index checks: the three rank identities of the long exact sequences,
/// the vanishing Euler-style alternating sum, and the forbidden step pattern
/// (-1, 0, +1) for each of the three module triples.
struct RankIdentityReport {
    bool ok = true;
    std::string detail;
};

inline RankIdentityReport verify_rank_identities(const Filtration& filt,
                                                 const std::vector<char>& in_l,
                                                 std::vector<char> in_m = {}) {
    RankIdentityReport rep;
    std::vector<char> all(filt.size(), 1);
    auto dims = module_dims_per_step(filt, all, in_l, in_m);
    auto fail = [&](const std::string& msg, size_t step) {
        rep.ok = false;
        if (!rep.detail.empty()) rep.detail += "; ";
        rep.detail += msg + " at step " + std::to_string(step);
    };
    for (size_t i = 0; i <= filt.size(); ++i) {
        const StepDims& d = dims[i];
        std::set<int> degs;
        for (const auto& [p, a] : d.by_degree) degs.insert(p), degs.insert(p + 1);
        degs.insert(0);
        long euler = 0;
        for (int p : degs) {
            if (d.get(p, kDomain) != d.get(p, kKernel) + d.get(p, kImage))
                fail("domain rank identity (degree " + std::to_string(p) + ")", i);
            if (d.get(p, kCodomain) != d.get(p, kImage) + d.get(p, kCokernel))
                fail("codomain rank identity (degree " + std::to_string(p) + ")", i);
            if (d.get(p, kRelative) != d.get(p, kCokernel) + (p > 0 ? d.get(p - 1, kKernel) : 0))
                fail("relative rank identity (degree " + std::to_string(p) + ")", i);
            long term = d.get(p, kDomain) - d.get(p, kCodomain) + d.get(p, kRelative);
            euler += (p % 2 == 0) ? term : -term;
        }
        if (euler != 0) fail("alternating rank sum nonzero", i);
        if (i == 0) continue;
        const StepDims& prev = dims[i - 1];
        auto delta = [&](int p, int mod) { return d.get(p, mod) - prev.get(p, mod); };
        for (int p : degs) {
            if (delta(p, kKernel) == -1 && delta(p, kDomain) == 0 && delta(p, kImage) == 1)
                fail("forbidden pattern in (ker, domain, im)", i);
            if (delta(p, kImage) == -1 && delta(p, kCodomain) == 0 && delta(p, kCokernel) == 1)
                fail("forbidden pattern in (im, codomain, coker)", i);
            long dker_prev = p > 0 ? delta(p - 1, kKernel) : 0;
            if (delta(p, kCokernel) == -1 && delta(p, kRelative) == 0 && dker_prev == 1)
                fail("forbidden pattern in (coker, relative, ker)", i);
        }
    }
    return rep;
}

/// The four packs of a chromatic triple M (1-chromatic) in L (2-chromatic)
/// in K, with the shared diagrams cross-checked and the inclusion-induced
/// rank inequalities verified at every step.
struct TripleReport {
    Filtration filt;
    std::vector<char> in_l, in_m;
    SixPack l_in_k, m_in_k, m_in_l, pair_pack;  // (L,M) in (K,M)
    Rat cutoff;
    bool shared_diagrams_consistent = true;
    bool rank_inequalities_hold = true;
    std::string detail;

    /// the eighteen distinct families: 6 shared + 3x4 pack-specific
    std::map<std::string, const std::map<int, PersistenceDiagram>*> unique_diagrams() const {
        std::map<std::string, const std::map<int, PersistenceDiagram>*> out;
        out["f_K"] = &l_in_k.codomain;
        out["f_L"] = &l_in_k.domain;
        out["f_M"] = &m_in_k.domain;
        out["f_(K,L)"] = &l_in_k.relative;
        out["f_(K,M)"] = &m_in_k.relative;
        out["f_(L,M)"] = &m_in_l.relative;
        for (const auto& [key, pack] :
             std::initializer_list<std::pair<const char*, const SixPack*>>{
                 {"L>K", &l_in_k}, {"M>K", &m_in_k}, {"M>L", &m_in_l}, {"LM>KM", &pair_pack}}) {
            out[std::string("ker ") + key] = &pack->kernel;
            out[std::string("im ") + key] = &pack->image;
            out[std::string("coker ") + key] = &pack->cokernel;
        }
        return out;
    }
};

inline bool families_equal(const std::map<int, PersistenceDiagram>& a,
                           const std::map<int, PersistenceDiagram>& b) {
    std::set<int> degs;
    for (const auto& [d, x] : a) degs.insert(d);
    for (const auto& [d, x] : b) degs.insert(d);
    static const PersistenceDiagram kEmpty{};
    for (int d : degs) {
        const auto ia = a.find(d);
        const auto ib = b.find(d);
        if (!(ia == a.end() ? kEmpty : ia->second).same_points(ib == b.end() ? kEmpty : ib->second))
            return false;
    }
    return true;
}

inline TripleReport triple_analysis(const ChromaticPointSet& chi,
                                    std::optional<Selector> sel_m = std::nullopt,
                                    std::optional<Selector> sel_l = std::nullopt) {
    if (!sel_m && chi.num_colors() != 3)
        throw InputError("triple analysis defaults require exactly 3 colors");
    SimplicialComplex k = chromatic_delaunay(chi);
    Filtration filt = radius_function(chi, k);
    SimplicialComplex l = apply_selector(k, chi, sel_l ? *sel_l : Selector::by_level(2));
    SimplicialComplex m = apply_selector(k, chi, sel_m ? *sel_m : Selector::by_level(1));

    TripleReport rep;
    rep.in_l = membership_flags(filt, l);
    rep.in_m = membership_flags(filt, m);
    for (size_t i = 0; i < filt.size(); ++i)
        if (rep.in_m[i] && !rep.in_l[i]) throw InputError("triple: M not contained in L");

    std::vector<char> all(filt.size(), 1);
    auto run = [&](std::vector<char> in_l_, std::vector<char> in_m_) {
        return std::async(std::launch::async, [&filt, in_l_ = std::move(in_l_),
                                               in_m_ = std::move(in_m_)]() {
            return six_pack_diagrams(filt, in_l_, in_m_);
        });
    };
    auto f1 = run(rep.in_l, {});
    auto f2 = run(rep.in_m, {});
    auto f4 = run(rep.in_l, rep.in_m);
    rep.l_in_k = f1.get();
    rep.m_in_k = f2.get();
    rep.pair_pack = f4.get();
    {
        // M in L: restrict the filtration to L
        std::vector<Simplex> ls;
        std::vector<Rat> lv;
        for (size_t i = 0; i < filt.size(); ++i) {
            if (!rep.in_l[i]) continue;
            ls.push_back(filt.simplex(i));
            lv.push_back(filt.value(i));
        }
        Filtration lf(std::move(ls), std::move(lv));
        std::vector<char> lm_ordered(lf.size(), 0);
        for (size_t i = 0; i < filt.size(); ++i)
            if (rep.in_l[i]) lm_ordered[lf.index_of(filt.simplex(i))] = rep.in_m[i];
        rep.m_in_l = six_pack_diagrams(lf, lm_ordered);
    }
    rep.filt = std::move(filt);

    Rat c = 0;
    for (const SixPack* p : {&rep.l_in_k, &rep.m_in_k, &rep.m_in_l, &rep.pair_pack})
        c = std::max(c, default_cutoff(*p));
    rep.cutoff = c;

    // shared-diagram dedup checks
    rep.shared_diagrams_consistent =
        families_equal(rep.l_in_k.codomain, rep.m_in_k.codomain) &&
        families_equal(rep.l_in_k.domain, rep.m_in_l.codomain) &&
        families_equal(rep.m_in_k.domain, rep.m_in_l.domain) &&
        families_equal(rep.m_in_k.relative, rep.pair_pack.codomain) &&
        families_equal(rep.m_in_l.relative, rep.pair_pack.domain);
    if (!rep.shared_diagrams_consistent) rep.detail += "shared diagram mismatch; ";

    // inclusion-induced rank inequalities at every single-simplex step
    auto dims_mk = module_dims_per_step(rep.filt, all, rep.in_m);
    auto dims_lk = module_dims_per_step(rep.filt, all, rep.in_l);
    auto dims_ml = module_dims_per_step(rep.filt, rep.in_l, rep.in_m);
    for (size_t i = 0; i <= rep.filt.size() && rep.rank_inequalities_hold; ++i) {
        std::set<int> degs;
        for (const auto* d : {&dims_mk[i], &dims_lk[i], &dims_ml[i]})
            for (const auto& [p, a] : d->by_degree) degs.insert(p);
        for (int p : degs) {
            if (dims_ml[i].get(p, kKernel) > dims_mk[i].get(p, kKernel) ||
                dims_mk[i].get(p, kImage) > dims_lk[i].get(p, kImage)) {
                rep.rank_inequalities_hold = false;
                rep.detail += "rank inequality failed at step " + std::to_string(i) +
                              " degree " + std::to_string(p) + "; ";
                break;
            }
        }
    }
    return rep;
}

/// The six labeled diagram families of the mingling-pattern catalogue for a
/// 3-color set.
inline std::map<std::string, std::map<int, PersistenceDiagram>> mingling_patterns(
    const ChromaticPointSet& chi) {
    if (chi.num_colors() != 3) throw InputError("mingling patterns require exactly 3 colors");
    TripleReport t = triple_analysis(chi);
    std::map<std::string, std::map<int, PersistenceDiagram>> out;
    out["1+0 mono-chromatic cycles (f_M)"] = t.m_in_k.domain;
    out["2+0 bi-chromatic cycles (coker f_M->f_L)"] = t.m_in_l.cokernel;
    out["3+0 tri-chromatic cycles (coker f_L->f_K)"] = t.l_in_k.cokernel;
    out["1+1 mono-chromatic cycles filled by one color (ker f_M->f_L)"] = t.m_in_l.kernel;
    out["2+1 bi-chromatic cycles filled (ker f_(L,M)->f_(K,M))"] = t.pair_pack.kernel;
    out["1+2 mono-chromatic cycles filled by the others (coker f_(L,M)->f_(K,M))"] =
        t.pair_pack.cokernel;
    return out;
}

/// Top persistence divided by the runner-up, per degree; infinite deaths are
/// truncated at the cutoff first.  Used to pin "dominant point" assertions.
inline std::optional<std::pair<Rat, Rat>> top_two_persistence(const PersistenceDiagram& d,
                                                              const Rat& cutoff) {
    std::vector<Rat> pers;
    for (const auto& p : d.points) pers.push_back((p.death ? *p.death : cutoff) - p.birth);
    if (pers.empty()) return std::nullopt;
    std::sort(pers.begin(), pers.end(), std::greater<Rat>());
    return std::make_pair(pers[0], pers.size() > 1 ? pers[1] : Rat(0));
}

}  // namespace chroma

#endif
