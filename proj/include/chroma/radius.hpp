#ifndef CHROMA_RADIUS_HPP
#define CHROMA_RADIUS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "chroma/linalg.hpp"
#include "chroma/types.hpp"

namespace chroma {

/// Squared radius of the maximal empty tau-stack centered at x:
/// max over j in tau of min over a in A_j of |x - a|^2.
inline Rat stack_radius_squared(const ChromaticPointSet& chi, const std::set<int>& tau, const RatVec& x) {
    Rat best = 0;
    bool first = true;
    for (int j : tau) {
        const auto& cls = chi.color_class(j);
        if (cls.empty()) throw InputError("stack_radius_squared: empty color class");
        Rat nearest = squared_distance(x, chi.point(cls[0]));
        for (size_t i = 1; i < cls.size(); ++i)
            nearest = std::min(nearest, squared_distance(x, chi.point(cls[i])));
        if (first || nearest > best) best = nearest;
        first = false;
    }
    return best;
}

/// Affine subspace E(nu) of points equidistant to the vertices of each color
/// class of nu: base point plus direction basis.
struct EquidistantSubspace {
    RatVec base;
    std::vector<RatVec> basis;
};

inline EquidistantSubspace equidistant_subspace(const ChromaticPointSet& chi, const Simplex& nu) {
    const int d = chi.dim();
    std::map<int, std::vector<int>> by_color;
    for (int v : nu) by_color[chi.color(v)].push_back(v);
    RatMat a;
    RatVec b;
    for (const auto& [color, verts] : by_color) {
        const RatVec& p0 = chi.point(verts[0]);
        for (size_t i = 1; i < verts.size(); ++i) {
            const RatVec& pi = chi.point(verts[i]);
            RatVec row(d);
            for (int j = 0; j < d; ++j) row[j] = 2 * (pi[j] - p0[j]);
            a.push_back(std::move(row));
            b.push_back(dot(pi, pi) - dot(p0, p0));
        }
    }
    if (a.empty()) {
        EquidistantSubspace e;
        e.base.assign(d, Rat(0));
        for (int j = 0; j < d; ++j) {
            RatVec v(d, Rat(0));
            v[j] = 1;
            e.basis.push_back(std::move(v));
        }
        return e;
    }
    auto sol = solve_affine(std::move(a), std::move(b));
    if (!sol) throw std::logic_error("equidistant_subspace: inconsistent system (simplex not Delaunay?)");
    return {sol->particular, sol->nullspace};
}

struct MiniballResult {
    RatVec center;                 // the point y
    std::map<int, Rat> e_values;   // squared distance to each color's vertices at y
    Rat value;                     // max over colors = e(y)
};

/// Unique minimizer on E of e = max_j e_j, where e_j is the squared distance
/// to the color-j vertices of nu.  Found by enumerating active color subsets:
/// each subset pins equalities e_i = e_j (linear, since the quadratic parts
/// agree), and the quadratic is minimized exactly on the resulting subspace.
/// The true minimizer appears among the candidates, and every candidate's
/// max-value bounds the minimum from above, so the smallest candidate wins.
inline MiniballResult constrained_miniball(const ChromaticPointSet& chi, const Simplex& nu,
                                           const EquidistantSubspace& e_space) {
    const int d = chi.dim();
    std::map<int, int> rep;  // color -> representative vertex
    for (int v : nu)
        if (!rep.count(chi.color(v))) rep[chi.color(v)] = v;
    std::vector<int> colors;
    for (const auto& [c, v] : rep) colors.push_back(c);

    const auto& n_basis = e_space.basis;
    const size_t t_dim = n_basis.size();
    // e_j(t) = t^T Q t + l_j . t + c_j with Q = N^T N shared across colors
    RatMat q(t_dim, RatVec(t_dim));
    for (size_t i = 0; i < t_dim; ++i)
        for (size_t j = 0; j < t_dim; ++j) q[i][j] = dot(n_basis[i], n_basis[j]);
    std::map<int, RatVec> lin;
    std::map<int, Rat> cst;
    for (const auto& [c, v] : rep) {
        RatVec diff = sub(e_space.base, chi.point(v));
        RatVec l(t_dim);
        for (size_t i = 0; i < t_dim; ++i) l[i] = 2 * dot(n_basis[i], diff);
        lin[c] = std::move(l);
        cst[c] = dot(diff, diff);
    }
    auto eval = [&](int c, const RatVec& t) {
        Rat v = cst[c] + dot(lin[c], t);
        for (size_t i = 0; i < t_dim; ++i) {
            if (t[i] == 0) continue;
            for (size_t j = 0; j < t_dim; ++j) v += t[i] * q[i][j] * t[j];
        }
        return v;
    };

    const size_t nc = colors.size();
    bool have_best = false;
    RatVec best_t;
    Rat best_val;
    for (unsigned mask = 1; mask < (1u << nc); ++mask) {
        // equality constraints e_first = e_other for the active subset
        int first = -1;
        RatMat a;
        RatVec b;
        for (size_t i = 0; i < nc; ++i) {
            if (!(mask & (1u << i))) continue;
            int c = colors[i];
            if (first < 0) {
                first = c;
                continue;
            }
            RatVec row(t_dim);
            for (size_t j = 0; j < t_dim; ++j) row[j] = lin[first][j] - lin[c][j];
            a.push_back(std::move(row));
            b.push_back(cst[c] - cst[first]);
        }
        std::optional<AffineSolution> sub_space;
        if (a.empty()) {
            AffineSolution s;
            s.particular.assign(t_dim, Rat(0));
            for (size_t j = 0; j < t_dim; ++j) {
                RatVec v(t_dim, Rat(0));
                v[j] = 1;
                s.nullspace.push_back(std::move(v));
            }
            sub_space = std::move(s);
        } else {
            sub_space = solve_affine(std::move(a), std::move(b));
        }
        if (!sub_space) continue;
        const auto& t0 = sub_space->particular;
        const auto& m = sub_space->nullspace;
        // minimize e_first(t0 + M u): (M^T Q M) u = -M^T (Q t0 + l/2)
        const size_t u_dim = m.size();
        RatVec t = t0;
        if (u_dim > 0) {
            RatMat mqm(u_dim, RatVec(u_dim));
            RatVec rhs(u_dim);
            RatVec qt0(t_dim, Rat(0));
            for (size_t i = 0; i < t_dim; ++i)
                for (size_t j = 0; j < t_dim; ++j) qt0[i] += q[i][j] * t0[j];
            for (size_t i = 0; i < u_dim; ++i) {
                RatVec qmi(t_dim, Rat(0));
                for (size_t r = 0; r < t_dim; ++r)
                    for (size_t cjj = 0; cjj < t_dim; ++cjj) qmi[r] += q[r][cjj] * m[i][cjj];
                for (size_t j = 0; j < u_dim; ++j) mqm[i][j] = dot(m[j], qmi);
                rhs[i] = -(dot(m[i], qt0) + dot(m[i], lin[first]) / 2);
            }
            auto usol = solve_affine(std::move(mqm), std::move(rhs));
            if (!usol) continue;  // cannot happen for positive definite Q
            for (size_t i = 0; i < u_dim; ++i)
                for (size_t j = 0; j < t_dim; ++j) t[j] += usol->particular[i] * m[i][j];
        }
        Rat val = eval(colors[0], t);
        for (size_t i = 1; i < nc; ++i) val = std::max(val, eval(colors[i], t));
        if (!have_best || val < best_val) {
            have_best = true;
            best_val = val;
            best_t = t;
        }
    }

    MiniballResult res;
    res.center = e_space.base;
    for (size_t i = 0; i < t_dim; ++i)
        for (int j = 0; j < d; ++j) res.center[j] += best_t[i] * n_basis[i][j];
    res.value = best_val;
    for (int c : colors) res.e_values[c] = eval(c, best_t);
    return res;
}

/// True iff, for every color j of nu, no point of A_j lies strictly inside
/// the sphere around y with squared radius e_values[j].
inline bool empty_stack_check(const ChromaticPointSet& chi, const Simplex& nu, const RatVec& y,
                              const std::map<int, Rat>& e_values) {
    for (const auto& [color, e_val] : e_values) {
        for (int a : chi.color_class(color)) {
            if (squared_distance(y, chi.point(a)) < e_val) return false;
        }
    }
    return true;
}

/// Radius function on the chromatic Delaunay mosaic by the descending-
/// dimension sweep: a simplex whose constrained miniball stack is empty gets
/// its value directly, otherwise it inherits the minimum over its cofaces.
inline Filtration radius_function(const ChromaticPointSet& chi, const SimplicialComplex& k) {
    const auto faces = k.closure();
    const int top_dim = k.dim();
    std::map<Simplex, Rat> value;
    std::map<Simplex, Rat> coface_min;  // over already-processed (p+1)-cofaces

    std::vector<std::vector<const Simplex*>> by_dim(top_dim + 1);
    for (const auto& f : faces) by_dim[f.size() - 1].push_back(&f);

    for (int p = top_dim; p >= 1; --p) {
        for (const Simplex* nu_ptr : by_dim[p]) {
            const Simplex& nu = *nu_ptr;
            auto e_space = equidistant_subspace(chi, nu);
            auto ball = constrained_miniball(chi, nu, e_space);
            Rat r2;
            if (empty_stack_check(chi, nu, ball.center, ball.e_values)) {
                r2 = ball.value;
            } else {
                auto it = coface_min.find(nu);
                if (p == top_dim || it == coface_min.end())
                    throw std::logic_error("radius_function: top simplex failed the emptiness check");
                r2 = it->second;
            }
            value[nu] = r2;
            for (size_t drop = 0; drop < nu.size(); ++drop) {
                Simplex facet;
                for (size_t i = 0; i < nu.size(); ++i)
                    if (i != drop) facet.push_back(nu[i]);
                auto [it, inserted] = coface_min.try_emplace(facet, r2);
                if (!inserted && r2 < it->second) it->second = r2;
            }
        }
    }
    for (const Simplex* v : by_dim[0]) value[*v] = 0;

    std::vector<Simplex> simplices;
    std::vector<Rat> values;
    for (const auto& f : faces) {
        simplices.push_back(f);
        values.push_back(value.at(f));
    }
    return Filtration(std::move(simplices), std::move(values));
}

/// Independent oracle for the radius of one simplex: minimizes the stack
/// radius over the explicit polyhedron alpha (intersection of the dual
/// Voronoi cells of the mono-chromatic parts) by enumerating active subsets
/// of half-space constraints and colors and solving each equality-constrained
/// quadratic system exactly.  Desk-scale only.
inline Rat radius_oracle(const ChromaticPointSet& chi, const Simplex& nu) {
    const int d = chi.dim();
    std::map<int, int> rep;
    for (int v : nu)
        if (!rep.count(chi.color(v))) rep[chi.color(v)] = v;
    std::vector<int> colors;
    for (const auto& [c, v] : rep) colors.push_back(c);
    const size_t nc = colors.size();

    // half-space constraints g.x <= h (x closer to v than to b)
    std::set<std::pair<RatVec, Rat>> seen;
    RatMat gs;
    RatVec hs;
    for (int v : nu) {
        const RatVec& pv = chi.point(v);
        for (int b : chi.color_class(chi.color(v))) {
            if (b == v) continue;
            const RatVec& pb = chi.point(b);
            RatVec g(d);
            for (int j = 0; j < d; ++j) g[j] = 2 * (pb[j] - pv[j]);
            Rat h = dot(pb, pb) - dot(pv, pv);
            if (seen.insert({g, h}).second) {
                gs.push_back(std::move(g));
                hs.push_back(std::move(h));
            }
        }
    }
    const size_t m = gs.size();

    auto feasible = [&](const RatVec& x) {
        for (size_t i = 0; i < m; ++i)
            if (dot(gs[i], x) > hs[i]) return false;
        return true;
    };
    auto g_tau = [&](const RatVec& x) {
        Rat v = squared_distance(x, chi.point(rep[colors[0]]));
        for (size_t i = 1; i < nc; ++i) v = std::max(v, squared_distance(x, chi.point(rep[colors[i]])));
        return v;
    };

    bool have_best = false;
    Rat best;
    auto consider = [&](const RatVec& x) {
        Rat v = g_tau(x);
        if (have_best && v >= best) return;  // value bound: skip feasibility
        if (!feasible(x)) return;
        best = v;
        have_best = true;
    };

    // enumerate color subsets S (by index mask) and constraint subsets T with
    // |S|-1 + |T| <= d; the minimizer lies on a face of alpha cut by at most d
    // independent constraints together with the color equalities
    std::vector<std::vector<size_t>> t_subsets;  // all constraint subsets of size <= d
    t_subsets.push_back({});
    for (size_t i = 0; i < m; ++i) t_subsets.push_back({i});
    if (d >= 2)
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) t_subsets.push_back({i, j});
    if (d >= 3)
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                for (size_t l = j + 1; l < m; ++l) t_subsets.push_back({i, j, l});

    for (unsigned mask = 1; mask < (1u << nc); ++mask) {
        int s_size = __builtin_popcount(mask);
        int first = -1;
        RatMat a0;
        RatVec b0;
        for (size_t i = 0; i < nc; ++i) {
            if (!(mask & (1u << i))) continue;
            int c = colors[i];
            if (first < 0) {
                first = c;
                continue;
            }
            const RatVec& pf = chi.point(rep[first]);
            const RatVec& pc = chi.point(rep[c]);
            RatVec row(d);
            for (int j = 0; j < d; ++j) row[j] = 2 * (pc[j] - pf[j]);
            a0.push_back(std::move(row));
            b0.push_back(dot(pc, pc) - dot(pf, pf));
        }
        const RatVec& pf = chi.point(rep[first]);
        for (const auto& tset : t_subsets) {
            if (s_size - 1 + static_cast<int>(tset.size()) > d) continue;
            RatMat a = a0;
            RatVec b = b0;
            for (size_t t : tset) {
                a.push_back(gs[t]);
                b.push_back(hs[t]);
            }
            std::optional<AffineSolution> sp;
            if (a.empty()) {
                AffineSolution s;
                s.particular.assign(d, Rat(0));
                for (int j = 0; j < d; ++j) {
                    RatVec v(d, Rat(0));
                    v[j] = 1;
                    s.nullspace.push_back(std::move(v));
                }
                sp = std::move(s);
            } else {
                sp = solve_affine(std::move(a), std::move(b));
            }
            if (!sp) continue;
            // minimize |x - pf|^2 over x = x0 + N u
            RatVec x = sp->particular;
            const auto& nb = sp->nullspace;
            if (!nb.empty()) {
                const size_t u_dim = nb.size();
                RatMat nn(u_dim, RatVec(u_dim));
                RatVec rhs(u_dim);
                RatVec diff = sub(sp->particular, pf);
                for (size_t i = 0; i < u_dim; ++i) {
                    for (size_t j = 0; j < u_dim; ++j) nn[i][j] = dot(nb[i], nb[j]);
                    rhs[i] = -dot(nb[i], diff);
                }
                auto usol = solve_affine(std::move(nn), std::move(rhs));
                for (size_t i = 0; i < u_dim; ++i)
                    for (int j = 0; j < d; ++j) x[j] += usol->particular[i] * nb[i][j];
            }
            consider(x);
        }
    }
    if (!have_best) throw std::logic_error("radius_oracle: alpha appears empty (simplex not Delaunay?)");
    return best;
}

}  // namespace chroma

#endif
