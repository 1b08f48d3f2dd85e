// Command-line front end: ingestion, synthetic generators, six-pack and
// triple computation, JSON/CSV/SVG emission, and the verification harness.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 genericity violation.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chroma/generators.hpp"
#include "chroma/genericity.hpp"
#include "chroma/io.hpp"
#include "chroma/mosaic.hpp"
#include "chroma/persistence.hpp"
#include "chroma/radius.hpp"
#include "chroma/rank_oracle.hpp"
#include "chroma/sixpack.hpp"

namespace {

using namespace chroma;

struct Options {
    std::string input;
    int dim = 2;
    int scale_exp = 9;
    std::string cutoff;  // exact rational or decimal; empty = auto
    std::string sub;     // "k=K" or comma-separated colors; empty = k=s
    std::string formats = "json";
    std::string out;  // output path prefix; empty = stdout (json/csv only)
    unsigned long seed = 0;
    int max_oracle_simplices = 300;
    std::string jitter;  // optional deterministic perturbation magnitude
};

Rat parse_value(const std::string& text, int scale_exp) {
    if (text.find('/') != std::string::npos) return parse_rat_string(text);
    return parse_scaled_decimal(text, scale_exp);
}

Selector parse_selector(const std::string& spec, int num_colors) {
    if (spec.empty()) return Selector::by_level(num_colors - 1 > 0 ? num_colors - 1 : 1);
    if (spec.rfind("k=", 0) == 0) return Selector::by_level(std::stoi(spec.substr(2)));
    std::set<int> tau;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        tau.insert(std::stoi(tok));
    }
    if (tau.empty()) throw InputError("empty subcomplex selector");
    for (int c : tau)
        if (c < 0 || c >= num_colors) throw InputError("selector color out of range: " + spec);
    return Selector::by_colors(tau);
}

/// Deterministic jitter: displace every coordinate by a seeded multiple of
/// magnitude/1000, the user-invoked remedy for degenerate inputs.
ChromaticPointSet apply_jitter(const ChromaticPointSet& chi, const Rat& magnitude,
                               unsigned long seed) {
    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc908ULL);
    std::vector<RatVec> pts;
    std::vector<int> colors;
    for (int i = 0; i < chi.size(); ++i) {
        RatVec p = chi.point(i);
        for (auto& x : p) {
            long t = gen::draw(rng, -1000, 1000);
            x += magnitude * Rat(Int(t), Int(1000));
        }
        pts.push_back(std::move(p));
        colors.push_back(chi.color(i));
    }
    return ChromaticPointSet(chi.dim(), std::move(pts), std::move(colors));
}

ChromaticPointSet load_points(const Options& opt) {
    ChromaticPointSet chi = [&] {
        if (opt.input.empty() || opt.input == "-") {
            return ingest_csv(std::cin, opt.dim, opt.scale_exp).points;
        }
        return ingest_csv_file(opt.input, opt.dim, opt.scale_exp).points;
    }();
    if (!opt.jitter.empty()) chi = apply_jitter(chi, parse_value(opt.jitter, opt.scale_exp), opt.seed);
    return chi;
}

std::set<std::string> parse_formats(const std::string& spec) {
    std::set<std::string> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok != "json" && tok != "csv" && tok != "svg")
            throw InputError("unknown output format: " + tok);
        out.insert(tok);
    }
    if (out.empty()) throw InputError("no output format given");
    return out;
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot open output file: " + path);
    f << body;
}

std::string with_suffix(const std::string& prefix, const std::string& suffix) {
    if (prefix.empty() || prefix == "-") return prefix;
    return prefix + suffix;
}

using FamilyMap = std::map<std::string, const std::map<int, PersistenceDiagram>*>;

void emit_diagrams(const Options& opt, const FamilyMap& families, const nlohmann::json& meta,
                   const SixPack* svg_pack, const Rat& cutoff) {
    std::set<std::string> formats = parse_formats(opt.formats);
    if (formats.count("json")) {
        nlohmann::json j = diagrams_to_json(families, meta);
        write_text(with_suffix(opt.out, ".json"), j.dump(2) + "\n");
    }
    if (formats.count("csv")) {
        std::ostringstream csv;
        diagrams_to_csv(csv, families);
        write_text(with_suffix(opt.out, ".csv"), csv.str());
    }
    if (formats.count("svg")) {
        if (!svg_pack) throw InputError("svg output is only available for a single six-pack");
        if (opt.out.empty() || opt.out == "-")
            throw InputError("svg output requires --out");
        std::ostringstream svg;
        six_pack_to_svg(svg, *svg_pack, cutoff);
        write_text(with_suffix(opt.out, ".svg"), svg.str());
    }
}

nlohmann::json base_meta(const Options& opt, const ChromaticPointSet& chi) {
    nlohmann::json meta;
    meta["points"] = chi.size();
    meta["dim"] = chi.dim();
    meta["num_colors"] = chi.num_colors();
    meta["scale_exp"] = opt.scale_exp;
    return meta;
}

FamilyMap pack_families(const SixPack& pack) {
    FamilyMap fam;
    for (const auto& label : SixPack::labels()) fam[label] = &pack.by_label(label);
    return fam;
}

int cmd_compute(const Options& opt) {
    ChromaticPointSet chi = load_points(opt);
    std::optional<Rat> cutoff;
    if (!opt.cutoff.empty()) cutoff = parse_value(opt.cutoff, opt.scale_exp);
    Selector sel = parse_selector(opt.sub, chi.num_colors());
    PackResult res = six_pack(chi, sel, cutoff);
    nlohmann::json meta = base_meta(opt, chi);
    meta["cutoff"] = rat_string(res.cutoff);
    meta["subcomplex"] = opt.sub.empty() ? "k=" + std::to_string(std::max(chi.num_colors() - 1, 1))
                                         : opt.sub;
    emit_diagrams(opt, pack_families(res.pack), meta, &res.pack, res.cutoff);
    return 0;
}

int cmd_triple(const Options& opt) {
    ChromaticPointSet chi = load_points(opt);
    TripleReport rep = triple_analysis(chi);
    nlohmann::json meta = base_meta(opt, chi);
    meta["cutoff"] = rat_string(rep.cutoff);
    meta["shared_diagrams_consistent"] = rep.shared_diagrams_consistent;
    meta["rank_inequalities_hold"] = rep.rank_inequalities_hold;
    if (!rep.detail.empty()) meta["detail"] = rep.detail;
    emit_diagrams(opt, rep.unique_diagrams(), meta, nullptr, rep.cutoff);
    return (rep.shared_diagrams_consistent && rep.rank_inequalities_hold) ? 0 : 1;
}

int cmd_patterns(const Options& opt) {
    ChromaticPointSet chi = load_points(opt);
    auto patterns = mingling_patterns(chi);
    FamilyMap fam;
    for (const auto& [label, d] : patterns) fam[label] = &d;
    nlohmann::json meta = base_meta(opt, chi);
    emit_diagrams(opt, fam, meta, nullptr, Rat(1));
    return 0;
}

int cmd_generate(const Options& opt, const std::string& pattern, int n1, int n2, int colors) {
    ChromaticPointSet chi = generate(pattern, n1, n2, colors, opt.seed);
    std::ostringstream csv;
    write_points_csv(csv, chi);
    write_text(opt.out, csv.str());
    return 0;
}

/// Full verification harness: genericity, filtration monotonicity, norm
/// relations, per-step rank identities, Betti equality against the uncolored
/// filtration, and (size permitting) the brute-force oracles.
int cmd_verify(const Options& opt) {
    ChromaticPointSet chi = load_points(opt);
    bool all_ok = true;
    auto check = [&](const std::string& name, bool ok, const std::string& note = "") {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!note.empty()) std::cout << "  (" << note << ")";
        std::cout << "\n";
        all_ok = all_ok && ok;
    };

    GenericityReport gen_rep = validate_genericity(chi);
    check("genericity", gen_rep.ok);
    if (!gen_rep.ok) return 3;

    SimplicialComplex k = chromatic_delaunay(chi);
    Filtration filt = radius_function(chi, k);
    bool monotone = true;
    for (size_t i = 0; i < filt.size() && monotone; ++i) {
        const Simplex& sx = filt.simplex(i);
        for (size_t v = 0; v < sx.size() && monotone; ++v) {
            if (sx.size() == 1) break;
            Simplex face = sx;
            face.erase(face.begin() + v);
            monotone = filt.value_of(face) <= filt.value(i);
        }
    }
    check("filtration monotone", monotone);

    Selector sel = parse_selector(opt.sub, chi.num_colors());
    SimplicialComplex l = apply_selector(k, chi, sel);
    std::vector<char> in_l = membership_flags(filt, l);
    PackResult res = make_pack(filt, in_l, {},
                               opt.cutoff.empty()
                                   ? std::optional<Rat>{}
                                   : std::optional<Rat>{parse_value(opt.cutoff, opt.scale_exp)});

    // Norm relations and the vanishing alternating sum, exact residuals.
    bool norms_ok = true;
    std::ostringstream residuals;
    for (int p = 0; p <= chi.dim(); ++p) {
        NormRelationReport nr = verify_norm_relations(res.pack, p, res.cutoff);
        norms_ok = norms_ok && nr.ok();
        residuals << "p=" << p << ": " << rat_string(nr.domain_residual) << " "
                  << rat_string(nr.codomain_residual) << " " << rat_string(nr.relative_residual)
                  << "; ";
    }
    check("norm relations", norms_ok, residuals.str());
    Rat alt = norm_alternating_sum(res.pack, res.cutoff);
    check("norm alternating sum", alt == 0, rat_string(alt));

    RankIdentityReport ri = verify_rank_identities(res.filt, res.in_l);
    check("rank identities and step exclusions", ri.ok, ri.detail);

    // Betti numbers of the chromatic sublevel complexes equal those of the
    // uncolored alpha complexes of the same points at every critical value.
    {
        ChromaticPointSet mono = chi.decolored();
        GenericityReport mono_gen = validate_genericity(mono);
        if (!mono_gen.ok) {
            check("betti equality", false, "uncolored point set is degenerate");
        } else {
            Filtration mono_filt = radius_function(mono, chromatic_delaunay(mono));
            auto chrom = persistence_diagrams(res.filt);
            auto plain = persistence_diagrams(mono_filt);
            std::set<Rat> values;
            for (size_t i = 0; i < res.filt.size(); ++i) values.insert(res.filt.value(i));
            for (size_t i = 0; i < mono_filt.size(); ++i) values.insert(mono_filt.value(i));
            auto betti = [](const std::map<int, PersistenceDiagram>& dgms, int p, const Rat& r) {
                long b = 0;
                auto it = dgms.find(p);
                if (it == dgms.end()) return b;
                for (const auto& pt : it->second.points)
                    if (pt.birth <= r && (!pt.death || *pt.death > r)) ++b;
                return b;
            };
            bool betti_ok = true;
            for (const Rat& r : values)
                for (int p = 0; p <= chi.dim() && betti_ok; ++p)
                    betti_ok = betti(chrom, p, r) == betti(plain, p, r);
            check("betti equality", betti_ok);
        }
    }

    const long faces = static_cast<long>(res.filt.size());
    if (faces <= opt.max_oracle_simplices) {
        bool radius_ok = true;
        for (size_t i = 0; i < res.filt.size() && radius_ok; ++i)
            radius_ok = radius_oracle(chi, res.filt.simplex(i)) == res.filt.value(i);
        check("radius oracle equivalence", radius_ok);

        SixPack oracle = rank_oracle_six_pack(res.filt, res.in_l, {}, opt.max_oracle_simplices);
        bool pack_ok = true;
        for (const auto& label : SixPack::labels())
            pack_ok = pack_ok && families_equal(res.pack.by_label(label), oracle.by_label(label));
        check("six-pack rank-oracle equivalence", pack_ok);
    } else {
        std::cout << "SKIP  oracle checks (" << faces << " simplices > cap "
                  << opt.max_oracle_simplices << ")\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_oracle_check(const Options& opt) {
    ChromaticPointSet chi = load_points(opt);
    SimplicialComplex k = chromatic_delaunay(chi);
    Filtration filt = radius_function(chi, k);
    if (static_cast<long>(filt.size()) > opt.max_oracle_simplices)
        throw InputError("instance has " + std::to_string(filt.size()) +
                         " simplices, above the oracle cap " +
                         std::to_string(opt.max_oracle_simplices));
    bool ok = true;
    for (size_t i = 0; i < filt.size(); ++i) {
        Rat want = radius_oracle(chi, filt.simplex(i));
        if (want != filt.value(i)) {
            ok = false;
            std::cout << "MISMATCH simplex " << i << ": fast " << rat_string(filt.value(i))
                      << " oracle " << rat_string(want) << "\n";
        }
    }
    Selector sel = parse_selector(opt.sub, chi.num_colors());
    std::vector<char> in_l = membership_flags(filt, apply_selector(k, chi, sel));
    SixPack fast = six_pack_diagrams(filt, in_l);
    SixPack oracle = rank_oracle_six_pack(filt, in_l, {}, opt.max_oracle_simplices);
    for (const auto& label : SixPack::labels()) {
        if (!families_equal(fast.by_label(label), oracle.by_label(label))) {
            ok = false;
            std::cout << "MISMATCH diagram family " << label << "\n";
        }
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  oracle check on " << filt.size() << " simplices\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chromatic Delaunay mosaics, radius functions, and six-packs"};
    app.require_subcommand(1);

    Options opt;
    std::string pattern = "uniform-random";
    int n1 = 20, n2 = 0, colors = 2;

    auto add_common = [&](CLI::App* sub, bool takes_input) {
        if (takes_input)
            sub->add_option("input", opt.input, "input CSV path ('-' or empty for stdin)");
        sub->add_option("--dim", opt.dim, "ambient dimension d");
        sub->add_option("--scale-exp", opt.scale_exp, "decimal scaling exponent");
        sub->add_option("--cutoff", opt.cutoff, "1-norm cutoff (rational or decimal; default auto)");
        sub->add_option("--sub", opt.sub, "subcomplex: comma-separated colors or k=K");
        sub->add_option("--format", opt.formats, "output formats: json,csv,svg");
        sub->add_option("--out", opt.out, "output path prefix ('-' for stdout)");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--max-oracle-simplices", opt.max_oracle_simplices,
                        "size cap for brute-force oracle runs");
        sub->add_option("--jitter", opt.jitter,
                        "deterministic seeded perturbation magnitude for degenerate inputs");
    };

    CLI::App* c_compute = app.add_subcommand("compute", "compute the six-pack of a filtered pair");
    add_common(c_compute, true);
    CLI::App* c_triple = app.add_subcommand("triple", "four six-packs of a 3-color triple");
    add_common(c_triple, true);
    CLI::App* c_patterns =
        app.add_subcommand("patterns", "labeled mingling-pattern diagram families");
    add_common(c_patterns, true);
    CLI::App* c_verify = app.add_subcommand("verify", "run the verification harness");
    add_common(c_verify, true);
    CLI::App* c_oracle = app.add_subcommand("oracle-check", "brute-force oracle comparison");
    add_common(c_oracle, true);
    CLI::App* c_generate = app.add_subcommand("generate", "write a synthetic point set as CSV");
    add_common(c_generate, false);
    c_generate->add_option("--pattern", pattern,
                           "uniform-random | circle-on-background | "
                           "split-background-circle | blobs");
    c_generate->add_option("--n1", n1, "primary count (points / circle points / per blob)");
    c_generate->add_option("--n2", n2, "secondary count (background points / blob count)");
    c_generate->add_option("--colors", colors, "number of colors (uniform-random)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_compute->parsed()) return cmd_compute(opt);
        if (c_triple->parsed()) return cmd_triple(opt);
        if (c_patterns->parsed()) return cmd_patterns(opt);
        if (c_verify->parsed()) return cmd_verify(opt);
        if (c_oracle->parsed()) return cmd_oracle_check(opt);
        if (c_generate->parsed()) return cmd_generate(opt, pattern, n1, n2, colors);
    } catch (const chroma::GenericityViolation& e) {
        std::cerr << "genericity violation: " << e.what() << "\n";
        return 3;
    } catch (const chroma::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
