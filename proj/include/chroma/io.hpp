#ifndef CHROMA_IO_HPP
#define CHROMA_IO_HPP

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chroma/persistence.hpp"
#include "chroma/rational.hpp"
#include "chroma/types.hpp"

namespace chroma {

struct IngestResult {
    ChromaticPointSet points;
    std::map<int, int> color_relabel;  // input label -> dense label
};

/// CSV rows `x_1,...,x_d,color`; an optional header is detected by a
/// non-numeric first field.  Colors may be sparse non-negative integers and
/// are relabeled densely; duplicate points are rejected by row number.
inline IngestResult ingest_csv(std::istream& in, int d, int scale_exp = 9) {
    std::vector<RatVec> pts;
    std::vector<int> raw_colors;
    std::string line;
    int row = 0;
    std::map<std::vector<Rat>, int> seen;  // point -> first row
    while (std::getline(in, line)) {
        ++row;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (row == 1 && !fields.empty()) {
            // header detection: non-numeric first field
            const std::string& h = fields[0];
            bool numeric = !h.empty() && h.find_first_not_of("0123456789+-.eE ") == std::string::npos;
            if (!numeric) continue;
        }
        if (static_cast<int>(fields.size()) != d + 1)
            throw InputError("row " + std::to_string(row) + ": expected " + std::to_string(d + 1) +
                             " fields, got " + std::to_string(fields.size()));
        RatVec p(d);
        for (int j = 0; j < d; ++j) {
            try {
                p[j] = parse_scaled_decimal(fields[j], scale_exp);
            } catch (const InputError& e) {
                throw InputError("row " + std::to_string(row) + ": " + e.what());
            }
        }
        int c;
        try {
            size_t pos = 0;
            c = std::stoi(fields[d], &pos);
            while (pos < fields[d].size() && std::isspace(static_cast<unsigned char>(fields[d][pos]))) ++pos;
            if (pos != fields[d].size() || c < 0) throw std::invalid_argument("");
        } catch (...) {
            throw InputError("row " + std::to_string(row) + ": bad color field '" + fields[d] + "'");
        }
        auto [it, fresh] = seen.try_emplace(p, row);
        if (!fresh)
            throw InputError("row " + std::to_string(row) + ": duplicate of row " +
                             std::to_string(it->second));
        pts.push_back(std::move(p));
        raw_colors.push_back(c);
    }
    if (pts.empty()) throw InputError("no data rows in input");
    std::map<int, int> relabel;
    for (int c : raw_colors) relabel.emplace(c, 0);
    int next = 0;
    for (auto& [from, to] : relabel) to = next++;
    std::vector<int> colors;
    for (int c : raw_colors) colors.push_back(relabel.at(c));
    return {ChromaticPointSet(d, std::move(pts), std::move(colors)), std::move(relabel)};
}

inline IngestResult ingest_csv_file(const std::string& path, int d, int scale_exp = 9) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    return ingest_csv(in, d, scale_exp);
}

inline void write_points_csv(std::ostream& out, const ChromaticPointSet& chi) {
    for (int i = 0; i < chi.size(); ++i) {
        for (const Rat& c : chi.point(i)) out << to_double(c) << ',';
        out << chi.color(i) << '\n';
    }
}

/// JSON serialization: exact rationals as "num/den" strings with float
/// companions; infinite deaths as null.
inline nlohmann::json diagrams_to_json(
    const std::map<std::string, const std::map<int, PersistenceDiagram>*>& families,
    const nlohmann::json& meta) {
    nlohmann::json out;
    out["meta"] = meta;
    nlohmann::json& d = out["diagrams"] = nlohmann::json::object();
    for (const auto& [label, fam] : families) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [deg, dg] : *fam) {
            nlohmann::json entry;
            entry["dim"] = deg;
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& p : dg.points) {
                nlohmann::json jp;
                jp["birth"] = rat_string(p.birth);
                jp["birth_float"] = to_double(p.birth);
                if (p.death) {
                    jp["death"] = rat_string(*p.death);
                    jp["death_float"] = to_double(*p.death);
                } else {
                    jp["death"] = nullptr;
                }
                if (!p.birth_simplex.empty()) jp["birth_simplex"] = p.birth_simplex;
                if (!p.death_simplex.empty()) jp["death_simplex"] = p.death_simplex;
                pts.push_back(std::move(jp));
            }
            entry["points"] = std::move(pts);
            arr.push_back(std::move(entry));
        }
        d[label] = std::move(arr);
    }
    return out;
}

inline std::map<std::string, std::map<int, PersistenceDiagram>> diagrams_from_json(
    const nlohmann::json& j) {
    std::map<std::string, std::map<int, PersistenceDiagram>> out;
    for (const auto& [label, arr] : j.at("diagrams").items()) {
        for (const auto& entry : arr) {
            int deg = entry.at("dim").get<int>();
            PersistenceDiagram dg;
            dg.degree = deg;
            for (const auto& jp : entry.at("points")) {
                DiagramPoint p;
                p.birth = parse_rat_string(jp.at("birth").get<std::string>());
                if (!jp.at("death").is_null())
                    p.death = parse_rat_string(jp.at("death").get<std::string>());
                if (jp.contains("birth_simplex"))
                    p.birth_simplex = jp.at("birth_simplex").get<Simplex>();
                if (jp.contains("death_simplex"))
                    p.death_simplex = jp.at("death_simplex").get<Simplex>();
                dg.add(std::move(p));
            }
            out[label][deg] = std::move(dg);
        }
    }
    return out;
}

/// CSV: one point per row, `label,dim,birth,death` (exact rationals, `inf`
/// for essential classes).
inline void diagrams_to_csv(
    std::ostream& out,
    const std::map<std::string, const std::map<int, PersistenceDiagram>*>& families) {
    out << "label,dim,birth,death\n";
    for (const auto& [label, fam] : families) {
        for (const auto& [deg, dg] : *fam) {
            for (const auto& p : dg.points) {
                out << label << ',' << deg << ',' << rat_string(p.birth) << ','
                    << (p.death ? rat_string(*p.death) : std::string("inf")) << '\n';
            }
        }
    }
}

/// SVG: one square panel per family in the fixed two-row layout
/// (kernel, relative, cokernel over domain, image, codomain), diagonal drawn,
/// essential classes plotted on the cutoff line.
inline void six_pack_to_svg(std::ostream& out, const SixPack& pack, const Rat& cutoff) {
    const double panel = 220, margin = 40, gap = 30;
    const double cut = to_double(cutoff);
    const double width = 3 * panel + 4 * gap, height = 2 * (panel + margin) + 2 * gap;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n";
    const std::vector<std::string> order = {"kernel", "relative", "cokernel",
                                            "domain", "image",    "codomain"};
    for (size_t idx = 0; idx < order.size(); ++idx) {
        double ox = gap + (idx % 3) * (panel + gap);
        double oy = margin + (idx / 3) * (panel + margin + gap);
        out << "<text x='" << ox << "' y='" << oy - 8 << "' font-family='sans-serif' font-size='14'>"
            << order[idx] << "</text>\n";
        out << "<rect x='" << ox << "' y='" << oy << "' width='" << panel << "' height='" << panel
            << "' fill='white' stroke='black'/>\n";
        out << "<line x1='" << ox << "' y1='" << oy + panel << "' x2='" << ox + panel << "' y2='"
            << oy << "' stroke='gray'/>\n";
        // cutoff line for essential classes
        out << "<line x1='" << ox << "' y1='" << oy + 2 << "' x2='" << ox + panel << "' y2='"
            << oy + 2 << "' stroke='lightgray' stroke-dasharray='4'/>\n";
        const auto& fam = pack.by_label(order[idx]);
        static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
        for (const auto& [deg, dg] : fam) {
            const char* color = palette[deg % 4];
            for (const auto& p : dg.points) {
                double bx = to_double(p.birth) / cut, dy = to_double(p.death ? *p.death : cutoff) / cut;
                bx = bx < 0 ? 0 : bx > 1 ? 1 : bx;
                dy = dy < 0 ? 0 : dy > 1 ? 1 : dy;
                out << "<circle cx='" << ox + bx * panel << "' cy='" << oy + (1 - dy) * panel
                    << "' r='3' fill='" << color << "'"
                    << (p.death ? "" : " stroke='black'") << "/>\n";
            }
        }
    }
    out << "</svg>\n";
}

}  // namespace chroma

#endif
