#include "funbialign/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "funbialign/errors.hpp"

namespace funbialign::io {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(std::string(what) + " is not valid JSON (" + e.what() + ")");
    }
}

template <typename T>
T get_field(const json& obj, const char* key, const char* what) {
    if (!obj.is_object() || !obj.contains(key)) malformed(std::string(what) + " lacks '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        malformed(std::string(what) + " field '" + key + "' has the wrong type");
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::FileNotFound, "cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw Error(ErrorKind::FileNotFound, "short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

CurveSet parse_curves_json(const std::string& text) {
    const json doc = parse_json(text, "curve file");
    const double step = doc.is_object() && doc.contains("grid_step") ? get_field<double>(doc, "grid_step", "curve file") : 1.0;
    const json curves = get_field<json>(doc, "curves", "curve file");
    if (!curves.is_array()) malformed("curve file field 'curves' is not a list");
    std::vector<SampledCurve> out;
    for (const auto& c : curves) {
        const auto id = get_field<std::string>(c, "id", "curve entry");
        const auto values = get_field<std::vector<double>>(c, "values", "curve entry");
        const double origin = c.contains("origin") ? get_field<double>(c, "origin", "curve entry") : 0.0;
        out.emplace_back(id, values, step, origin);
    }
    if (out.empty()) throw Error(ErrorKind::EmptyCurveSet, "curve file holds no curves");
    return CurveSet(std::move(out));
}

CurveSet parse_curves_csv(const std::string& text, bool has_header, double grid_step) {
    std::istringstream in(text);
    std::string line;
    std::vector<SampledCurve> out;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (has_header && line_no == 1) continue;
        std::istringstream row(line);
        std::string cell, id;
        std::getline(row, id, ',');
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            if (cell.empty()) continue;
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0) malformed("CSV line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
            values.push_back(v);
        }
        out.emplace_back(id, std::move(values), grid_step, 0.0);
    }
    if (out.empty()) throw Error(ErrorKind::EmptyCurveSet, "CSV holds no curves");
    return CurveSet(std::move(out));
}

CurveSet read_curves(const std::filesystem::path& path, bool csv_header) {
    const auto text = read_text(path);
    if (path.extension() == ".csv") return parse_curves_csv(text, csv_header);
    return parse_curves_json(text);
}

std::string curves_to_json(const CurveSet& curves) {
    json doc;
    doc["grid_step"] = curves.grid_step();
    doc["curves"] = json::array();
    for (const auto& c : curves.curves()) {
        json entry;
        entry["id"] = c.id();
        entry["origin"] = c.origin();
        entry["values"] = std::vector<double>(c.values().begin(), c.values().end());
        doc["curves"].push_back(std::move(entry));
    }
    return doc.dump() + "\n";
}

std::string curves_to_csv(const CurveSet& curves) {
    std::string out;
    char buf[64];
    for (const auto& c : curves.curves()) {
        out += c.id();
        for (double v : c.values()) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::vector<PortionRef> parse_portion_refs(const std::string& text, const CurveSet& curves) {
    const json doc = parse_json(text, "portion list");
    const json& list = doc.is_object() && doc.contains("portions") ? doc.at("portions") : doc;
    if (!list.is_array()) malformed("portion list is not a JSON list");
    std::vector<PortionRef> out;
    for (const auto& e : list) {
        PortionRef p;
        if (e.contains("curve_id")) {
            p.curve_index = curves.index_of(get_field<std::string>(e, "curve_id", "portion"));
        } else {
            p.curve_index = get_field<std::size_t>(e, "curve_index", "portion");
        }
        p.start = get_field<std::size_t>(e, "start", "portion");
        p.length_points = get_field<std::size_t>(e, "length", "portion");
        portion_values(p, curves);
        out.push_back(p);
    }
    return out;
}

std::string motifs_to_json(const MotifFileHeader& header, const std::vector<DiscoveredMotif>& motifs,
                           const PortionSet& portions) {
    json doc;
    doc["length"] = header.length_points;
    doc["min_card"] = header.min_cardinality;
    doc["criterion"] = std::string(criterion_name(header.criterion));
    doc["motifs"] = json::array();
    for (const auto& m : motifs) {
        json e;
        e["final_rank"] = m.final_rank;
        e["criterion"] = std::string(criterion_name(header.criterion));
        e["h"] = m.candidate.score.h;
        e["h_adjusted"] = m.candidate.score.h_adjusted;
        e["cardinality"] = m.candidate.portion_ids.size();
        e["variance"] = m.variance;
        e["rank_hadj"] = m.rank_hadj;
        e["rank_cardinality"] = m.rank_cardinality;
        e["rank_sum"] = m.rank_sum;
        e["rank_variance"] = m.rank_variance;
        e["portions"] = json::array();
        for (std::size_t id : m.candidate.portion_ids) {
            const auto& p = portions[id];
            e["portions"].push_back({{"curve_id", portions.curves()[p.curve_index].id()},
                                     {"start", p.start},
                                     {"length", p.length_points}});
        }
        doc["motifs"].push_back(std::move(e));
    }
    return dump(doc);
}

std::vector<ReportedMotif> parse_motifs(const std::string& text) {
    const json doc = parse_json(text, "motif file");
    const json& list = doc.is_object() ? get_field<json>(doc, "motifs", "motif file") : doc;
    if (!list.is_array()) malformed("motif file field 'motifs' is not a list");
    std::vector<ReportedMotif> out;
    for (const auto& e : list) {
        ReportedMotif m;
        m.final_rank = get_field<std::size_t>(e, "final_rank", "motif");
        for (const auto& p : get_field<json>(e, "portions", "motif")) {
            m.portions.push_back({get_field<std::string>(p, "curve_id", "motif portion"),
                                  get_field<std::size_t>(p, "start", "motif portion"),
                                  get_field<std::size_t>(p, "length", "motif portion")});
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::string truth_to_json(const GroundTruth& truth) {
    json doc;
    doc["curve_ids"] = truth.curve_ids;
    doc["motif_points"] = truth.motif_points;
    doc["motifs"] = json::array();
    for (const auto& m : truth.motifs) {
        json e;
        e["sigma"] = m.sigma;
        e["template_coefficients"] = m.template_coefficients;
        e["occurrences"] = json::array();
        for (const auto& o : m.occurrences) {
            e["occurrences"].push_back({{"curve_id", truth.curve_ids.at(o.curve_index)},
                                        {"curve_index", o.curve_index},
                                        {"start", o.start},
                                        {"shift", o.shift}});
        }
        doc["motifs"].push_back(std::move(e));
    }
    return dump(doc);
}

GroundTruth parse_truth(const std::string& text) {
    const json doc = parse_json(text, "truth file");
    GroundTruth t;
    t.curve_ids = get_field<std::vector<std::string>>(doc, "curve_ids", "truth file");
    t.motif_points = get_field<std::size_t>(doc, "motif_points", "truth file");
    for (const auto& e : get_field<json>(doc, "motifs", "truth file")) {
        PlantedMotif m;
        m.sigma = e.contains("sigma") ? get_field<double>(e, "sigma", "truth motif") : 0.0;
        if (e.contains("template_coefficients")) {
            m.template_coefficients = get_field<std::vector<double>>(e, "template_coefficients", "truth motif");
        }
        for (const auto& o : get_field<json>(e, "occurrences", "truth motif")) {
            Occurrence occ;
            occ.curve_index = get_field<std::size_t>(o, "curve_index", "occurrence");
            if (occ.curve_index >= t.curve_ids.size()) malformed("occurrence references an unknown curve");
            occ.start = get_field<std::size_t>(o, "start", "occurrence");
            occ.shift = o.contains("shift") ? get_field<double>(o, "shift", "occurrence") : 0.0;
            m.occurrences.push_back(occ);
        }
        t.motifs.push_back(std::move(m));
    }
    return t;
}

std::string dendrogram_to_json(const Dendrogram& tree) {
    json doc = json::array();
    for (const auto& m : tree.merges()) doc.push_back(json::array({m.left, m.right, m.height}));
    return doc.dump() + "\n";
}

std::string report_to_json(const EvaluationReport& report) {
    json doc;
    doc["motifs"] = json::array();
    for (std::size_t i = 0; i < report.motifs.size(); ++i) {
        const auto& m = report.motifs[i];
        json e;
        e["motif"] = i + 1;
        e["correct"] = m.correct;
        e["extra"] = m.extra;
        e["missing"] = m.missing;
        e["matched_rank"] = m.matched_rank ? json(*m.matched_rank) : json(nullptr);
        e["pairs"] = json::array();
        for (const auto& p : m.pairs) {
            e["pairs"].push_back({{"occurrence", p.occurrence}, {"portion", p.portion}, {"overlap", p.overlap}});
        }
        doc["motifs"].push_back(std::move(e));
    }
    return dump(doc);
}

std::string report_to_table(const EvaluationReport& report) {
    std::string out = "motif  rank  correct  extra  missing\n";
    char buf[128];
    for (std::size_t i = 0; i < report.motifs.size(); ++i) {
        const auto& m = report.motifs[i];
        const std::string rank = m.matched_rank ? std::to_string(*m.matched_rank) : "-";
        std::snprintf(buf, sizeof buf, "%5zu  %4s  %7zu  %5zu  %7zu\n", i + 1, rank.c_str(), m.correct,
                      m.extra, m.missing);
        out += buf;
    }
    return out;
}

} // namespace funbialign::io
