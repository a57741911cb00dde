#pragma once
// File formats. JSON is canonical; wide CSV is accepted for curve input.

#include <filesystem>
#include <string>
#include <vector>

#include "funbialign/clustering.hpp"
#include "funbialign/curves.hpp"
#include "funbialign/discovery.hpp"
#include "funbialign/simulation.hpp"

namespace funbialign::io {

std::string read_text(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// {"grid_step": 1.0, "curves": [{"id": "...", "values": [...], "origin": 0.0}]}
CurveSet parse_curves_json(const std::string& text);
// One curve per row: id, then samples. Rows may be ragged.
CurveSet parse_curves_csv(const std::string& text, bool has_header, double grid_step = 1.0);
// Dispatches on the extension (.csv, anything else is JSON).
CurveSet read_curves(const std::filesystem::path& path, bool csv_header = false);

std::string curves_to_json(const CurveSet& curves);
std::string curves_to_csv(const CurveSet& curves);

// [{"curve_id": "...", "start": 0, "length": 41}, ...]; "curve_index" may
// replace "curve_id".
std::vector<PortionRef> parse_portion_refs(const std::string& text, const CurveSet& curves);

struct MotifFileHeader {
    std::size_t length_points = 0;
    std::size_t min_cardinality = 0;
    RankCriterion criterion = RankCriterion::RankSum;
};

std::string motifs_to_json(const MotifFileHeader& header, const std::vector<DiscoveredMotif>& motifs,
                           const PortionSet& portions);
std::vector<ReportedMotif> parse_motifs(const std::string& text);

std::string truth_to_json(const GroundTruth& truth);
GroundTruth parse_truth(const std::string& text);

// [[left, right, height], ...]
std::string dendrogram_to_json(const Dendrogram& tree);

std::string report_to_json(const EvaluationReport& report);
std::string report_to_table(const EvaluationReport& report);

} // namespace funbialign::io
