#pragma once
// SVG figures for discovered motifs. Output is plain text and deterministic.

#include <filesystem>
#include <string>
#include <vector>

#include "funbialign/curves.hpp"
#include "funbialign/simulation.hpp"

namespace funbialign::plot {

// All portions of one motif overlaid on a shared axis, one polyline each.
std::string motif_svg(const ReportedMotif& motif, const CurveSet& curves);

// Every curve as a polyline with the spans of each motif shaded in its colour.
std::string curves_svg(const CurveSet& curves, const std::vector<ReportedMotif>& motifs);

// Writes curves.svg and motif_<rank>.svg into `out_dir`; returns the paths.
std::vector<std::filesystem::path> write_plots(const std::vector<ReportedMotif>& motifs,
                                               const CurveSet& curves,
                                               const std::filesystem::path& out_dir);

} // namespace funbialign::plot
