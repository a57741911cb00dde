#pragma once
// Synthetic curves with planted motif occurrences, and scoring of discovered
// motifs against the planted ground truth.
//
// The curve is a B-spline sum f(t) = sum_j c_j phi_j(t) with equally spaced
// knots. A motif spans `motif_spans` knot intervals; on those intervals the
// curve depends only on spans + order - 1 coefficients, which are overwritten
// by the motif template plus an occurrence-wide vertical shift plus
// per-coefficient Gaussian noise.
//
// Draw order (part of the reproducibility contract): background
// coefficients, motif templates, placements, shifts, noise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "funbialign/curves.hpp"
#include "funbialign/discovery.hpp"

namespace funbialign {

inline constexpr const char* kPrngName = "mt19937_64";

struct SimulationConfig {
    std::size_t curve_points = 7001;
    std::size_t knot_spacing = 10;
    std::size_t spline_order = 3;  // order = degree + 1
    std::size_t n_motifs = 4;
    std::size_t occurrences = 8;
    std::size_t motif_spans = 4;
    std::vector<double> sigmas{0.1};  // one per motif, or a single shared value
    std::pair<double, double> coeff_range{-15.0, 15.0};
    std::pair<double, double> shift_range{-10.0, 10.0};
    double beta_shape = 0.45;
    std::uint64_t rng_seed = 1;

    std::size_t motif_points() const { return motif_spans * knot_spacing + 1; }
    double sigma_of(std::size_t motif) const;
    void validate() const;
};

struct Occurrence {
    std::size_t curve_index = 0;
    std::size_t start = 0;
    double shift = 0.0;
};

struct PlantedMotif {
    std::vector<Occurrence> occurrences;  // ascending start
    std::vector<double> template_coefficients;
    double sigma = 0.0;
};

struct GroundTruth {
    std::vector<std::string> curve_ids;
    std::size_t motif_points = 0;
    std::vector<PlantedMotif> motifs;
};

struct Simulation {
    CurveSet curves;
    GroundTruth truth;
};

Simulation simulate(const SimulationConfig& config);

// A reported motif in the curve-id form used by the motif files.
struct ReportedPortion {
    std::string curve_id;
    std::size_t start = 0;
    std::size_t length = 0;
};

struct ReportedMotif {
    std::size_t final_rank = 0;
    std::vector<ReportedPortion> portions;
};

std::vector<ReportedMotif> to_reported(const std::vector<DiscoveredMotif>& motifs,
                                       const PortionSet& portions);

struct MatchedPair {
    std::size_t occurrence = 0;  // index into the planted motif's occurrences
    std::size_t portion = 0;     // index into the reported motif's portions
    double overlap = 0.0;        // shared points / planted motif length
};

struct MotifEvaluation {
    std::size_t correct = 0;
    std::size_t extra = 0;
    std::size_t missing = 0;
    std::optional<std::size_t> matched_rank;  // final_rank of the matched motif
    std::vector<MatchedPair> pairs;
};

struct EvaluationReport {
    std::vector<MotifEvaluation> motifs;
};

EvaluationReport evaluate(const std::vector<ReportedMotif>& discovered, const GroundTruth& truth,
                          double match_threshold = 0.5);

} // namespace funbialign
