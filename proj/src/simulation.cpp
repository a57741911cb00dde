#include "funbialign/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include <boost/random/beta_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <gsl/gsl_bspline.h>
#include <gsl/gsl_vector.h>

#include "funbialign/errors.hpp"

namespace funbialign {
namespace {

using Rng = boost::random::mt19937_64;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

struct BsplineDeleter {
    void operator()(gsl_bspline_workspace* w) const { gsl_bspline_free(w); }
};
struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

// Sum of coefficients times the clamped, uniform-knot B-spline basis on the
// integer grid 0..points-1.
std::vector<double> evaluate_spline(const std::vector<double>& coeffs, std::size_t points,
                                    std::size_t intervals, std::size_t order) {
    std::unique_ptr<gsl_bspline_workspace, BsplineDeleter> ws(gsl_bspline_alloc(order, intervals + 1));
    gsl_bspline_knots_uniform(0.0, static_cast<double>(points - 1), ws.get());
    std::unique_ptr<gsl_vector, VectorDeleter> basis(gsl_vector_alloc(order));

    std::vector<double> values(points);
    for (std::size_t t = 0; t < points; ++t) {
        std::size_t first = 0, last = 0;
        gsl_bspline_eval_nonzero(static_cast<double>(t), basis.get(), &first, &last, ws.get());
        double v = 0.0;
        for (std::size_t j = first; j <= last; ++j) v += coeffs[j] * gsl_vector_get(basis.get(), j - first);
        values[t] = v;
    }
    return values;
}

double rescale(double unit, std::pair<double, double> range) {
    return range.first + (range.second - range.first) * unit;
}

} // namespace

double SimulationConfig::sigma_of(std::size_t motif) const {
    return sigmas.size() == 1 ? sigmas.front() : sigmas.at(motif);
}

void SimulationConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
    if (knot_spacing == 0) fail("knot spacing must be positive");
    if (curve_points < 2 || (curve_points - 1) % knot_spacing != 0) {
        fail("curve points " + std::to_string(curve_points) + " is not k * " +
             std::to_string(knot_spacing) + " + 1");
    }
    if (spline_order < 2) fail("spline order must be at least 2");
    if (n_motifs == 0 || occurrences == 0 || motif_spans == 0) {
        fail("motif count, occurrences and spans must be positive");
    }
    if (sigmas.size() != 1 && sigmas.size() != n_motifs) {
        fail("expected 1 or " + std::to_string(n_motifs) + " noise levels, got " +
             std::to_string(sigmas.size()));
    }
    for (double s : sigmas) {
        if (!(s >= 0.0) || !std::isfinite(s)) fail("noise levels must be finite and non-negative");
    }
    if (!(coeff_range.first < coeff_range.second) || !(shift_range.first <= shift_range.second)) {
        fail("empty coefficient or shift range");
    }
    if (!(beta_shape > 0.0)) fail("beta shape must be positive");
}

Simulation simulate(const SimulationConfig& config) {
    config.validate();
    const std::size_t intervals = (config.curve_points - 1) / config.knot_spacing;
    const std::size_t n_coeffs = intervals + config.spline_order - 1;
    const std::size_t motif_coeffs = config.motif_spans + config.spline_order - 1;

    // Starts (in knot intervals) where every basis function involved is an
    // interior, uniform one, so occurrence shape does not depend on position.
    const std::size_t margin = config.spline_order - 1;
    const std::size_t pitch = config.motif_spans + ceil_div(config.motif_points(), config.knot_spacing);
    const std::size_t slots = config.n_motifs * config.occurrences;
    const std::size_t lowest = margin;
    if (intervals < 2 * margin + config.motif_spans) {
        throw Error(ErrorKind::PlacementInfeasible, "curve is too short for a single motif");
    }
    const std::size_t highest = intervals - margin - config.motif_spans;
    const std::size_t needed = (slots - 1) * pitch;
    if (highest - lowest < needed) {
        throw Error(ErrorKind::PlacementInfeasible,
                    std::to_string(slots) + " occurrences need " + std::to_string(needed + 1) +
                        " start positions, only " + std::to_string(highest - lowest + 1) +
                        " available");
    }
    const std::size_t slack = highest - lowest - needed;

    Rng rng(config.rng_seed);
    boost::random::beta_distribution<double> beta(config.beta_shape, config.beta_shape);

    std::vector<double> coeffs(n_coeffs);
    for (auto& c : coeffs) c = rescale(beta(rng), config.coeff_range);

    std::vector<std::vector<double>> templates(config.n_motifs, std::vector<double>(motif_coeffs));
    for (auto& tmpl : templates) {
        for (auto& c : tmpl) c = rescale(beta(rng), config.coeff_range);
    }

    // Placements: `slots` sorted offsets drawn without replacement from
    // [0, slack + slots), then spread out by the pitch; motifs are assigned
    // to slots by a uniform shuffle.
    std::vector<std::size_t> pool(slack + slots);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < slots; ++i) {
        boost::random::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<std::size_t> offsets(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(slots));
    std::sort(offsets.begin(), offsets.end());
    std::vector<std::size_t> labels(slots);
    for (std::size_t i = 0; i < slots; ++i) labels[i] = i / config.occurrences;
    for (std::size_t i = slots; i > 1; --i) {
        boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(labels[i - 1], labels[pick(rng)]);
    }

    GroundTruth truth;
    truth.curve_ids = {"curve_0"};
    truth.motif_points = config.motif_points();
    truth.motifs.resize(config.n_motifs);
    for (std::size_t m = 0; m < config.n_motifs; ++m) {
        truth.motifs[m].template_coefficients = templates[m];
        truth.motifs[m].sigma = config.sigma_of(m);
    }
    std::vector<std::vector<std::size_t>> interval_starts(config.n_motifs);
    for (std::size_t i = 0; i < slots; ++i) {
        const std::size_t interval = lowest + (offsets[i] - i) + i * pitch;
        interval_starts[labels[i]].push_back(interval);
    }

    boost::random::uniform_real_distribution<double> shift(config.shift_range.first,
                                                           config.shift_range.second);
    for (std::size_t m = 0; m < config.n_motifs; ++m) {
        for (std::size_t interval : interval_starts[m]) {
            truth.motifs[m].occurrences.push_back({0, interval * config.knot_spacing, shift(rng)});
        }
    }

    boost::random::normal_distribution<double> standard_normal(0.0, 1.0);
    for (std::size_t m = 0; m < config.n_motifs; ++m) {
        const double sigma = truth.motifs[m].sigma;
        for (std::size_t k = 0; k < interval_starts[m].size(); ++k) {
            const std::size_t first = interval_starts[m][k];
            const double offset = truth.motifs[m].occurrences[k].shift;
            for (std::size_t j = 0; j < motif_coeffs; ++j) {
                coeffs[first + j] = templates[m][j] + offset + sigma * standard_normal(rng);
            }
        }
    }

    auto values = evaluate_spline(coeffs, config.curve_points, intervals, config.spline_order);
    std::vector<SampledCurve> curves;
    curves.emplace_back(truth.curve_ids.front(), std::move(values), 1.0, 0.0);
    return {CurveSet(std::move(curves)), std::move(truth)};
}

std::vector<ReportedMotif> to_reported(const std::vector<DiscoveredMotif>& motifs,
                                       const PortionSet& portions) {
    std::vector<ReportedMotif> out;
    out.reserve(motifs.size());
    for (const auto& m : motifs) {
        ReportedMotif r;
        r.final_rank = m.final_rank;
        for (std::size_t id : m.candidate.portion_ids) {
            const auto& p = portions[id];
            r.portions.push_back({portions.curves()[p.curve_index].id(), p.start, p.length_points});
        }
        out.push_back(std::move(r));
    }
    return out;
}

EvaluationReport evaluate(const std::vector<ReportedMotif>& discovered, const GroundTruth& truth,
                          double match_threshold) {
    for (const auto& d : discovered) {
        for (const auto& p : d.portions) {
            if (std::find(truth.curve_ids.begin(), truth.curve_ids.end(), p.curve_id) ==
                truth.curve_ids.end()) {
                throw Error(ErrorKind::CurveMismatch,
                            "discovered portion on curve '" + p.curve_id +
                                "' which is absent from the ground truth");
            }
        }
    }
    const double needed = match_threshold * static_cast<double>(truth.motif_points);

    EvaluationReport report;
    for (const auto& planted : truth.motifs) {
        MotifEvaluation best;
        best.missing = planted.occurrences.size();
        std::size_t best_index = discovered.size();
        for (std::size_t d = 0; d < discovered.size(); ++d) {
            const auto& found = discovered[d];
            std::vector<MatchedPair> options;
            for (std::size_t o = 0; o < planted.occurrences.size(); ++o) {
                const auto& occ = planted.occurrences[o];
                for (std::size_t p = 0; p < found.portions.size(); ++p) {
                    const auto& por = found.portions[p];
                    if (por.curve_id != truth.curve_ids.at(occ.curve_index)) continue;
                    const std::size_t lo = std::max(occ.start, por.start);
                    const std::size_t hi = std::min(occ.start + truth.motif_points, por.start + por.length);
                    const std::size_t shared = hi > lo ? hi - lo : 0;
                    if (static_cast<double>(shared) >= needed && shared > 0) {
                        options.push_back(
                            {o, p, static_cast<double>(shared) / static_cast<double>(truth.motif_points)});
                    }
                }
            }
            std::stable_sort(options.begin(), options.end(), [&](const MatchedPair& a, const MatchedPair& b) {
                if (a.overlap != b.overlap) return a.overlap > b.overlap;
                if (a.occurrence != b.occurrence) return a.occurrence < b.occurrence;
                return found.portions[a.portion].start < found.portions[b.portion].start;
            });
            std::vector<bool> occ_used(planted.occurrences.size(), false);
            std::vector<bool> por_used(found.portions.size(), false);
            std::vector<MatchedPair> pairs;
            for (const auto& opt : options) {
                if (occ_used[opt.occurrence] || por_used[opt.portion]) continue;
                occ_used[opt.occurrence] = por_used[opt.portion] = true;
                pairs.push_back(opt);
            }
            const bool better =
                pairs.size() > best.correct ||
                (pairs.size() == best.correct && !pairs.empty() && best_index < discovered.size() &&
                 found.final_rank < discovered[best_index].final_rank);
            if (better) {
                best_index = d;
                best.correct = pairs.size();
                best.extra = found.portions.size() - pairs.size();
                best.missing = planted.occurrences.size() - pairs.size();
                best.matched_rank = found.final_rank;
                best.pairs = std::move(pairs);
            }
        }
        report.motifs.push_back(std::move(best));
    }
    return report;
}

} // namespace funbialign
