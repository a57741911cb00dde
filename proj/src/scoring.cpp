#include "funbialign/scoring.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "funbialign/errors.hpp"

namespace funbialign {
namespace {

constexpr double kNegativeFloor = 1e-12;

std::vector<std::span<const double>> as_views(const std::vector<std::vector<double>>& rows) {
    std::vector<std::span<const double>> views;
    views.reserve(rows.size());
    for (const auto& r : rows) views.emplace_back(r);
    return views;
}

void validate(PortionViews portions) {
    if (portions.size() < 2) {
        throw Error(ErrorKind::TooFewPortions,
                    "a motif needs at least 2 portions, got " + std::to_string(portions.size()));
    }
    const std::size_t len = portions.front().size();
    if (len == 0) throw Error(ErrorKind::LengthMismatch, "portions are empty");
    for (std::size_t k = 0; k < portions.size(); ++k) {
        if (portions[k].size() != len) {
            throw Error(ErrorKind::LengthMismatch,
                        "portion " + std::to_string(k) + " has " +
                            std::to_string(portions[k].size()) + " samples, expected " +
                            std::to_string(len));
        }
        for (double v : portions[k]) {
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::NonFiniteInput,
                            "portion " + std::to_string(k) + " contains a non-finite sample");
            }
        }
    }
}

double clamp_score(double h) {
    if (h >= 0.0) return h;
    if (h > -kNegativeFloor) return 0.0;
    throw Error(ErrorKind::NegativeScore, "fMSR evaluated to " + std::to_string(h));
}

} // namespace

double fmsr(PortionViews portions) {
    validate(portions);
    const std::size_t n = portions.size();
    const std::size_t len = portions.front().size();

    std::vector<double> row_mean(n, 0.0);
    std::vector<double> col_mean(len, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t t = 0; t < len; ++t) {
            row_mean[k] += portions[k][t];
            col_mean[t] += portions[k][t];
        }
    }
    double grand = 0.0;
    for (auto& m : row_mean) {
        grand += m;
        m /= static_cast<double>(len);
    }
    grand /= static_cast<double>(n * len);
    for (auto& m : col_mean) m /= static_cast<double>(n);

    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t t = 0; t < len; ++t) {
            const double r = portions[k][t] - row_mean[k] - col_mean[t] + grand;
            sum += r * r;
        }
    }
    return clamp_score(sum / static_cast<double>(n * len));
}

double fmsr(const std::vector<std::vector<double>>& portions) {
    const auto views = as_views(portions);
    return fmsr(PortionViews(views));
}

double adjustment_factor(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorKind::InvalidCardinality,
                    "cardinality " + std::to_string(n) + " is below 2");
    }
    double factor = 1.0;
    for (std::size_t r = 2; r < n; ++r) {
        const double r2 = static_cast<double>(r) * static_cast<double>(r);
        factor *= r2 / (r2 - 1.0);
    }
    return factor;
}

MotifScore fmsr_adjusted(PortionViews portions) {
    MotifScore s;
    s.h = fmsr(portions);
    s.cardinality = portions.size();
    s.h_adjusted = s.h / adjustment_factor(s.cardinality);
    return s;
}

MotifScore fmsr_adjusted(const std::vector<std::vector<double>>& portions) {
    const auto views = as_views(portions);
    return fmsr_adjusted(PortionViews(views));
}

double dissimilarity(std::span<const double> p1, std::span<const double> p2) {
    if (p1.size() != p2.size()) {
        throw Error(ErrorKind::LengthMismatch, "portions have " + std::to_string(p1.size()) +
                                                   " and " + std::to_string(p2.size()) +
                                                   " samples");
    }
    if (p1.empty()) throw Error(ErrorKind::LengthMismatch, "portions are empty");
    const std::size_t len = p1.size();
    double mean = 0.0;
    for (std::size_t t = 0; t < len; ++t) mean += p1[t] - p2[t];
    mean /= static_cast<double>(len);
    double sum = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        const double c = (p1[t] - p2[t]) - mean;
        sum += c * c;
    }
    const double d = sum / (4.0 * static_cast<double>(len));
    if (!std::isfinite(d)) throw Error(ErrorKind::NonFiniteInput, "portion contains a non-finite sample");
    return d;
}

SubMotifAverages submotif_averages(PortionViews portions) {
    const std::size_t n = portions.size();
    if (n < 2) {
        throw Error(ErrorKind::TooFewPortions,
                    "a motif needs at least 2 portions, got " + std::to_string(n));
    }
    if (n > kMaxOracleCardinality) {
        throw Error(ErrorKind::CardinalityTooLarge,
                    "exhaustive enumeration is limited to " +
                        std::to_string(kMaxOracleCardinality) + " portions, got " +
                        std::to_string(n));
    }
    validate(portions);

    // Bitmask enumeration in increasing mask order: sums are accumulated in a
    // fixed order, so the result does not depend on scheduling.
    std::vector<double> sums(n + 1, 0.0);
    std::vector<std::size_t> counts(n + 1, 0);
    std::vector<std::span<const double>> subset;
    subset.reserve(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size < 2) continue;
        subset.clear();
        for (std::size_t k = 0; k < n; ++k) {
            if (mask & (1u << k)) subset.push_back(portions[k]);
        }
        sums[size] += fmsr(PortionViews(subset));
        ++counts[size];
    }

    SubMotifAverages out;
    for (std::size_t size = 2; size <= n; ++size) {
        out.by_size[size] = sums[size] / static_cast<double>(counts[size]);
    }
    return out;
}

SubMotifAverages submotif_averages(const std::vector<std::vector<double>>& portions) {
    const auto views = as_views(portions);
    return submotif_averages(PortionViews(views));
}

} // namespace funbialign
