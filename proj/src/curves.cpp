#include "funbialign/curves.hpp"

#include <cmath>
#include <unordered_set>

#include "funbialign/errors.hpp"

namespace funbialign {

SampledCurve::SampledCurve(std::string id, std::vector<double> values, double grid_step,
                           double origin)
    : id_(std::move(id)), values_(std::move(values)), grid_step_(grid_step), origin_(origin) {
    if (values_.size() < 2) {
        throw Error(ErrorKind::InvalidCurve,
                    "curve '" + id_ + "' has " + std::to_string(values_.size()) +
                        " samples, need at least 2");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorKind::NonFiniteInput,
                        "curve '" + id_ + "' sample " + std::to_string(i) + " is not finite");
        }
    }
    if (!(grid_step_ > 0.0) || !std::isfinite(grid_step_) || !std::isfinite(origin_)) {
        throw Error(ErrorKind::InvalidCurve, "curve '" + id_ + "' has a non-positive grid step");
    }
}

CurveSet::CurveSet(std::vector<SampledCurve> curves) : curves_(std::move(curves)) {
    std::unordered_set<std::string> seen;
    for (const auto& c : curves_) {
        if (!seen.insert(c.id()).second) {
            throw Error(ErrorKind::DuplicateCurveId, "curve id '" + c.id() + "' appears twice");
        }
        if (c.grid_step() != curves_.front().grid_step()) {
            throw Error(ErrorKind::GridMismatch, "curve '" + c.id() + "' has grid step " +
                                                     std::to_string(c.grid_step()) + ", expected " +
                                                     std::to_string(curves_.front().grid_step()));
        }
    }
}

std::size_t CurveSet::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < curves_.size(); ++i) {
        if (curves_[i].id() == id) return i;
    }
    throw Error(ErrorKind::CurveMismatch, "unknown curve id '" + id + "'");
}

std::size_t shared_points(const PortionRef& a, const PortionRef& b) {
    if (a.curve_index != b.curve_index) return 0;
    const std::size_t lo = std::max(a.start, b.start);
    const std::size_t hi = std::min(a.start + a.length_points, b.start + b.length_points);
    return hi > lo ? hi - lo : 0;
}

bool are_acolytes(const PortionRef& a, const PortionRef& b) {
    if (a == b || a.curve_index != b.curve_index) return false;
    // shared >= 0.5 * length, kept in integers
    return 2 * shared_points(a, b) >= a.length_points;
}

std::size_t acolyte_reach(std::size_t length_points) { return length_points / 2; }

std::span<const double> portion_values(const PortionRef& p, const CurveSet& curves) {
    if (p.curve_index >= curves.size()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "curve index " + std::to_string(p.curve_index) + " out of range");
    }
    const auto values = curves[p.curve_index].values();
    if (p.length_points == 0 || p.start + p.length_points > values.size()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "portion [" + std::to_string(p.start) + ", " +
                        std::to_string(p.start + p.length_points) + ") exceeds curve '" +
                        curves[p.curve_index].id() + "' of " + std::to_string(values.size()) +
                        " samples");
    }
    return values.subspan(p.start, p.length_points);
}

PortionSet::PortionSet(std::shared_ptr<const CurveSet> curves, std::size_t length_points)
    : curves_(std::move(curves)), length_points_(length_points) {
    if (!curves_ || curves_->empty()) {
        throw Error(ErrorKind::EmptyCurveSet, "no curves to cut into portions");
    }
    if (length_points_ < 3) {
        throw Error(ErrorKind::InvalidLength,
                    "portion length " + std::to_string(length_points_) + " is below 3");
    }
    for (const auto& c : curves_->curves()) {
        if (c.size() < length_points_) {
            throw Error(ErrorKind::CurveTooShort,
                        "curve '" + c.id() + "' has " + std::to_string(c.size()) +
                            " samples, portion length is " + std::to_string(length_points_));
        }
    }
    for (std::size_t i = 0; i < curves_->size(); ++i) {
        curve_offsets_.push_back(portions_.size());
        const std::size_t count = (*curves_)[i].size() - length_points_ + 1;
        for (std::size_t s = 0; s < count; ++s) portions_.push_back({i, s, length_points_});
    }
}

std::size_t PortionSet::index_of(std::size_t curve_index, std::size_t start) const {
    if (curve_index >= curve_offsets_.size() ||
        start + length_points_ > (*curves_)[curve_index].size()) {
        throw Error(ErrorKind::IndexOutOfRange, "no portion at curve " +
                                                    std::to_string(curve_index) + " start " +
                                                    std::to_string(start));
    }
    return curve_offsets_[curve_index] + start;
}

PortionSet create_portions(std::shared_ptr<const CurveSet> curves, std::size_t length_points) {
    return PortionSet(std::move(curves), length_points);
}

} // namespace funbialign
