#pragma once
// Sampled curves, fixed-length portions, and the acolyte relation.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace funbialign {

// One curve evaluated on an equispaced grid origin, origin + step, ...
class SampledCurve {
public:
    SampledCurve(std::string id, std::vector<double> values, double grid_step = 1.0,
                 double origin = 0.0);

    const std::string& id() const noexcept { return id_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double grid_step() const noexcept { return grid_step_; }
    double origin() const noexcept { return origin_; }

private:
    std::string id_;
    std::vector<double> values_;
    double grid_step_;
    double origin_;
};

// Curves on a shared grid step with unique ids.
class CurveSet {
public:
    explicit CurveSet(std::vector<SampledCurve> curves);

    std::size_t size() const noexcept { return curves_.size(); }
    bool empty() const noexcept { return curves_.empty(); }
    const SampledCurve& operator[](std::size_t i) const { return curves_.at(i); }
    const std::vector<SampledCurve>& curves() const noexcept { return curves_; }
    double grid_step() const noexcept { return curves_.empty() ? 1.0 : curves_.front().grid_step(); }

    // Index of the curve with this id; throws CurveMismatch when absent.
    std::size_t index_of(const std::string& id) const;

private:
    std::vector<SampledCurve> curves_;
};

struct PortionRef {
    std::size_t curve_index = 0;
    std::size_t start = 0;
    std::size_t length_points = 0;

    friend bool operator==(const PortionRef&, const PortionRef&) = default;
    friend auto operator<=>(const PortionRef&, const PortionRef&) = default;
};

// Grid points shared by two windows of the same curve (0 for different curves).
std::size_t shared_points(const PortionRef& a, const PortionRef& b);

// Same curve, distinct, overlapping on at least half of their grid points.
bool are_acolytes(const PortionRef& a, const PortionRef& b);

// Largest start offset at which two windows of length `length_points` are
// still acolytes: floor(length_points / 2).
std::size_t acolyte_reach(std::size_t length_points);

std::span<const double> portion_values(const PortionRef& p, const CurveSet& curves);

// Every window of `length_points` consecutive samples, ordered by (curve, start).
class PortionSet {
public:
    PortionSet(std::shared_ptr<const CurveSet> curves, std::size_t length_points);

    std::size_t size() const noexcept { return portions_.size(); }
    std::size_t length_points() const noexcept { return length_points_; }
    const PortionRef& operator[](std::size_t i) const { return portions_.at(i); }
    const std::vector<PortionRef>& portions() const noexcept { return portions_; }
    const CurveSet& curves() const noexcept { return *curves_; }
    const std::shared_ptr<const CurveSet>& curves_ptr() const noexcept { return curves_; }

    std::span<const double> values(std::size_t portion) const {
        return portion_values(portions_.at(portion), *curves_);
    }

    // Position of the portion (curve, start) inside this set.
    std::size_t index_of(std::size_t curve_index, std::size_t start) const;

private:
    std::shared_ptr<const CurveSet> curves_;
    std::size_t length_points_;
    std::vector<PortionRef> portions_;
    std::vector<std::size_t> curve_offsets_;
};

PortionSet create_portions(std::shared_ptr<const CurveSet> curves, std::size_t length_points);

} // namespace funbialign
