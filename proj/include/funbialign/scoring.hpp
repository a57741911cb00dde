#pragma once
// Functional mean squared residue (fMSR) scores.
//
// A motif is a set of n equal-length portions. Its fMSR is the mean squared
// residual after removing the grand mean, the per-portion means and the
// per-grid-point means (double centering). On an equispaced grid the integral
// over the portion domain is the arithmetic mean over its samples, so the
// score equals the mean squared residue of the n x length matrix.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace funbialign {

struct MotifScore {
    double h = 0.0;
    double h_adjusted = 0.0;
    std::size_t cardinality = 0;
};

struct SubMotifAverages {
    // subset size n -> mean fMSR over all subsets of that size
    std::map<std::size_t, double> by_size;
};

// Read-only view of a motif: one span per portion.
using PortionViews = std::span<const std::span<const double>>;

double fmsr(PortionViews portions);
double fmsr(const std::vector<std::vector<double>>& portions);

// prod_{r=2}^{n-1} r^2 / (r^2 - 1); 1 for n = 2, strictly below 2 for all n.
double adjustment_factor(std::size_t n);

MotifScore fmsr_adjusted(PortionViews portions);
MotifScore fmsr_adjusted(const std::vector<std::vector<double>>& portions);

// Pair score: for two portions the residual is half the centered difference,
// so the fMSR reduces to var(p1 - p2) / 4. Factor is 1 at n = 2.
double dissimilarity(std::span<const double> p1, std::span<const double> p2);

// Exhaustive average of fMSR over every sub-motif of each size 2..n.
// Does not use the closed-form ratio; it is the check for it.
inline constexpr std::size_t kMaxOracleCardinality = 12;
SubMotifAverages submotif_averages(PortionViews portions);
SubMotifAverages submotif_averages(const std::vector<std::vector<double>>& portions);

} // namespace funbialign
