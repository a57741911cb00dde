#include "funbialign/bias_check.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "funbialign/errors.hpp"
#include "funbialign/scoring.hpp"

namespace funbialign {

BiasCheck verify_bias(std::size_t cardinality, std::size_t length, std::size_t trials,
                      std::uint64_t seed) {
    if (cardinality < 3) {
        throw Error(ErrorKind::InvalidCardinality, "bias check needs at least 3 portions");
    }
    if (length == 0) throw Error(ErrorKind::InvalidLength, "portion length must be positive");

    boost::random::mt19937_64 rng(seed);
    boost::random::uniform_real_distribution<double> unit(-1.0, 1.0);
    BiasCheck out;
    std::vector<std::vector<double>> motif(cardinality, std::vector<double>(length));
    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (auto& row : motif) {
            for (auto& v : row) v = unit(rng);
        }
        const auto avg = submotif_averages(motif);
        const double base = avg.by_size.at(2);
        for (std::size_t n = 2; n < cardinality; ++n) {
            const double expected = static_cast<double>(n * n) / static_cast<double>(n * n - 1);
            const double ratio = avg.by_size.at(n + 1) / avg.by_size.at(n);
            out.max_ratio_deviation = std::max(out.max_ratio_deviation, std::abs(ratio / expected - 1.0));
        }
        for (std::size_t n = 2; n <= cardinality; ++n) {
            const double adjusted = avg.by_size.at(n) / adjustment_factor(n);
            out.max_adjusted_deviation = std::max(out.max_adjusted_deviation, std::abs(adjusted / base - 1.0));
        }
    }
    return out;
}

} // namespace funbialign
