#pragma once

#include <cstddef>
#include <cstdint>

namespace funbialign {

struct BiasCheck {
    // max over trials and n of |(Hbar_{n+1} / Hbar_n) / (n^2 / (n^2 - 1)) - 1|
    double max_ratio_deviation = 0.0;
    // max over trials and n of |(Hbar_n / adjustment_factor(n)) / Hbar_2 - 1|
    double max_adjusted_deviation = 0.0;
};

// Random motifs with entries uniform on [-1, 1], sub-motif averages by
// exhaustive enumeration.
BiasCheck verify_bias(std::size_t cardinality, std::size_t length, std::size_t trials,
                      std::uint64_t seed);

} // namespace funbialign
