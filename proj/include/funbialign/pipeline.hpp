#pragma once
// The full discovery run: portions, matrix, dendrogram, cut, candidates, ranking.

#include <cstddef>
#include <memory>
#include <vector>

#include "funbialign/clustering.hpp"
#include "funbialign/curves.hpp"
#include "funbialign/discovery.hpp"

namespace funbialign {

struct DiscoveryOptions {
    std::size_t length_points = 41;
    std::size_t min_cardinality = 6;
    RankCriterion criterion = RankCriterion::RankSum;
    std::size_t max_results = 0;  // 0 keeps everything
    unsigned threads = 1;
};

struct DiscoveryResult {
    PortionSet portions;
    double penalty = 0.0;
    Dendrogram tree;
    SubTreeForest forest;
    std::vector<MotifCandidate> candidates;
    std::vector<DiscoveredMotif> motifs;
};

DiscoveryResult discover(std::shared_ptr<const CurveSet> curves, const DiscoveryOptions& options);

} // namespace funbialign
