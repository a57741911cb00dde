#include "funbialign/pipeline.hpp"

#include <spdlog/spdlog.h>

#include "funbialign/errors.hpp"

namespace funbialign {

DiscoveryResult discover(std::shared_ptr<const CurveSet> curves, const DiscoveryOptions& options) {
    if (options.min_cardinality < 2) {
        throw Error(ErrorKind::InvalidCardinality,
                    "minimum cardinality " + std::to_string(options.min_cardinality) + " is below 2");
    }
    auto portions = create_portions(std::move(curves), options.length_points);
    spdlog::debug("{} portions of length {}", portions.size(), options.length_points);

    auto matrix = build_matrix(portions, options.threads);
    spdlog::debug("dissimilarity matrix built, penalty {}", matrix.penalty());
    auto tree = complete_linkage(matrix);
    auto forest = cut_dendrogram(tree, matrix);
    spdlog::debug("{} sub-trees after the cut", forest.subtrees.size());
    const double penalty = matrix.penalty();

    auto candidates = collect_candidates(tree, forest, portions, options.min_cardinality, options.threads);
    spdlog::debug("{} candidate motifs", candidates.size());
    std::vector<DiscoveredMotif> motifs;
    if (!candidates.empty()) motifs = post_process(candidates, options.criterion, portions);
    if (options.max_results != 0 && motifs.size() > options.max_results) motifs.resize(options.max_results);

    return {std::move(portions), penalty,  std::move(tree), std::move(forest),
            std::move(candidates), std::move(motifs)};
}

} // namespace funbialign
