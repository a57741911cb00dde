#pragma once
// Candidate motifs from the acolyte-free sub-trees, and their ranking.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "funbialign/clustering.hpp"
#include "funbialign/curves.hpp"
#include "funbialign/scoring.hpp"

namespace funbialign {

enum class RankCriterion { HAdj, RankSum, Variance };

std::string_view criterion_name(RankCriterion c);
std::optional<RankCriterion> parse_criterion(std::string_view text);

struct CandidateSource {
    std::size_t subtree = 0;
    std::size_t seed = 0;
    std::size_t node = 0;
};

struct MotifCandidate {
    std::vector<std::size_t> portion_ids;  // ascending
    MotifScore score;
    CandidateSource source;
};

struct DiscoveredMotif {
    MotifCandidate candidate;
    double variance = 0.0;
    std::size_t rank_hadj = 0;
    std::size_t rank_cardinality = 0;
    std::size_t rank_sum = 0;
    std::size_t rank_variance = 0;
    std::size_t final_rank = 0;
};

// Nodes of `subtree` with at least n_min leaves whose children both have fewer.
std::vector<std::size_t> find_seeds(const Dendrogram& tree, const SubTree& subtree,
                                    std::size_t n_min);

// The seed and its ancestors inside the sub-tree that are not shared with any
// other seed, ordered from the seed upwards (increasing cardinality).
std::vector<std::size_t> family(const Dendrogram& tree, std::size_t seed, const SubTree& subtree,
                                const std::vector<std::size_t>& all_seeds);

struct FamilyMember {
    std::size_t node = 0;
    std::size_t cardinality = 0;
    double h_adjusted = 0.0;
};

// Index into `members` (ordered by increasing cardinality) of the recommended
// representative: the node before the largest jump when scores strictly
// increase along the family, the minimum score otherwise.
std::size_t select_representative(const std::vector<FamilyMember>& members);

MotifCandidate recommend(const Dendrogram& tree, const std::vector<std::size_t>& family_nodes,
                         const PortionSet& portions, std::size_t subtree_id, std::size_t seed);

std::vector<MotifCandidate> collect_candidates(const Dendrogram& tree, const SubTreeForest& forest,
                                               const PortionSet& portions, std::size_t n_min,
                                               unsigned threads = 1);

// Population variance over the grid of the pointwise mean of the portions.
double motif_variance(const MotifCandidate& candidate, const PortionSet& portions);

// Competition ranks (ties share the lowest rank) of `keys`, ascending.
std::vector<std::size_t> competition_ranks(const std::vector<double>& keys);

std::vector<DiscoveredMotif> post_process(const std::vector<MotifCandidate>& candidates,
                                          RankCriterion criterion, const PortionSet& portions);

} // namespace funbialign
