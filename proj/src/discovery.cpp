#include "funbialign/discovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "funbialign/parallel.hpp"

namespace funbialign {

std::string_view criterion_name(RankCriterion c) {
    switch (c) {
        case RankCriterion::HAdj: return "hadj";
        case RankCriterion::RankSum: return "rank-sum";
        case RankCriterion::Variance: return "variance";
    }
    return "hadj";
}

std::optional<RankCriterion> parse_criterion(std::string_view text) {
    if (text == "hadj") return RankCriterion::HAdj;
    if (text == "rank-sum") return RankCriterion::RankSum;
    if (text == "variance") return RankCriterion::Variance;
    return std::nullopt;
}

namespace {

bool in_subtree(const Dendrogram& tree, std::size_t node, std::size_t root) {
    for (std::size_t x = node; x != Dendrogram::kNoParent; x = tree.parent(x)) {
        if (x == root) return true;
        if (x > root) return false;
    }
    return false;
}

std::vector<std::size_t> subtree_nodes(const Dendrogram& tree, const SubTree& subtree) {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{subtree.root};
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        out.push_back(x);
        if (!tree.is_leaf(x)) {
            stack.push_back(tree.merge_of(x).left);
            stack.push_back(tree.merge_of(x).right);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

MotifScore score_of(const std::vector<std::size_t>& leaves, const PortionSet& portions) {
    std::vector<std::span<const double>> views;
    views.reserve(leaves.size());
    for (std::size_t leaf : leaves) views.push_back(portions.values(leaf));
    return fmsr_adjusted(PortionViews(views));
}

} // namespace

std::vector<std::size_t> find_seeds(const Dendrogram& tree, const SubTree& subtree,
                                    std::size_t n_min) {
    std::vector<std::size_t> seeds;
    if (tree.leaf_count_under(subtree.root) < n_min) return seeds;
    for (std::size_t node : subtree_nodes(tree, subtree)) {
        if (tree.is_leaf(node) || tree.leaf_count_under(node) < n_min) continue;
        const Merge& m = tree.merge_of(node);
        if (tree.leaf_count_under(m.left) < n_min && tree.leaf_count_under(m.right) < n_min) {
            seeds.push_back(node);
        }
    }
    return seeds;
}

std::vector<std::size_t> family(const Dendrogram& tree, std::size_t seed, const SubTree& subtree,
                                const std::vector<std::size_t>& all_seeds) {
    std::vector<std::size_t> out{seed};
    std::size_t x = seed;
    while (x != subtree.root) {
        const std::size_t parent = tree.parent(x);
        if (parent == Dendrogram::kNoParent) break;
        const Merge& m = tree.merge_of(parent);
        const std::size_t sibling = m.left == x ? m.right : m.left;
        // An ancestor is shared as soon as the other branch holds a seed.
        const bool shared = std::any_of(all_seeds.begin(), all_seeds.end(), [&](std::size_t s) {
            return s != seed && in_subtree(tree, s, sibling);
        });
        if (shared) break;
        out.push_back(parent);
        x = parent;
    }
    return out;
}

std::size_t select_representative(const std::vector<FamilyMember>& members) {
    if (members.size() <= 1) return 0;
    bool increasing = true;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (!(members[i].h_adjusted > members[i - 1].h_adjusted)) {
            increasing = false;
            break;
        }
    }
    if (increasing) {
        std::size_t elbow = 0;
        double largest = members[1].h_adjusted - members[0].h_adjusted;
        for (std::size_t i = 1; i + 1 < members.size(); ++i) {
            const double gap = members[i + 1].h_adjusted - members[i].h_adjusted;
            if (gap > largest) {
                largest = gap;
                elbow = i;
            }
        }
        return elbow;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        const auto& c = members[i];
        const auto& b = members[best];
        if (c.h_adjusted < b.h_adjusted ||
            (c.h_adjusted == b.h_adjusted &&
             (c.cardinality < b.cardinality ||
              (c.cardinality == b.cardinality && c.node < b.node)))) {
            best = i;
        }
    }
    return best;
}

MotifCandidate recommend(const Dendrogram& tree, const std::vector<std::size_t>& family_nodes,
                         const PortionSet& portions, std::size_t subtree_id, std::size_t seed) {
    std::vector<FamilyMember> members;
    std::vector<MotifScore> scores;
    members.reserve(family_nodes.size());
    for (std::size_t node : family_nodes) {
        const auto leaves = tree.leaves_under(node);
        scores.push_back(score_of(leaves, portions));
        members.push_back({node, leaves.size(), scores.back().h_adjusted});
    }
    const std::size_t pick = select_representative(members);

    MotifCandidate c;
    c.portion_ids = tree.leaves_under(members[pick].node);
    c.score = scores[pick];
    c.source = {subtree_id, seed, members[pick].node};
    return c;
}

std::vector<MotifCandidate> collect_candidates(const Dendrogram& tree, const SubTreeForest& forest,
                                               const PortionSet& portions, std::size_t n_min,
                                               unsigned threads) {
    struct Job {
        std::size_t subtree;
        std::size_t seed;
        std::vector<std::size_t> family;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < forest.subtrees.size(); ++s) {
        const auto& st = forest.subtrees[s];
        const auto seeds = find_seeds(tree, st, n_min);
        for (std::size_t seed : seeds) jobs.push_back({s, seed, family(tree, seed, st, seeds)});
    }
    std::vector<MotifCandidate> out(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        out[j] = recommend(tree, jobs[j].family, portions, jobs[j].subtree, jobs[j].seed);
    });
    return out;
}

double motif_variance(const MotifCandidate& candidate, const PortionSet& portions) {
    const std::size_t len = portions.length_points();
    std::vector<double> mean(len, 0.0);
    for (std::size_t id : candidate.portion_ids) {
        const auto v = portions.values(id);
        for (std::size_t t = 0; t < len; ++t) mean[t] += v[t];
    }
    const double n = static_cast<double>(candidate.portion_ids.size());
    for (auto& m : mean) m /= n;
    const double centre = std::accumulate(mean.begin(), mean.end(), 0.0) / static_cast<double>(len);
    double ss = 0.0;
    for (double m : mean) ss += (m - centre) * (m - centre);
    return ss / static_cast<double>(len);
}

std::vector<std::size_t> competition_ranks(const std::vector<double>& keys) {
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<std::size_t> ranks(keys.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (pos > 0 && keys[order[pos]] == keys[order[pos - 1]]) {
            ranks[order[pos]] = ranks[order[pos - 1]];
        } else {
            ranks[order[pos]] = pos + 1;
        }
    }
    return ranks;
}

std::vector<DiscoveredMotif> post_process(const std::vector<MotifCandidate>& candidates,
                                          RankCriterion criterion, const PortionSet& portions) {
    const std::size_t n = candidates.size();
    std::vector<DiscoveredMotif> all(n);
    std::vector<double> hadj(n), neg_card(n), neg_var(n);
    for (std::size_t i = 0; i < n; ++i) {
        all[i].candidate = candidates[i];
        all[i].variance = motif_variance(candidates[i], portions);
        hadj[i] = candidates[i].score.h_adjusted;
        neg_card[i] = -static_cast<double>(candidates[i].portion_ids.size());
        neg_var[i] = -all[i].variance;
    }
    const auto r_hadj = competition_ranks(hadj);
    const auto r_card = competition_ranks(neg_card);
    const auto r_var = competition_ranks(neg_var);
    for (std::size_t i = 0; i < n; ++i) {
        all[i].rank_hadj = r_hadj[i];
        all[i].rank_cardinality = r_card[i];
        all[i].rank_sum = r_hadj[i] + r_card[i];
        all[i].rank_variance = r_var[i];
    }

    auto key = [&](const DiscoveredMotif& m) {
        switch (criterion) {
            case RankCriterion::HAdj: return m.rank_hadj;
            case RankCriterion::RankSum: return m.rank_sum;
            case RankCriterion::Variance: return m.rank_variance;
        }
        return m.rank_hadj;
    };
    std::sort(all.begin(), all.end(), [&](const DiscoveredMotif& a, const DiscoveredMotif& b) {
        if (key(a) != key(b)) return key(a) < key(b);
        return a.candidate.source.node < b.candidate.source.node;
    });

    // Retained starts per curve; a portion is covered when some retained start
    // on its curve lies within the acolyte reach (distance 0 is identity).
    const std::size_t reach = acolyte_reach(portions.length_points());
    std::map<std::size_t, std::set<std::size_t>> retained_starts;
    auto covered = [&](const PortionRef& p) {
        auto it = retained_starts.find(p.curve_index);
        if (it == retained_starts.end()) return false;
        const auto& starts = it->second;
        auto hit = starts.lower_bound(p.start > reach ? p.start - reach : 0);
        return hit != starts.end() && *hit <= p.start + reach;
    };

    std::vector<DiscoveredMotif> kept;
    for (auto& m : all) {
        const auto& ids = m.candidate.portion_ids;
        const bool redundant = !kept.empty() && std::all_of(ids.begin(), ids.end(), [&](std::size_t id) {
            return covered(portions[id]);
        });
        if (redundant) continue;
        for (std::size_t id : ids) retained_starts[portions[id].curve_index].insert(portions[id].start);
        m.final_rank = kept.size() + 1;
        kept.push_back(std::move(m));
    }
    return kept;
}

} // namespace funbialign
