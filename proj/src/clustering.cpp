#include "funbialign/clustering.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "funbialign/errors.hpp"
#include "funbialign/parallel.hpp"
#include "funbialign/scoring.hpp"

namespace funbialign {

DissimilarityMatrix::DissimilarityMatrix(std::size_t size, std::vector<double> packed,
                                         double penalty, std::vector<PortionRef> portions)
    : size_(size), packed_(std::move(packed)), penalty_(penalty), portions_(std::move(portions)) {
    if (size_ < 2) throw Error(ErrorKind::SinglePortion, "clustering needs at least 2 portions");
    if (packed_.size() != size_ * (size_ - 1) / 2) {
        throw Error(ErrorKind::LengthMismatch, "packed matrix has " +
                                                   std::to_string(packed_.size()) +
                                                   " entries for " + std::to_string(size_) +
                                                   " portions");
    }
    if (portions_.size() != size_) {
        throw Error(ErrorKind::LengthMismatch, "matrix of size " + std::to_string(size_) +
                                                   " given " + std::to_string(portions_.size()) +
                                                   " portions");
    }
}

double DissimilarityMatrix::operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return packed_[packed_index(size_, i, j)];
}

DissimilarityMatrix build_matrix(const PortionSet& portions, unsigned threads) {
    const std::size_t n = portions.size();
    if (n < 2) throw Error(ErrorKind::SinglePortion, "clustering needs at least 2 portions");

    std::vector<std::span<const double>> views(n);
    for (std::size_t i = 0; i < n; ++i) views[i] = portions.values(i);

    std::vector<double> packed(n * (n - 1) / 2);
    std::vector<double> row_max(n, 0.0);
    parallel_for(n - 1, threads, [&](std::size_t i) {
        double* row = packed.data() + DissimilarityMatrix::packed_index(n, i, i + 1);
        double best = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dissimilarity(views[i], views[j]);
            row[j - i - 1] = d;
            best = std::max(best, d);
        }
        row_max[i] = best;
    });
    const double penalty = *std::max_element(row_max.begin(), row_max.end());

    // Acolytes of portion i are the next `reach` portions of the same curve.
    const std::size_t reach = acolyte_reach(portions.length_points());
    const auto& refs = portions.portions();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n && j <= i + reach; ++j) {
            if (are_acolytes(refs[i], refs[j])) {
                packed[DissimilarityMatrix::packed_index(n, i, j)] += penalty;
            }
        }
    }
    return DissimilarityMatrix(n, std::move(packed), penalty, refs);
}

Dendrogram::Dendrogram(std::size_t leaf_count, std::vector<Merge> merges)
    : leaf_count_(leaf_count), merges_(std::move(merges)) {
    if (leaf_count_ == 0 || merges_.size() + 1 != leaf_count_) {
        throw Error(ErrorKind::InconsistentTree,
                    std::to_string(merges_.size()) + " merges for " +
                        std::to_string(leaf_count_) + " leaves");
    }
    parents_.assign(node_count(), kNoParent);
    sizes_.assign(node_count(), 1);
    for (std::size_t k = 0; k < merges_.size(); ++k) {
        const std::size_t node = leaf_count_ + k;
        for (std::size_t child : {merges_[k].left, merges_[k].right}) {
            if (child >= node || parents_[child] != kNoParent) {
                throw Error(ErrorKind::InconsistentTree,
                            "merge " + std::to_string(k) + " reuses node " + std::to_string(child));
            }
            parents_[child] = node;
        }
        sizes_[node] = sizes_[merges_[k].left] + sizes_[merges_[k].right];
    }
}

std::vector<std::size_t> Dendrogram::leaves_under(std::size_t node) const {
    std::vector<std::size_t> out;
    out.reserve(leaf_count_under(node));
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (is_leaf(x)) {
            out.push_back(x);
        } else {
            stack.push_back(merge_of(x).left);
            stack.push_back(merge_of(x).right);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Generic agglomeration with cached nearest neighbours. Each active cluster
// lives in the slot of its smallest leaf id, so the (row, nearest column) pair
// with the smallest distance and smallest indices is exactly the
// lexicographic tie-break on minimum leaf ids. Complete linkage only ever
// raises distances, so a cached neighbour stays valid unless it was one of the
// two merged clusters.
Dendrogram complete_linkage(const DissimilarityMatrix& matrix) {
    const std::size_t n = matrix.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::vector<double> dist = matrix.packed();
    auto at = [&](std::size_t i, std::size_t j) -> double& {
        if (i > j) std::swap(i, j);
        return dist[DissimilarityMatrix::packed_index(n, i, j)];
    };

    // Doubly linked list over active slots.
    std::vector<std::size_t> next(n), prev(n);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = i + 1 < n ? i + 1 : kNone;
        prev[i] = i > 0 ? i - 1 : kNone;
    }
    std::size_t head = 0;

    std::vector<std::size_t> node_of(n);
    for (std::size_t i = 0; i < n; ++i) node_of[i] = i;

    std::vector<std::size_t> nn(n, kNone);
    std::vector<double> nn_dist(n, kInf);
    auto refresh = [&](std::size_t i) {
        std::size_t best = kNone;
        double best_d = kInf;
        const double* row = dist.data() + (i + 1 < n ? DissimilarityMatrix::packed_index(n, i, i + 1) : 0);
        for (std::size_t j = next[i]; j != kNone; j = next[j]) {
            const double d = row[j - i - 1];
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        nn[i] = best;
        nn_dist[i] = best_d;
    };
    for (std::size_t i = 0; i < n; ++i) refresh(i);

    std::vector<Merge> merges;
    merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t a = kNone;
        double best = kInf;
        for (std::size_t i = head; i != kNone; i = next[i]) {
            if (nn[i] != kNone && (a == kNone || nn_dist[i] < best)) {
                best = nn_dist[i];
                a = i;
            }
        }
        const std::size_t b = nn[a];

        merges.push_back({node_of[a], node_of[b], best});
        node_of[a] = n + step;

        // Unlink b.
        if (prev[b] != kNone) next[prev[b]] = next[b];
        if (next[b] != kNone) prev[next[b]] = prev[b];
        if (head == b) head = next[b];

        for (std::size_t k = head; k != kNone; k = next[k]) {
            if (k == a) continue;
            double& dak = at(a, k);
            dak = std::max(dak, at(b, k));
        }
        for (std::size_t i = head; i != kNone; i = next[i]) {
            if (i == a || nn[i] == a || nn[i] == b) refresh(i);
        }
    }
    return Dendrogram(n, std::move(merges));
}

SubTreeForest cut_dendrogram(const Dendrogram& tree, const DissimilarityMatrix& matrix) {
    if (tree.leaf_count() != matrix.size()) {
        throw Error(ErrorKind::InconsistentTree,
                    "dendrogram has " + std::to_string(tree.leaf_count()) +
                        " leaves, matrix has " + std::to_string(matrix.size()));
    }
    const double threshold = matrix.penalty();
    auto kept = [&](std::size_t node) { return tree.height(node) <= threshold; };

    SubTreeForest forest;
    for (std::size_t node = 0; node < tree.node_count(); ++node) {
        if (!kept(node)) continue;
        const std::size_t parent = tree.parent(node);
        if (parent != Dendrogram::kNoParent && kept(parent)) continue;
        forest.subtrees.push_back({node, tree.leaves_under(node)});
    }
    std::sort(forest.subtrees.begin(), forest.subtrees.end(),
              [](const SubTree& x, const SubTree& y) { return x.leaves.front() < y.leaves.front(); });

    // Acolyte-free check: within one curve, the closest pair of starts is adjacent
    // after sorting.
    const auto& refs = matrix.portions();
    for (std::size_t s = 0; s < forest.subtrees.size(); ++s) {
        std::map<std::size_t, std::vector<std::size_t>> by_curve;
        for (std::size_t leaf : forest.subtrees[s].leaves) by_curve[refs[leaf].curve_index].push_back(leaf);
        for (auto& [curve, leaves] : by_curve) {
            std::sort(leaves.begin(), leaves.end(), [&](std::size_t x, std::size_t y) {
                return refs[x].start < refs[y].start;
            });
            for (std::size_t k = 1; k < leaves.size(); ++k) {
                if (are_acolytes(refs[leaves[k - 1]], refs[leaves[k]]) ||
                    refs[leaves[k - 1]] == refs[leaves[k]]) {
                    throw Error(ErrorKind::InconsistentTree,
                                "sub-tree " + std::to_string(s) + " holds acolytes " +
                                    std::to_string(leaves[k - 1]) + " and " +
                                    std::to_string(leaves[k]));
                }
            }
        }
    }
    return forest;
}

} // namespace funbialign
