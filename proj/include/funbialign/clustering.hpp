#pragma once
// Acolyte-penalized dissimilarities, complete-linkage agglomeration and the
// cut that splits the dendrogram into acolyte-free sub-trees.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "funbialign/curves.hpp"

namespace funbialign {

// Symmetric matrix with zero diagonal, stored as the packed strict upper
// triangle (row-major, j > i).
class DissimilarityMatrix {
public:
    // `packed` holds n(n-1)/2 entries; `portions` gives the acolyte relation.
    DissimilarityMatrix(std::size_t size, std::vector<double> packed, double penalty,
                        std::vector<PortionRef> portions);

    std::size_t size() const noexcept { return size_; }
    double penalty() const noexcept { return penalty_; }
    double operator()(std::size_t i, std::size_t j) const;
    const std::vector<double>& packed() const noexcept { return packed_; }
    const std::vector<PortionRef>& portions() const noexcept { return portions_; }

    static std::size_t packed_index(std::size_t n, std::size_t i, std::size_t j) {
        // requires i < j
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    }

private:
    std::size_t size_;
    std::vector<double> packed_;
    double penalty_;
    std::vector<PortionRef> portions_;
};

DissimilarityMatrix build_matrix(const PortionSet& portions, unsigned threads = 1);

struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;

    friend bool operator==(const Merge&, const Merge&) = default;
};

// Leaves are nodes 0..n-1; merge k creates node n + k.
class Dendrogram {
public:
    Dendrogram(std::size_t leaf_count, std::vector<Merge> merges);

    std::size_t leaf_count() const noexcept { return leaf_count_; }
    std::size_t node_count() const noexcept { return leaf_count_ + merges_.size(); }
    const std::vector<Merge>& merges() const noexcept { return merges_; }
    bool is_leaf(std::size_t node) const noexcept { return node < leaf_count_; }
    const Merge& merge_of(std::size_t node) const { return merges_.at(node - leaf_count_); }
    double height(std::size_t node) const { return is_leaf(node) ? 0.0 : merge_of(node).height; }

    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
    std::size_t parent(std::size_t node) const { return parents_.at(node); }
    std::size_t leaf_count_under(std::size_t node) const { return sizes_.at(node); }
    std::size_t root() const { return node_count() - 1; }

    // Leaf ids below `node`, ascending.
    std::vector<std::size_t> leaves_under(std::size_t node) const;

private:
    std::size_t leaf_count_;
    std::vector<Merge> merges_;
    std::vector<std::size_t> parents_;
    std::vector<std::size_t> sizes_;
};

Dendrogram complete_linkage(const DissimilarityMatrix& matrix);

struct SubTree {
    std::size_t root = 0;
    std::vector<std::size_t> leaves;  // ascending
};

struct SubTreeForest {
    std::vector<SubTree> subtrees;  // ordered by smallest leaf id
};

// Drops every merge higher than the matrix penalty. Throws InconsistentTree if
// a surviving fragment still holds an acolyte pair.
SubTreeForest cut_dendrogram(const Dendrogram& tree, const DissimilarityMatrix& matrix);

} // namespace funbialign
