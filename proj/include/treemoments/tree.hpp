#pragma once

#include "treemoments/numeric.hpp"
#include "treemoments/toll.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace treemoments {

constexpr unsigned kDefaultOracleBound = 12;

// Immutable rooted binary tree stored as a flat node array in preorder.
// Children are node indices or kNone.
class BinaryTree {
public:
    static constexpr std::int32_t kNone = -1;

    struct Node {
        std::int32_t left = kNone;
        std::int32_t right = kNone;
        std::uint32_t size = 1;
    };

    BinaryTree() = default;

    // Builds from child links; root is kNone for the empty tree.
    // Throws ArgumentError unless the links form a tree containing every node.
    static BinaryTree from_links(const std::vector<std::pair<std::int32_t, std::int32_t>>& children,
                                 std::int32_t root);

    // Preorder sequence of left-subtree sizes, one entry per node.
    static BinaryTree from_left_sizes(const std::vector<std::uint32_t>& left_sizes);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    std::int32_t root() const { return nodes_.empty() ? kNone : 0; }
    const Node& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    std::uint32_t subtree_size(std::int32_t i) const { return i == kNone ? 0 : node(i).size; }
    std::vector<std::uint32_t> left_sizes() const;

    bool operator==(const BinaryTree& o) const { return left_sizes() == o.left_sizes(); }

private:
    std::vector<Node> nodes_;
};

// Calls visit once for each binary tree on n nodes, ordered by left
// subtree size ascending (recursively; left subtree varies slowest).
void enumerate_trees(unsigned n, const std::function<void(const BinaryTree&)>& visit,
                     unsigned bound = kDefaultOracleBound);
std::vector<BinaryTree> enumerate_trees(unsigned n, unsigned bound = kDefaultOracleBound);

// Uniform over the catalan(n) shapes: grows a random full binary tree with
// n internal nodes by leaf insertion and keeps the internal nodes.
BinaryTree sample_uniform(std::size_t n, std::uint64_t seed);

class CounterRng;
BinaryTree sample_uniform(std::size_t n, CounterRng& rng);

// Sum over nodes v of b_{size(v)}.
double evaluate_functional(const BinaryTree& t, const TollSpec& toll);
// Same with a precomputed table b_0..b_m, m >= |t|.
double evaluate_functional(const BinaryTree& t, const std::vector<double>& toll_table);

template <class T>
T evaluate_functional_exact(const BinaryTree& t, const TollSpec& toll) {
    T s = 0;
    for (const auto& nd : t.nodes()) s += toll.value<T>(nd.size);
    return s;
}

}  // namespace treemoments
