#include "treemoments/tree.hpp"

#include "treemoments/errors.hpp"
#include "treemoments/rng.hpp"

#include <string>

namespace treemoments {

BinaryTree BinaryTree::from_links(const std::vector<std::pair<std::int32_t, std::int32_t>>& children,
                                  std::int32_t root) {
    BinaryTree t;
    const auto n = static_cast<std::int32_t>(children.size());
    if (root == kNone) {
        if (n != 0) throw ArgumentError("empty root but nodes present");
        return t;
    }
    if (root < 0 || root >= n) throw ArgumentError("root index out of range");

    // Preorder relabelling; child slots are patched once the child is placed.
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    t.nodes_.reserve(static_cast<std::size_t>(n));
    struct Item {
        std::int32_t old;
        std::int32_t parent;
        bool is_left;
    };
    std::vector<Item> stack{{root, kNone, false}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.old < 0 || it.old >= n) throw ArgumentError("child index out of range");
        if (seen[static_cast<std::size_t>(it.old)]) throw ArgumentError("node reachable twice");
        seen[static_cast<std::size_t>(it.old)] = 1;
        auto idx = static_cast<std::int32_t>(t.nodes_.size());
        t.nodes_.push_back(Node{});
        if (it.parent != kNone) {
            auto& p = t.nodes_[static_cast<std::size_t>(it.parent)];
            (it.is_left ? p.left : p.right) = idx;
        }
        const auto& ch = children[static_cast<std::size_t>(it.old)];
        if (ch.second != kNone) stack.push_back({ch.second, idx, false});
        if (ch.first != kNone) stack.push_back({ch.first, idx, true});
    }
    if (static_cast<std::int32_t>(t.nodes_.size()) != n) throw ArgumentError("unreachable nodes");
    // In preorder every child has a larger index than its parent.
    for (std::size_t i = t.nodes_.size(); i-- > 0;) {
        auto& nd = t.nodes_[i];
        nd.size = 1 + t.subtree_size(nd.left) + t.subtree_size(nd.right);
    }
    return t;
}

BinaryTree BinaryTree::from_left_sizes(const std::vector<std::uint32_t>& left_sizes) {
    BinaryTree t;
    const std::size_t n = left_sizes.size();
    if (n == 0) return t;
    t.nodes_.resize(n);
    t.nodes_[0].size = static_cast<std::uint32_t>(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& nd = t.nodes_[i];
        std::uint32_t l = left_sizes[i];
        if (l >= nd.size) throw ArgumentError("left subtree size too large at node " + std::to_string(i));
        std::uint32_t r = nd.size - 1 - l;
        if (l > 0) {
            nd.left = static_cast<std::int32_t>(i + 1);
            t.nodes_[i + 1].size = l;
        }
        if (r > 0) {
            std::size_t ri = i + 1 + l;
            if (ri >= n) throw ArgumentError("inconsistent left-size sequence");
            nd.right = static_cast<std::int32_t>(ri);
            t.nodes_[ri].size = r;
        }
    }
    return t;
}

std::vector<std::uint32_t> BinaryTree::left_sizes() const {
    std::vector<std::uint32_t> v(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) v[i] = subtree_size(nodes_[i].left);
    return v;
}

namespace {

void fill_shapes(std::vector<std::uint32_t>& buf, std::size_t pos, std::uint32_t n,
                 const std::function<void(std::size_t)>& done) {
    if (n == 0) {
        done(pos);
        return;
    }
    for (std::uint32_t l = 0; l < n; ++l) {
        buf[pos] = l;
        fill_shapes(buf, pos + 1, l, [&](std::size_t p) { fill_shapes(buf, p, n - 1 - l, done); });
    }
}

void check_bound(unsigned n, unsigned bound) {
    if (n > bound)
        throw OracleSizeError("enumeration of n=" + std::to_string(n) + " exceeds oracle bound " +
                              std::to_string(bound));
}

}  // namespace

void enumerate_trees(unsigned n, const std::function<void(const BinaryTree&)>& visit, unsigned bound) {
    check_bound(n, bound);
    std::vector<std::uint32_t> buf(n);
    fill_shapes(buf, 0, n, [&](std::size_t) { visit(BinaryTree::from_left_sizes(buf)); });
}

std::vector<BinaryTree> enumerate_trees(unsigned n, unsigned bound) {
    check_bound(n, bound);
    std::vector<BinaryTree> out;
    enumerate_trees(n, [&](const BinaryTree& t) { out.push_back(t); }, bound);
    return out;
}

BinaryTree sample_uniform(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    return sample_uniform(n, rng);
}

BinaryTree sample_uniform(std::size_t n, CounterRng& rng) {
    if (n == 0) throw ArgumentError("sample_uniform needs n >= 1");
    const std::size_t total = 2 * n + 1;
    std::vector<std::int32_t> left(total, BinaryTree::kNone), right(total, BinaryTree::kNone),
        parent(total, BinaryTree::kNone);
    std::int32_t root = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = 2 * i + 1;
        const std::uint64_t r = rng.below(2 * m);
        const auto x = static_cast<std::int32_t>(r >> 1);
        const auto inner = static_cast<std::int32_t>(m);
        const auto leaf = static_cast<std::int32_t>(m + 1);
        const std::int32_t p = parent[static_cast<std::size_t>(x)];
        parent[static_cast<std::size_t>(inner)] = p;
        if (p == BinaryTree::kNone)
            root = inner;
        else if (left[static_cast<std::size_t>(p)] == x)
            left[static_cast<std::size_t>(p)] = inner;
        else
            right[static_cast<std::size_t>(p)] = inner;
        if (r & 1) {
            left[static_cast<std::size_t>(inner)] = leaf;
            right[static_cast<std::size_t>(inner)] = x;
        } else {
            left[static_cast<std::size_t>(inner)] = x;
            right[static_cast<std::size_t>(inner)] = leaf;
        }
        parent[static_cast<std::size_t>(x)] = inner;
        parent[static_cast<std::size_t>(leaf)] = inner;
    }
    // Internal nodes are the odd indices 1,3,...,2n-1; leaves are dropped.
    auto internal_index = [](std::int32_t v) {
        return (v & 1) ? (v - 1) / 2 : BinaryTree::kNone;
    };
    std::vector<std::pair<std::int32_t, std::int32_t>> links(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t v = 2 * k + 1;
        links[k] = {internal_index(left[v]), internal_index(right[v])};
    }
    return BinaryTree::from_links(links, internal_index(root));
}

double evaluate_functional(const BinaryTree& t, const std::vector<double>& toll_table) {
    if (!t.empty() && toll_table.size() <= t.size())
        throw ArgumentError("toll table shorter than tree size");
    double s = 0;
    for (const auto& nd : t.nodes()) s += toll_table[nd.size];
    return s;
}

double evaluate_functional(const BinaryTree& t, const TollSpec& toll) {
    return evaluate_functional(t, toll.table_double(t.size()));
}

}  // namespace treemoments
