#pragma once

#include "treemoments/numeric.hpp"
#include "treemoments/toll.hpp"
#include "treemoments/tree.hpp"

#include <vector>

namespace oracle {

using namespace treemoments;

// E X_n^k, k = 0..K, by enumerating every tree on n nodes.
template <class T>
std::vector<T> brute_moments(const TollSpec& toll, unsigned n, unsigned K) {
    std::vector<T> sum(K + 1, T(0));
    std::size_t count = 0;
    enumerate_trees(n, [&](const BinaryTree& t) {
        const T x = evaluate_functional_exact<T>(t, toll);
        T p = 1;
        for (unsigned k = 0; k <= K; ++k) {
            sum[k] += p;
            p *= x;
        }
        ++count;
    });
    for (auto& s : sum) s /= T(count);
    return sum;
}

// Definition 1 applied literally: f(T) = f(L) + f(R) + b_|T|.
inline double recursive_functional(const BinaryTree& t, std::int32_t v, const TollSpec& toll, std::size_t& size) {
    if (v == BinaryTree::kNone) {
        size = 0;
        return 0;
    }
    std::size_t l = 0, r = 0;
    const double fl = recursive_functional(t, t.node(v).left, toll, l);
    const double fr = recursive_functional(t, t.node(v).right, toll, r);
    size = l + r + 1;
    return fl + fr + toll.value_double(size);
}

inline std::size_t depth_sum(const BinaryTree& t) {
    std::size_t total = 0;
    std::vector<std::pair<std::int32_t, std::size_t>> stack;
    if (!t.empty()) stack.push_back({t.root(), 0});
    while (!stack.empty()) {
        auto [v, d] = stack.back();
        stack.pop_back();
        total += d;
        if (t.node(v).left != BinaryTree::kNone) stack.push_back({t.node(v).left, d + 1});
        if (t.node(v).right != BinaryTree::kNone) stack.push_back({t.node(v).right, d + 1});
    }
    return total;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
