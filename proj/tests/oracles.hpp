#pragma once

// Test-only brute-force oracles, deliberately independent of the library
// implementations they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace aclsim::oracle {

// Enumerates all set partitions of {0..n-1} as restricted growth strings and
// calls visit(labels) for each; labels[i] is the block of element i.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> labels(n, 0);
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t max_used) {
        if (i == n) {
            visit(labels);
            return;
        }
        for (std::size_t b = 0; b <= max_used + 1 && b <= i; ++b) {
            labels[i] = b;
            go(i + 1, std::max(max_used, b));
        }
    };
    if (n == 0) return;
    labels[0] = 0;
    go(1, 0);
}

// Direct modularity evaluation from an edge list and block labels.
inline double modularity_of_labels(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                   const std::vector<std::size_t>& labels) {
    const double m = static_cast<double>(edges.size());
    std::vector<double> degree(n, 0.0);
    for (const auto& [u, v] : edges) {
        degree[u] += 1.0;
        degree[v] += 1.0;
    }
    const std::size_t blocks = n == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<double> intra(blocks, 0.0), total(blocks, 0.0);
    for (const auto& [u, v] : edges)
        if (labels[u] == labels[v]) intra[labels[u]] += 1.0;
    for (std::size_t i = 0; i < n; ++i) total[labels[i]] += degree[i];
    double q = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const double f = total[b] / (2.0 * m);
        q += intra[b] / m - f * f;
    }
    return q;
}

// Maximum modularity over all partitions (exponential; n <= 10 or so).
inline double max_modularity(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    double best = -1.0;
    for_each_partition(n, [&](const std::vector<std::size_t>& labels) {
        best = std::max(best, modularity_of_labels(n, edges, labels));
    });
    return best;
}

// Exact independent-cascade statistics by enumeration over all 2^|E|
// undirected activation patterns (valid because edge probabilities are
// symmetric: each undirected coin is revealed at most once per run).
// Returns P(node infected) per node; expected infected count is the sum.
inline std::vector<double> exact_infection_probabilities(
    std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    const std::vector<double>& edge_probability, const std::vector<std::uint32_t>& seeds) {
    std::vector<double> prob(n, 0.0);
    const std::size_t m = edges.size();
    std::vector<char> reachable(n);
    std::vector<std::uint32_t> stack;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double weight = 1.0;
        for (std::size_t e = 0; e < m; ++e)
            weight *= (mask >> e) & 1 ? edge_probability[e] : 1.0 - edge_probability[e];
        if (weight == 0.0) continue;
        std::fill(reachable.begin(), reachable.end(), 0);
        stack.assign(seeds.begin(), seeds.end());
        for (std::uint32_t s : seeds) reachable[s] = 1;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::size_t e = 0; e < m; ++e) {
                if (!((mask >> e) & 1)) continue;
                const auto [a, b] = edges[e];
                const std::uint32_t other = a == v ? b : (b == v ? a : v);
                if (other != v && !reachable[other]) {
                    reachable[other] = 1;
                    stack.push_back(other);
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (reachable[i]) prob[i] += weight;
    }
    return prob;
}

}  // namespace aclsim::oracle
