#include "aclsim/link_communities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aclsim {

std::vector<std::pair<std::uint16_t, std::uint16_t>> link_context(const AttributedGraph& g, NodeId u, NodeId v) {
    if (!g.has_edge(u, v))
        throw std::invalid_argument("link_context: no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    std::vector<std::pair<std::uint16_t, std::uint16_t>> context;
    const auto& pu = g.profile(u).values;
    const auto& pv = g.profile(v).values;
    for (std::size_t a = 0; a < pu.size(); ++a)
        if (pu[a] == pv[a]) context.emplace_back(static_cast<std::uint16_t>(a), pu[a]);
    return context;
}

std::vector<std::pair<std::uint16_t, std::uint16_t>> link_context(const AttributedGraph& g, std::size_t edge_index) {
    if (edge_index >= g.edge_count()) throw std::invalid_argument("link_context: edge index out of range");
    const auto& [u, v] = g.edges()[edge_index];
    return link_context(g, u, v);
}

double partition_density(const AttributedGraph& g, const std::vector<LinkCluster>& clusters) {
    const std::size_t m_total = g.edge_count();
    if (m_total == 0) throw std::invalid_argument("partition_density: graph has no edges");
    std::vector<char> covered(m_total, 0);
    for (const auto& c : clusters) {
        if (c.edges.empty()) throw std::invalid_argument("partition_density: empty cluster");
        for (std::size_t e : c.edges) {
            if (e >= m_total) throw std::invalid_argument("partition_density: edge index out of range");
            if (covered[e]) throw std::invalid_argument("partition_density: edge covered twice");
            covered[e] = 1;
        }
    }
    for (std::size_t e = 0; e < m_total; ++e)
        if (!covered[e]) throw std::invalid_argument("partition_density: edge " + std::to_string(e) + " not covered");

    double sum = 0.0;
    std::vector<NodeId> nodes;
    for (const auto& c : clusters) {
        nodes.clear();
        for (std::size_t e : c.edges) {
            nodes.push_back(g.edges()[e].first);
            nodes.push_back(g.edges()[e].second);
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        const double mc = static_cast<double>(c.edges.size());
        const double nc = static_cast<double>(nodes.size());
        if (nc <= 2.0) continue;
        const double contribution = mc * (mc - (nc - 1.0)) / ((nc - 2.0) * (nc - 1.0));
        sum += std::max(0.0, contribution);
    }
    return 2.0 / static_cast<double>(m_total) * sum;
}

namespace {

// Per-link shared-context slots: value index per attribute, -1 when the
// endpoints differ there.
using Context = std::vector<std::int16_t>;

bool comparable(const Context& a, const Context& b, bool a_empty, bool b_empty) {
    if (a_empty || b_empty) return a_empty && b_empty;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] >= 0 && a[i] == b[i]) return true;
    return false;
}

struct MergeCandidate {
    double similarity;
    std::uint32_t e1, e2;
};

// Union-find over links, tracking per-cluster edge counts, induced node sets
// and the running sum of clamped density contributions.
struct LinkClustering {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;
    std::vector<std::vector<NodeId>> nodes;  // per root, sorted
    std::vector<double> contribution;        // per root, clamped
    double contribution_sum = 0.0;

    explicit LinkClustering(const std::vector<std::pair<NodeId, NodeId>>& edges) {
        const std::size_t m = edges.size();
        parent.resize(m);
        std::iota(parent.begin(), parent.end(), 0);
        size.assign(m, 1);
        nodes.resize(m);
        contribution.assign(m, 0.0);
        for (std::size_t e = 0; e < m; ++e)
            nodes[e] = {std::min(edges[e].first, edges[e].second), std::max(edges[e].first, edges[e].second)};
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    static double density_contribution(double mc, double nc) {
        if (nc <= 2.0) return 0.0;
        return std::max(0.0, mc * (mc - (nc - 1.0)) / ((nc - 2.0) * (nc - 1.0)));
    }

    void merge(std::uint32_t a, std::uint32_t b) {
        std::uint32_t ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (size[ra] < size[rb] || (size[ra] == size[rb] && ra > rb)) std::swap(ra, rb);
        contribution_sum -= contribution[ra] + contribution[rb];
        std::vector<NodeId> merged;
        merged.reserve(nodes[ra].size() + nodes[rb].size());
        std::set_union(nodes[ra].begin(), nodes[ra].end(), nodes[rb].begin(), nodes[rb].end(),
                       std::back_inserter(merged));
        nodes[ra] = std::move(merged);
        nodes[rb].clear();
        size[ra] += size[rb];
        parent[rb] = ra;
        contribution[ra] = density_contribution(size[ra], static_cast<double>(nodes[ra].size()));
        contribution[rb] = 0.0;
        contribution_sum += contribution[ra];
    }
};

}  // namespace

CommunityCover links_in_context_communities(const AttributedGraph& g) {
    CommunityCover cover;
    cover.method = Method::LiC;
    cover.overlapping = true;
    if (g.node_count() == 0) return cover;

    // Canonical link ids: edges sorted by (low, high), independent of
    // insertion order.
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    const std::size_t m = edges.size();

    const std::size_t attrs = g.schema().attribute_count();
    std::vector<Context> contexts(m, Context(attrs, -1));
    std::vector<char> empty_context(m, 0);
    std::vector<std::vector<std::uint32_t>> incident(g.node_count());
    for (std::size_t e = 0; e < m; ++e) {
        const auto [u, v] = edges[e];
        const auto& pu = g.profile(u).values;
        const auto& pv = g.profile(v).values;
        bool any = false;
        for (std::size_t a = 0; a < attrs; ++a) {
            if (pu[a] == pv[a]) {
                contexts[e][a] = static_cast<std::int16_t>(pu[a]);
                any = true;
            }
        }
        empty_context[e] = any ? 0 : 1;
        incident[u].push_back(static_cast<std::uint32_t>(e));
        incident[v].push_back(static_cast<std::uint32_t>(e));
    }

    // Jaccard of inclusive neighbor sets of the non-shared endpoints.
    auto jaccard = [&g](NodeId i, NodeId j) {
        const auto ai = g.neighbors(i);
        const auto aj = g.neighbors(j);
        std::size_t common = 0, x = 0, y = 0;
        bool adjacent = false;
        while (x < ai.size() && y < aj.size()) {
            if (ai[x] == aj[y]) {
                ++common;
                ++x;
                ++y;
            } else if (ai[x] < aj[y]) {
                if (ai[x] == j) adjacent = true;
                ++x;
            } else {
                ++y;
            }
        }
        for (; x < ai.size(); ++x)
            if (ai[x] == j) adjacent = true;
        const std::size_t inter = common + (adjacent ? 2 : 0);
        const std::size_t uni = ai.size() + 1 + aj.size() + 1 - inter;
        return static_cast<double>(inter) / static_cast<double>(uni);
    };

    std::vector<MergeCandidate> candidates;
    for (NodeId k = 0; k < g.node_count(); ++k) {
        const auto& inc = incident[k];
        for (std::size_t x = 0; x + 1 < inc.size(); ++x) {
            for (std::size_t y = x + 1; y < inc.size(); ++y) {
                const std::uint32_t e1 = inc[x], e2 = inc[y];
                if (!comparable(contexts[e1], contexts[e2], empty_context[e1], empty_context[e2])) continue;
                const auto [a1, b1] = edges[e1];
                const auto [a2, b2] = edges[e2];
                const NodeId i = a1 == k ? b1 : a1;
                const NodeId j = a2 == k ? b2 : a2;
                candidates.push_back({jaccard(i, j), std::min(e1, e2), std::max(e1, e2)});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const MergeCandidate& a, const MergeCandidate& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        if (a.e1 != b.e1) return a.e1 < b.e1;
        return a.e2 < b.e2;
    });

    // Pass 1: walk dendrogram levels (one level per distinct similarity),
    // keep the level with maximum partition density. Level 0 is the
    // all-singletons cut with density 0.
    std::size_t best_level = 0;
    double best_density = 0.0;
    if (m > 0) {
        LinkClustering uf(edges);
        std::size_t level = 0;
        std::size_t pos = 0;
        while (pos < candidates.size()) {
            const double sim = candidates[pos].similarity;
            while (pos < candidates.size() && candidates[pos].similarity == sim) {
                uf.merge(candidates[pos].e1, candidates[pos].e2);
                ++pos;
            }
            ++level;
            const double density = 2.0 / static_cast<double>(m) * uf.contribution_sum;
            if (density > best_density) {
                best_density = density;
                best_level = level;
            }
        }
    }

    // Pass 2: rebuild the chosen cut and map link clusters to node sets.
    if (m > 0) {
        LinkClustering uf(edges);
        std::size_t level = 0;
        std::size_t pos = 0;
        while (pos < candidates.size() && level < best_level) {
            const double sim = candidates[pos].similarity;
            while (pos < candidates.size() && candidates[pos].similarity == sim) {
                uf.merge(candidates[pos].e1, candidates[pos].e2);
                ++pos;
            }
            ++level;
        }
        std::vector<char> is_root_emitted(m, 0);
        for (std::uint32_t e = 0; e < m; ++e) {
            const std::uint32_t r = uf.find(e);
            if (is_root_emitted[r]) continue;
            is_root_emitted[r] = 1;
            cover.clusters.push_back(uf.nodes[r]);
        }
    }

    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.degree(v) == 0) cover.clusters.push_back({v});

    canonicalize_cover(cover);
    return cover;
}

}  // namespace aclsim
