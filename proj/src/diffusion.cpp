#include "aclsim/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aclsim {

PrunedGraph::PrunedGraph(const AttributedGraph& base) : PrunedGraph(base, {}) {}

PrunedGraph::PrunedGraph(const AttributedGraph& base, const std::vector<NodeId>& removed)
    : base_(&base), alive_(base.node_count(), 1) {
    for (NodeId v : removed) {
        if (!base.has_node(v)) throw std::invalid_argument("PrunedGraph: unknown node " + std::to_string(v));
        alive_[v] = 0;
    }
    alive_count_ = 0;
    for (char a : alive_) alive_count_ += a;
    adjacency_.resize(base.node_count());
    for (NodeId v = 0; v < base.node_count(); ++v) {
        if (!alive_[v]) continue;
        for (NodeId w : base.neighbors(v))
            if (alive_[w]) adjacency_[v].push_back(w);
    }
}

std::span<const NodeId> PrunedGraph::neighbors(NodeId v) const {
    if (!alive(v)) throw std::invalid_argument("PrunedGraph: node " + std::to_string(v) + " not in graph");
    return adjacency_[v];
}

void validate_diffusion_config(const DiffusionConfig& cfg) {
    if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0))
        throw std::invalid_argument("diffusion: beta must lie in [0,1]");
    if (!(cfg.gatekeeper_removal_fraction >= 0.0 && cfg.gatekeeper_removal_fraction <= 1.0))
        throw std::invalid_argument("diffusion: removal fraction must lie in [0,1]");
}

std::vector<NodeId> gatekeepers(const AttributedGraph& g, const std::vector<NodeId>& acl) {
    std::vector<char> in_acl(g.node_count(), 0);
    for (NodeId v : acl) {
        if (!g.has_node(v)) throw std::invalid_argument("gatekeepers: unknown node " + std::to_string(v));
        in_acl[v] = 1;
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (in_acl[v]) continue;
        for (NodeId w : g.neighbors(v)) {
            if (in_acl[w]) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

GatekeeperRemoval remove_top_gatekeepers(const AttributedGraph& g, const std::vector<NodeId>& acl,
                                         double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("remove_top_gatekeepers: fraction must lie in [0,1]");
    std::vector<NodeId> keepers = gatekeepers(g, acl);
    const std::size_t total = keepers.size();
    // Round half away from zero; degrees measured in the original graph.
    const std::size_t count = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(total)));
    std::sort(keepers.begin(), keepers.end(), [&g](NodeId a, NodeId b) {
        const auto da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        return a < b;
    });
    keepers.resize(std::min(count, total));
    std::sort(keepers.begin(), keepers.end());
    return GatekeeperRemoval{PrunedGraph(g, keepers), std::move(keepers), total};
}

std::vector<NodeId> select_seeds(const PrunedGraph& g, const std::vector<NodeId>& acl,
                                 std::size_t s, Rng& rng) {
    std::vector<char> excluded(g.base().node_count(), 0);
    for (NodeId v : acl)
        if (v < excluded.size()) excluded[v] = 1;
    std::vector<NodeId> eligible;
    for (NodeId v = 0; v < g.base().node_count(); ++v)
        if (g.alive(v) && !excluded[v]) eligible.push_back(v);
    if (eligible.size() < s)
        throw std::invalid_argument("select_seeds: requested " + std::to_string(s) + " seeds, only " +
                                    std::to_string(eligible.size()) + " eligible nodes");
    // Partial Fisher-Yates over the ascending eligible list.
    std::vector<NodeId> seeds;
    seeds.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
        seeds.push_back(eligible[i]);
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

double edge_infection_probability(const PrunedGraph& g, NodeId v, NodeId u, double beta) {
    const auto adj = g.neighbors(v);
    if (!std::binary_search(adj.begin(), adj.end(), u))
        throw std::invalid_argument("edge_infection_probability: (" + std::to_string(v) + "," +
                                    std::to_string(u) + ") is not an edge");
    const double shared = static_cast<double>(g.base().shared_attribute_count(v, u));
    const double total = static_cast<double>(g.base().schema().attribute_count());
    return shared / total * beta;
}

CascadeResult run_independent_cascade(const PrunedGraph& g, const std::vector<NodeId>& seeds,
                                      double beta, Rng& rng) {
    CascadeResult result;
    const std::uint64_t run_key = rng.next_u64();
    const double attr_total = static_cast<double>(g.base().schema().attribute_count());

    std::vector<char> active(g.base().node_count(), 0);
    std::vector<NodeId> frontier;
    for (NodeId v : seeds) {
        if (!g.alive(v)) throw std::invalid_argument("run_independent_cascade: seed " + std::to_string(v) +
                                                     " not in graph");
        if (!active[v]) {
            active[v] = 1;
            frontier.push_back(v);
        }
    }
    std::sort(frontier.begin(), frontier.end());

    std::uint32_t step = 0;
    std::vector<NodeId> next;
    std::vector<char> pending(g.base().node_count(), 0);
    while (!frontier.empty()) {
        ++step;
        next.clear();
        // Every node infected in the previous round attempts each neighbor
        // that was inactive at the start of this round, ascending (v, u).
        for (NodeId v : frontier) {
            for (NodeId u : g.neighbors(v)) {
                if (active[u]) continue;
                const double p = static_cast<double>(g.base().shared_attribute_count(v, u)) / attr_total * beta;
                const double draw = keyed_uniform(run_key, v, u);
                if (draw < p && !pending[u]) {
                    pending[u] = 1;
                    next.push_back(u);
                    result.trace.push_back({step, u, v});
                }
            }
        }
        for (NodeId u : next) {
            active[u] = 1;
            pending[u] = 0;
        }
        std::sort(next.begin(), next.end());
        frontier = next;
        if (next.empty()) --step;  // the last round infected nobody
    }
    result.rounds = step;
    for (NodeId v = 0; v < g.base().node_count(); ++v)
        if (active[v]) result.infected.push_back(v);
    return result;
}

DiffusionOutcome run_diffusion_trial(const AttributedGraph& g, const std::vector<NodeId>& acl,
                                     const DiffusionConfig& cfg) {
    validate_diffusion_config(cfg);
    if (acl.empty()) throw std::invalid_argument("run_diffusion_trial: empty acl");

    GatekeeperRemoval removal = remove_top_gatekeepers(g, acl, cfg.gatekeeper_removal_fraction);
    Rng seed_rng(derive_seed(cfg.rng_seed, {kStreamSeedSelection}));
    Rng cascade_rng(derive_seed(cfg.rng_seed, {kStreamCascade}));

    DiffusionOutcome outcome;
    outcome.removed_gatekeepers = removal.removed;
    outcome.gatekeeper_total = removal.gatekeeper_total;
    outcome.seeds = select_seeds(removal.graph, acl, cfg.seed_count, seed_rng);
    CascadeResult cascade = run_independent_cascade(removal.graph, outcome.seeds, cfg.beta, cascade_rng);
    outcome.trace = std::move(cascade.trace);
    outcome.infected = std::move(cascade.infected);
    outcome.rounds = cascade.rounds;

    std::vector<NodeId> sorted_acl = acl;
    std::sort(sorted_acl.begin(), sorted_acl.end());
    std::size_t hit = 0;
    for (NodeId v : outcome.infected)
        if (std::binary_search(sorted_acl.begin(), sorted_acl.end(), v)) ++hit;
    outcome.infected_acl_count = hit;
    outcome.infected_acl_fraction = static_cast<double>(hit) / static_cast<double>(sorted_acl.size());
    return outcome;
}

}  // namespace aclsim
