#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aclsim/graph.hpp"
#include "aclsim/rng.hpp"

namespace aclsim {

// View of a graph with some nodes removed. Original node ids are preserved;
// removed nodes simply stop existing (no neighbors, not in V). Nodes stranded
// by removal remain in V.
class PrunedGraph {
public:
    explicit PrunedGraph(const AttributedGraph& base);
    PrunedGraph(const AttributedGraph& base, const std::vector<NodeId>& removed);

    const AttributedGraph& base() const { return *base_; }
    bool alive(NodeId v) const { return v < alive_.size() && alive_[v] != 0; }
    std::size_t alive_count() const { return alive_count_; }
    std::span<const NodeId> neighbors(NodeId v) const;

private:
    const AttributedGraph* base_;
    std::vector<char> alive_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t alive_count_ = 0;
};

struct DiffusionConfig {
    double beta = 0.6;                       // maximum infection probability
    std::size_t seed_count = 75;             // s
    double gatekeeper_removal_fraction = 0;  // k as a fraction of |gatekeepers|
    std::uint64_t rng_seed = 0;
};

void validate_diffusion_config(const DiffusionConfig& cfg);

// Non-ACL nodes adjacent to at least one ACL member, ascending.
std::vector<NodeId> gatekeepers(const AttributedGraph& g, const std::vector<NodeId>& acl);

struct GatekeeperRemoval {
    PrunedGraph graph;
    std::vector<NodeId> removed;        // ascending
    std::size_t gatekeeper_total = 0;   // before removal
};

// Removes round(fraction * |gatekeepers|) highest-degree gatekeepers in one
// batch (degrees in the original graph, ties by ascending id; rounding half
// away from zero). The ACL itself is never touched.
GatekeeperRemoval remove_top_gatekeepers(const AttributedGraph& g, const std::vector<NodeId>& acl,
                                         double fraction);

// s nodes uniform without replacement from V(g') \ acl; throws with counts
// when not enough eligible nodes exist.
std::vector<NodeId> select_seeds(const PrunedGraph& g, const std::vector<NodeId>& acl,
                                 std::size_t s, Rng& rng);

// p_vu = shared_attribute_count(v,u) / attribute_count * beta. Throws when
// (v,u) is not an edge of the pruned graph.
double edge_infection_probability(const PrunedGraph& g, NodeId v, NodeId u, double beta);

struct TraceEntry {
    std::uint32_t step;  // >= 1; seeds are step 0 and not in the trace
    NodeId node;
    NodeId infector;
};

struct CascadeResult {
    std::vector<TraceEntry> trace;
    std::vector<NodeId> infected;  // ascending, includes seeds
    std::uint32_t rounds = 0;
};

// Synchronous independent cascade: at step t every node infected at t-1 makes
// one Bernoulli(p_vu) attempt per currently-inactive neighbor, attempts in
// ascending (v, u) order. Per-attempt uniforms are keyed on (run key, v, u)
// so the trace is deterministic given the rng state and monotone under
// coupled beta increases.
CascadeResult run_independent_cascade(const PrunedGraph& g, const std::vector<NodeId>& seeds,
                                      double beta, Rng& rng);

struct DiffusionOutcome {
    std::vector<NodeId> removed_gatekeepers;
    std::vector<NodeId> seeds;
    std::vector<TraceEntry> trace;
    std::vector<NodeId> infected;
    double infected_acl_fraction = 0.0;  // |infected ∩ acl| / |acl|, original ACL
    std::size_t infected_acl_count = 0;
    std::size_t gatekeeper_total = 0;
    std::uint32_t rounds = 0;
};

// One full trial: remove gatekeepers, draw seeds, run the cascade, score
// against the original ACL. seed_rng and cascade_rng are separate streams so
// the same seed set can be replayed under different cascade draws.
DiffusionOutcome run_diffusion_trial(const AttributedGraph& g, const std::vector<NodeId>& acl,
                                     const DiffusionConfig& cfg);

}  // namespace aclsim
