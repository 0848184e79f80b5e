#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "aclsim/community.hpp"
#include "aclsim/graph.hpp"

namespace aclsim {

// (attribute index, value index) pairs common to both endpoints of edge e,
// ascending by attribute. e indexes g.edges().
std::vector<std::pair<std::uint16_t, std::uint16_t>> link_context(const AttributedGraph& g, std::size_t edge_index);
std::vector<std::pair<std::uint16_t, std::uint16_t>> link_context(const AttributedGraph& g, NodeId u, NodeId v);

// A cluster of edges plus the induced node count, as used by partition
// density. Edge ids index g.edges().
struct LinkCluster {
    std::vector<std::size_t> edges;
};

// Partition density of a partition of E:
// D = (2/M) * sum_c m_c * (m_c - (n_c - 1)) / ((n_c - 2)(n_c - 1)),
// clusters with n_c <= 2 contribute 0, per-cluster contributions clamped at 0.
// Throws when the clusters do not partition the edge set.
double partition_density(const AttributedGraph& g, const std::vector<LinkCluster>& clusters);

// Links in Context: single-linkage agglomeration of links, where two links
// sharing a node are comparable only if their contexts intersect (links with
// empty context only among themselves); similarity is the Jaccard index of
// the inclusive neighbor sets of the non-shared endpoints. The dendrogram is
// cut at the level of maximum partition density and each link cluster maps to
// the node set of its endpoints. Overlapping cover; isolated nodes appended
// as singletons.
CommunityCover links_in_context_communities(const AttributedGraph& g);

}  // namespace aclsim
