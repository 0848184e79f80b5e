#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aclsim/attribute_schema.hpp"

namespace aclsim {

using NodeId = std::uint32_t;

// Value index per schema attribute, in schema order.
struct NodeProfile {
    std::vector<std::uint16_t> values;

    bool operator==(const NodeProfile&) const = default;
};

// Undirected simple graph whose nodes carry one value per schema attribute.
// Node ids are dense, assigned in creation order; neighbor lists are kept
// sorted ascending so iteration order is deterministic. Mutation happens only
// during generation (single writer); afterwards the graph is read-only and
// safe to share across threads.
class AttributedGraph {
public:
    AttributedGraph() = default;
    explicit AttributedGraph(AttributeSchema schema) : schema_(std::move(schema)) {}

    NodeId add_node(NodeProfile profile);
    void add_edge(NodeId u, NodeId v);

    std::size_t node_count() const { return profiles_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_node(NodeId v) const { return v < profiles_.size(); }
    bool has_edge(NodeId u, NodeId v) const;

    std::size_t degree(NodeId v) const;
    std::span<const NodeId> neighbors(NodeId v) const;
    const NodeProfile& profile(NodeId v) const;
    const AttributeSchema& schema() const { return schema_; }

    // Edges normalized to (low, high), in insertion order.
    const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

    // Number of attributes on which u and v hold the same value.
    std::size_t shared_attribute_count(NodeId u, NodeId v) const;

    bool operator==(const AttributedGraph& other) const;

private:
    void require_node(NodeId v, const char* who) const;

    AttributeSchema schema_;
    std::vector<NodeProfile> profiles_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
};

}  // namespace aclsim
