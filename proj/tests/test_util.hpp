#pragma once

#include <array>
#include <initializer_list>
#include <utility>
#include <vector>

#include "aclsim/graph.hpp"

namespace aclsim::testutil {

// Two-value single-attribute schema for structural tests.
inline AttributeSchema tiny_schema() {
    return AttributeSchema({{"color", {"red", "blue"}, {0.5, 0.5}}});
}

// n nodes with identical profiles under tiny_schema, plus the given edges.
inline AttributedGraph make_graph(std::size_t n,
                                  std::initializer_list<std::pair<NodeId, NodeId>> edges) {
    AttributedGraph g(tiny_schema());
    for (std::size_t i = 0; i < n; ++i) g.add_node(NodeProfile{{0}});
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

// Profiles are (gender, workplace, location) value indices into
// default_schema: gender {male,female}, workplace {Starbucks,Google,Ikea},
// location {Leeds,York}.
inline AttributedGraph make_attributed_graph(const std::vector<std::array<std::uint16_t, 3>>& profiles,
                                             std::initializer_list<std::pair<NodeId, NodeId>> edges) {
    AttributedGraph g(default_schema());
    for (const auto& p : profiles) g.add_node(NodeProfile{{p[0], p[1], p[2]}});
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

}  // namespace aclsim::testutil
