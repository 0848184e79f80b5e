#include "aclsim/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace aclsim {

void AttributedGraph::require_node(NodeId v, const char* who) const {
    if (!has_node(v))
        throw std::invalid_argument(std::string(who) + ": node not found: " + std::to_string(v));
}

NodeId AttributedGraph::add_node(NodeProfile profile) {
    if (profile.values.size() != schema_.attribute_count())
        throw std::invalid_argument("add_node: profile has " + std::to_string(profile.values.size()) +
                                    " values for " + std::to_string(schema_.attribute_count()) + " attributes");
    for (std::size_t a = 0; a < profile.values.size(); ++a) {
        if (profile.values[a] >= schema_.attribute(a).values.size())
            throw std::invalid_argument("add_node: value index out of range for attribute '" +
                                        schema_.attribute(a).name + "'");
    }
    profiles_.push_back(std::move(profile));
    adjacency_.emplace_back();
    return static_cast<NodeId>(profiles_.size() - 1);
}

void AttributedGraph::add_edge(NodeId u, NodeId v) {
    require_node(u, "add_edge");
    require_node(v, "add_edge");
    if (u == v) throw std::invalid_argument("add_edge: self-loop at node " + std::to_string(u));
    if (has_edge(u, v))
        throw std::invalid_argument("add_edge: duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    auto insert_sorted = [](std::vector<NodeId>& adj, NodeId w) {
        adj.insert(std::lower_bound(adj.begin(), adj.end(), w), w);
    };
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
}

bool AttributedGraph::has_edge(NodeId u, NodeId v) const {
    if (!has_node(u) || !has_node(v)) return false;
    const auto& adj = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    const NodeId target = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
    return std::binary_search(adj.begin(), adj.end(), target);
}

std::size_t AttributedGraph::degree(NodeId v) const {
    require_node(v, "degree");
    return adjacency_[v].size();
}

std::span<const NodeId> AttributedGraph::neighbors(NodeId v) const {
    require_node(v, "neighbors");
    return adjacency_[v];
}

const NodeProfile& AttributedGraph::profile(NodeId v) const {
    require_node(v, "profile");
    return profiles_[v];
}

std::size_t AttributedGraph::shared_attribute_count(NodeId u, NodeId v) const {
    require_node(u, "shared_attribute_count");
    require_node(v, "shared_attribute_count");
    const auto& pu = profiles_[u].values;
    const auto& pv = profiles_[v].values;
    std::size_t shared = 0;
    for (std::size_t a = 0; a < pu.size(); ++a)
        if (pu[a] == pv[a]) ++shared;
    return shared;
}

bool AttributedGraph::operator==(const AttributedGraph& other) const {
    if (!(schema_ == other.schema_)) return false;
    if (profiles_.size() != other.profiles_.size()) return false;
    for (std::size_t i = 0; i < profiles_.size(); ++i)
        if (!(profiles_[i] == other.profiles_[i])) return false;
    auto sorted_edges = [](const AttributedGraph& g) {
        auto e = g.edges_;
        std::sort(e.begin(), e.end());
        return e;
    };
    return sorted_edges(*this) == sorted_edges(other);
}

}  // namespace aclsim
