#pragma once

#include <string>
#include <vector>

#include "aclsim/graph.hpp"

namespace aclsim {

enum class Method { MC, LE, LiC };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// A set of node clusters covering V. Partitions (MC, LE) are pairwise
// disjoint; LiC covers may overlap. Clusters are sorted by (size desc,
// min node id asc), members ascending.
struct CommunityCover {
    Method method = Method::MC;
    bool overlapping = false;
    std::vector<std::vector<NodeId>> clusters;
};

// Throws std::invalid_argument when the cover is not a valid (dis)cover of g.
void validate_cover(const AttributedGraph& g, const CommunityCover& cover);

// Sorts clusters into the canonical export order.
void canonicalize_cover(CommunityCover& cover);

std::string cover_to_json(const CommunityCover& cover);
CommunityCover cover_from_json(const std::string& text);

// Newman modularity of a disjoint partition. Throws on overlapping covers and
// on graphs without edges.
double modularity(const AttributedGraph& g, const CommunityCover& partition);

// Greedy multilevel modularity optimization (node sweeps in ascending id,
// aggregation rounds until no gain > 1e-10, resolution 1).
CommunityCover multilevel_communities(const AttributedGraph& g);

// Recursive spectral bisection of the modularity matrix; power iteration with
// tolerance 1e-10 and at most 10,000 iterations per split, deterministic
// start vector. Connected components are processed independently.
CommunityCover leading_eigenvector_communities(const AttributedGraph& g);

}  // namespace aclsim
