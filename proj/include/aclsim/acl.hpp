#pragma once

#include <string>
#include <vector>

#include "aclsim/community.hpp"
#include "aclsim/graph.hpp"

namespace aclsim {

// The n highest-degree nodes holding (attribute, value); ties by ascending
// node id. Throws when fewer than n nodes match, reporting the shortfall.
std::vector<NodeId> select_untrusted(const AttributedGraph& g, const std::string& attribute,
                                     const std::string& value, std::size_t n);

// All nodes holding (attribute, value), ascending.
std::vector<NodeId> nodes_with_value(const AttributedGraph& g, const std::string& attribute,
                                     const std::string& value);

// The cluster with the largest untrusted intersection; ties broken by smaller
// cluster size, then ascending minimum node id. Throws "no candidate
// community" when nothing intersects.
std::vector<NodeId> best_fit_cluster(const CommunityCover& cover, const std::vector<NodeId>& untrusted);

struct AclScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// precision = |acl ∩ GT| / |acl|, recall = |acl ∩ GT| / |GT|,
// f1 = harmonic mean (0 when both are 0). Inputs must be non-empty.
AclScores evaluate_acl(const std::vector<NodeId>& acl, const std::vector<NodeId>& ground_truth);

struct AclPrediction {
    Method method = Method::LE;
    std::vector<NodeId> untrusted_seeds;
    std::vector<NodeId> acl;
    std::vector<NodeId> ground_truth;
    AclScores scores;
    std::size_t cluster_count = 0;
};

// Full pipeline for one cover: select seeds' best-fit cluster and score it
// against all holders of the untrusted value.
AclPrediction predict_acl(const AttributedGraph& g, const CommunityCover& cover,
                          const std::string& attribute, const std::string& value, std::size_t n);

std::string acl_to_json(const AclPrediction& p);

}  // namespace aclsim
