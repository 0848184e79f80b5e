#include "aclsim/acl.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace aclsim {

using Json = nlohmann::ordered_json;

std::vector<NodeId> nodes_with_value(const AttributedGraph& g, const std::string& attribute,
                                     const std::string& value) {
    const std::size_t a = g.schema().attribute_index(attribute);
    const std::uint16_t v = static_cast<std::uint16_t>(g.schema().value_index(a, value));
    std::vector<NodeId> out;
    for (NodeId i = 0; i < g.node_count(); ++i)
        if (g.profile(i).values[a] == v) out.push_back(i);
    return out;
}

std::vector<NodeId> select_untrusted(const AttributedGraph& g, const std::string& attribute,
                                     const std::string& value, std::size_t n) {
    if (n < 1) throw std::invalid_argument("select_untrusted: n must be >= 1");
    std::vector<NodeId> holders = nodes_with_value(g, attribute, value);
    if (holders.size() < n)
        throw std::invalid_argument("select_untrusted: need " + std::to_string(n) + " nodes with " +
                                    attribute + "=" + value + ", only " + std::to_string(holders.size()) +
                                    " available");
    std::sort(holders.begin(), holders.end(), [&g](NodeId a, NodeId b) {
        const auto da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        return a < b;
    });
    holders.resize(n);
    std::sort(holders.begin(), holders.end());
    return holders;
}

std::vector<NodeId> best_fit_cluster(const CommunityCover& cover, const std::vector<NodeId>& untrusted) {
    if (cover.clusters.empty()) throw std::invalid_argument("best_fit_cluster: empty cover");
    std::vector<NodeId> sorted_untrusted = untrusted;
    std::sort(sorted_untrusted.begin(), sorted_untrusted.end());

    const std::vector<NodeId>* best = nullptr;
    std::size_t best_hits = 0;
    for (const auto& cluster : cover.clusters) {
        std::size_t hits = 0;
        for (NodeId v : cluster)
            if (std::binary_search(sorted_untrusted.begin(), sorted_untrusted.end(), v)) ++hits;
        if (hits == 0) continue;
        if (best == nullptr || hits > best_hits) {
            best = &cluster;
            best_hits = hits;
            continue;
        }
        if (hits == best_hits) {
            if (cluster.size() < best->size() ||
                (cluster.size() == best->size() &&
                 *std::min_element(cluster.begin(), cluster.end()) <
                     *std::min_element(best->begin(), best->end()))) {
                best = &cluster;
            }
        }
    }
    if (best == nullptr) throw std::runtime_error("best_fit_cluster: no candidate community");
    std::vector<NodeId> acl = *best;
    std::sort(acl.begin(), acl.end());
    return acl;
}

AclScores evaluate_acl(const std::vector<NodeId>& acl, const std::vector<NodeId>& ground_truth) {
    if (acl.empty()) throw std::invalid_argument("evaluate_acl: empty acl");
    if (ground_truth.empty()) throw std::invalid_argument("evaluate_acl: empty ground truth");
    std::vector<NodeId> a = acl, gt = ground_truth;
    std::sort(a.begin(), a.end());
    std::sort(gt.begin(), gt.end());
    std::size_t hit = 0;
    for (NodeId v : a)
        if (std::binary_search(gt.begin(), gt.end(), v)) ++hit;
    AclScores s;
    s.precision = static_cast<double>(hit) / static_cast<double>(a.size());
    s.recall = static_cast<double>(hit) / static_cast<double>(gt.size());
    s.f1 = (s.precision + s.recall) > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    return s;
}

AclPrediction predict_acl(const AttributedGraph& g, const CommunityCover& cover,
                          const std::string& attribute, const std::string& value, std::size_t n) {
    AclPrediction p;
    p.method = cover.method;
    p.untrusted_seeds = select_untrusted(g, attribute, value, n);
    p.acl = best_fit_cluster(cover, p.untrusted_seeds);
    p.ground_truth = nodes_with_value(g, attribute, value);
    p.scores = evaluate_acl(p.acl, p.ground_truth);
    p.cluster_count = cover.clusters.size();
    return p;
}

std::string acl_to_json(const AclPrediction& p) {
    Json doc;
    doc["method"] = method_name(p.method);
    doc["untrustedSeeds"] = p.untrusted_seeds;
    doc["acl"] = p.acl;
    doc["groundTruth"] = p.ground_truth;
    doc["precision"] = p.scores.precision;
    doc["recall"] = p.scores.recall;
    doc["f1"] = p.scores.f1;
    doc["aclSize"] = p.acl.size();
    doc["clusterCount"] = p.cluster_count;
    return doc.dump(2) + "\n";
}

}  // namespace aclsim
