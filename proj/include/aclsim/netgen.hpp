#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aclsim/graph.hpp"
#include "aclsim/rng.hpp"

namespace aclsim {

// Sparse openness override: lambda applied to the (valueA, valueB) pair, both
// directions. Value names may be qualified as "attribute:value".
struct OpennessOverride {
    std::string value_a;
    std::string value_b;
    double lambda = 1.0;
};

// Symmetric matrix of group-openness factors over all attribute values of a
// schema. Diagonal entries are 1, all entries lie in [0, 1].
class OpennessMatrix {
public:
    OpennessMatrix() = default;
    // All-ones off-diagonal (no homophily).
    explicit OpennessMatrix(const AttributeSchema& schema);
    OpennessMatrix(const AttributeSchema& schema, const std::vector<OpennessOverride>& overrides);

    std::size_t size() const { return n_; }
    double at(std::size_t p, std::size_t q) const { return entries_.at(p * n_ + q); }
    void set(std::size_t p, std::size_t q, double lambda);

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

// Total homophily factor between two profiles: the product of openness
// factors over all pairs of their attribute values.
double total_homophily(const AttributeSchema& schema, const NodeProfile& p, const NodeProfile& q,
                       const OpennessMatrix& openness);

// Precomputed total-homophily factors per profile-combination pair; avoids
// recomputing the value-pair product in the generator's inner loops. Falls
// back to direct evaluation when the combination space is large.
class HomophilyTable {
public:
    HomophilyTable(const AttributeSchema& schema, const OpennessMatrix& openness);

    std::uint32_t profile_key(const NodeProfile& p) const;
    double factor(std::uint32_t key_p, std::uint32_t key_q) const;
    double factor(const NodeProfile& p, const NodeProfile& q) const;

private:
    const AttributeSchema* schema_;
    const OpennessMatrix* openness_;
    std::size_t combo_count_ = 0;  // 0 when table disabled
    std::vector<double> table_;
    std::vector<std::size_t> strides_;
};

struct GeneratorConfig {
    std::size_t target_size = 500;        // N
    std::size_t links_per_newcomer = 3;   // m
    std::size_t seed_clique_size = 3;     // m0
    std::size_t internal_edges_per_step = 1;  // c
    AttributeSchema schema;
    OpennessMatrix openness;
    std::uint64_t rng_seed = 0;
};

// Throws std::invalid_argument when 1 <= m <= m0 <= N fails.
void validate_generator_config(const GeneratorConfig& cfg);

// Attachment distribution for a newcomer with the given profile:
// P(i) = k_i * H(P_i, Q) / sum_j k_j * H(P_j, Q). When every weight is zero
// the distribution falls back to uniform and used_fallback is set.
struct AttachmentDistribution {
    std::vector<double> probabilities;  // indexed by node id
    bool used_fallback = false;
};
AttachmentDistribution newcomer_attachment_distribution(const AttributedGraph& g,
                                                        const NodeProfile& new_profile,
                                                        const OpennessMatrix& openness);

// Distribution over non-adjacent node pairs (i < j):
// P(i,j) proportional to k_i * k_j * H(P_i, P_j). Empty when the graph is
// complete; the caller skips the internal-edge step in that case.
struct PairDistribution {
    std::vector<std::pair<NodeId, NodeId>> pairs;  // ascending (i, j)
    std::vector<double> probabilities;
};
PairDistribution internal_edge_distribution(const AttributedGraph& g, const OpennessMatrix& openness);

// One value per schema attribute, drawn independently from the priors.
NodeProfile assign_attributes(Rng& rng, const AttributeSchema& schema);

struct GenerationStats {
    std::size_t fallback_attachments = 0;  // newcomer draws that hit the uniform fallback
    std::size_t skipped_internal_edges = 0;
};

// Homophily-driven preferential attachment: m0-node seed clique, then one
// newcomer with m links per step followed by c internal edges. Deterministic
// given cfg.rng_seed.
AttributedGraph generate_network(const GeneratorConfig& cfg, GenerationStats* stats = nullptr);

}  // namespace aclsim
