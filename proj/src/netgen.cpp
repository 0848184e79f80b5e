#include "aclsim/netgen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace aclsim {

OpennessMatrix::OpennessMatrix(const AttributeSchema& schema)
    : n_(schema.value_count()), entries_(n_ * n_, 1.0) {}

OpennessMatrix::OpennessMatrix(const AttributeSchema& schema, const std::vector<OpennessOverride>& overrides)
    : OpennessMatrix(schema) {
    for (const auto& o : overrides) {
        const std::size_t a = schema.resolve_value(o.value_a);
        const std::size_t b = schema.resolve_value(o.value_b);
        if (a == b)
            throw std::invalid_argument("openness: diagonal entry for '" + o.value_a + "' must stay 1");
        set(a, b, o.lambda);
    }
}

void OpennessMatrix::set(std::size_t p, std::size_t q, double lambda) {
    if (p >= n_ || q >= n_) throw std::out_of_range("openness: value index out of range");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("openness: lambda " + std::to_string(lambda) + " outside [0,1]");
    if (p == q && lambda != 1.0)
        throw std::invalid_argument("openness: diagonal entries are fixed at 1");
    entries_[p * n_ + q] = lambda;
    entries_[q * n_ + p] = lambda;
}

double total_homophily(const AttributeSchema& schema, const NodeProfile& p, const NodeProfile& q,
                       const OpennessMatrix& openness) {
    if (openness.size() != schema.value_count())
        throw std::invalid_argument("total_homophily: openness matrix does not match schema");
    const std::size_t attrs = schema.attribute_count();
    if (p.values.size() != attrs || q.values.size() != attrs)
        throw std::invalid_argument("total_homophily: profile does not match schema");
    double h = 1.0;
    for (std::size_t a = 0; a < attrs; ++a) {
        const std::size_t gp = schema.global_value_index(a, p.values[a]);
        for (std::size_t b = 0; b < attrs; ++b) {
            const std::size_t gq = schema.global_value_index(b, q.values[b]);
            h *= openness.at(gp, gq);
        }
    }
    return h;
}

namespace {
constexpr std::size_t kMaxTabledCombos = 512;
}

HomophilyTable::HomophilyTable(const AttributeSchema& schema, const OpennessMatrix& openness)
    : schema_(&schema), openness_(&openness) {
    std::size_t combos = 1;
    strides_.resize(schema.attribute_count());
    for (std::size_t a = schema.attribute_count(); a-- > 0;) {
        strides_[a] = combos;
        combos *= schema.attribute(a).values.size();
        if (combos > kMaxTabledCombos) {
            strides_.clear();
            return;  // table disabled, factor() computes directly
        }
    }
    combo_count_ = combos;
    table_.resize(combos * combos);
    NodeProfile p, q;
    p.values.resize(schema.attribute_count());
    q.values.resize(schema.attribute_count());
    for (std::size_t i = 0; i < combos; ++i) {
        std::size_t rest = i;
        for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
            p.values[a] = static_cast<std::uint16_t>(rest / strides_[a]);
            rest %= strides_[a];
        }
        for (std::size_t j = 0; j < combos; ++j) {
            rest = j;
            for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
                q.values[a] = static_cast<std::uint16_t>(rest / strides_[a]);
                rest %= strides_[a];
            }
            table_[i * combos + j] = total_homophily(schema, p, q, openness);
        }
    }
}

std::uint32_t HomophilyTable::profile_key(const NodeProfile& p) const {
    if (combo_count_ == 0) return 0;
    std::size_t key = 0;
    for (std::size_t a = 0; a < strides_.size(); ++a) key += p.values[a] * strides_[a];
    return static_cast<std::uint32_t>(key);
}

double HomophilyTable::factor(std::uint32_t key_p, std::uint32_t key_q) const {
    return table_[static_cast<std::size_t>(key_p) * combo_count_ + key_q];
}

double HomophilyTable::factor(const NodeProfile& p, const NodeProfile& q) const {
    if (combo_count_ == 0) return total_homophily(*schema_, p, q, *openness_);
    return factor(profile_key(p), profile_key(q));
}

void validate_generator_config(const GeneratorConfig& cfg) {
    if (cfg.links_per_newcomer < 1)
        throw std::invalid_argument("generator: m must be >= 1");
    if (cfg.links_per_newcomer > cfg.seed_clique_size)
        throw std::invalid_argument("generator: m must be <= m0");
    if (cfg.seed_clique_size > cfg.target_size)
        throw std::invalid_argument("generator: m0 must be <= N");
    if (cfg.schema.attribute_count() == 0)
        throw std::invalid_argument("generator: schema is empty");
    if (cfg.openness.size() != cfg.schema.value_count())
        throw std::invalid_argument("generator: openness matrix does not match schema");
}

AttachmentDistribution newcomer_attachment_distribution(const AttributedGraph& g,
                                                        const NodeProfile& new_profile,
                                                        const OpennessMatrix& openness) {
    const std::size_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("newcomer_attachment_distribution: empty graph");
    AttachmentDistribution dist;
    dist.probabilities.resize(n);
    double total = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        const double w = static_cast<double>(g.degree(i)) *
                         total_homophily(g.schema(), g.profile(i), new_profile, openness);
        dist.probabilities[i] = w;
        total += w;
    }
    if (total <= 0.0) {
        dist.used_fallback = true;
        std::fill(dist.probabilities.begin(), dist.probabilities.end(), 1.0 / static_cast<double>(n));
        return dist;
    }
    for (double& p : dist.probabilities) p /= total;
    return dist;
}

PairDistribution internal_edge_distribution(const AttributedGraph& g, const OpennessMatrix& openness) {
    PairDistribution dist;
    const std::size_t n = g.node_count();
    double total = 0.0;
    for (NodeId i = 0; i + 1 < n; ++i) {
        if (g.degree(i) == 0) continue;
        for (NodeId j = i + 1; j < n; ++j) {
            if (g.degree(j) == 0 || g.has_edge(i, j)) continue;
            const double w = static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) *
                             total_homophily(g.schema(), g.profile(i), g.profile(j), openness);
            dist.pairs.emplace_back(i, j);
            dist.probabilities.push_back(w);
            total += w;
        }
    }
    if (total <= 0.0) {
        dist.pairs.clear();
        dist.probabilities.clear();
        return dist;
    }
    for (double& p : dist.probabilities) p /= total;
    return dist;
}

NodeProfile assign_attributes(Rng& rng, const AttributeSchema& schema) {
    NodeProfile p;
    p.values.reserve(schema.attribute_count());
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
        const auto& priors = schema.attribute(a).priors;
        const double u = rng.next_double();
        double cum = 0.0;
        std::uint16_t picked = static_cast<std::uint16_t>(priors.size() - 1);
        for (std::size_t v = 0; v < priors.size(); ++v) {
            cum += priors[v];
            if (u < cum) {
                picked = static_cast<std::uint16_t>(v);
                break;
            }
        }
        p.values.push_back(picked);
    }
    return p;
}

namespace {

// Picks an index by a cumulative walk over weights; total must be > 0.
std::size_t sample_index(const std::vector<double>& weights, double total, double u) {
    const double target = u * total;
    double cum = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        cum += weights[i];
        last_positive = i;
        if (target < cum) return i;
    }
    return last_positive;  // rounding: fall back to the last positive weight
}

}  // namespace

AttributedGraph generate_network(const GeneratorConfig& cfg, GenerationStats* stats) {
    validate_generator_config(cfg);
    GenerationStats local_stats;
    Rng rng(cfg.rng_seed);
    AttributedGraph g(cfg.schema);
    const HomophilyTable table(cfg.schema, cfg.openness);
    std::vector<std::uint32_t> keys;

    for (std::size_t i = 0; i < cfg.seed_clique_size; ++i) {
        NodeProfile p = assign_attributes(rng, cfg.schema);
        keys.push_back(table.profile_key(p));
        g.add_node(std::move(p));
    }
    for (NodeId i = 0; i + 1 < cfg.seed_clique_size; ++i)
        for (NodeId j = i + 1; j < cfg.seed_clique_size; ++j) g.add_edge(i, j);

    std::vector<double> weights;
    while (g.node_count() < cfg.target_size) {
        NodeProfile profile = assign_attributes(rng, cfg.schema);
        const std::uint32_t new_key = table.profile_key(profile);
        const std::size_t existing = g.node_count();

        weights.resize(existing);
        double total = 0.0;
        for (NodeId i = 0; i < existing; ++i) {
            weights[i] = static_cast<double>(g.degree(i)) * table.factor(keys[i], new_key);
            total += weights[i];
        }

        const std::size_t picks = std::min<std::size_t>(cfg.links_per_newcomer, existing);
        std::vector<NodeId> targets;
        targets.reserve(picks);
        for (std::size_t t = 0; t < picks; ++t) {
            NodeId target;
            if (total <= 0.0) {
                // All remaining weights are zero: uniform over unpicked nodes.
                ++local_stats.fallback_attachments;
                std::size_t remaining = existing - targets.size();
                std::size_t skip = static_cast<std::size_t>(rng.next_below(remaining));
                NodeId i = 0;
                while (true) {
                    const bool picked_before =
                        std::find(targets.begin(), targets.end(), i) != targets.end();
                    if (!picked_before) {
                        if (skip == 0) break;
                        --skip;
                    }
                    ++i;
                }
                target = i;
            } else {
                target = static_cast<NodeId>(sample_index(weights, total, rng.next_double()));
            }
            targets.push_back(target);
            total -= weights[target];
            weights[target] = 0.0;
            if (total < 0.0) total = 0.0;
        }

        const NodeId newcomer = g.add_node(std::move(profile));
        keys.push_back(new_key);
        for (NodeId t : targets) g.add_edge(t, newcomer);

        for (std::size_t c = 0; c < cfg.internal_edges_per_step; ++c) {
            // Two passes over non-adjacent pairs: total weight, then locate.
            const std::size_t n = g.node_count();
            double pair_total = 0.0;
            for (NodeId i = 0; i + 1 < n; ++i) {
                const double ki = static_cast<double>(g.degree(i));
                const auto adj = g.neighbors(i);
                std::size_t a = 0;
                for (NodeId j = i + 1; j < n; ++j) {
                    while (a < adj.size() && adj[a] < j) ++a;
                    if (a < adj.size() && adj[a] == j) continue;
                    pair_total += ki * static_cast<double>(g.degree(j)) * table.factor(keys[i], keys[j]);
                }
            }
            if (pair_total <= 0.0) {
                ++local_stats.skipped_internal_edges;
                continue;
            }
            const double target_mass = rng.next_double() * pair_total;
            double cum = 0.0;
            NodeId pick_i = 0, pick_j = 0;
            bool found = false;
            for (NodeId i = 0; i + 1 < n && !found; ++i) {
                const double ki = static_cast<double>(g.degree(i));
                const auto adj = g.neighbors(i);
                std::size_t a = 0;
                for (NodeId j = i + 1; j < n; ++j) {
                    while (a < adj.size() && adj[a] < j) ++a;
                    if (a < adj.size() && adj[a] == j) continue;
                    const double w = ki * static_cast<double>(g.degree(j)) * table.factor(keys[i], keys[j]);
                    if (w <= 0.0) continue;
                    cum += w;
                    pick_i = i;
                    pick_j = j;
                    if (target_mass < cum) {
                        found = true;
                        break;
                    }
                }
            }
            g.add_edge(pick_i, pick_j);
        }
    }

    if (stats) *stats = local_stats;
    return g;
}

}  // namespace aclsim
