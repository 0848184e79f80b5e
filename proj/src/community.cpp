#include "aclsim/community.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace aclsim {

using Json = nlohmann::ordered_json;

std::string method_name(Method m) {
    switch (m) {
        case Method::MC: return "MC";
        case Method::LE: return "LE";
        case Method::LiC: return "LiC";
    }
    throw std::logic_error("method_name: bad enum");
}

Method method_from_name(const std::string& name) {
    if (name == "MC") return Method::MC;
    if (name == "LE") return Method::LE;
    if (name == "LiC") return Method::LiC;
    throw std::invalid_argument("unknown method '" + name + "', expected MC, LE or LiC");
}

void canonicalize_cover(CommunityCover& cover) {
    for (auto& c : cover.clusters) std::sort(c.begin(), c.end());
    std::sort(cover.clusters.begin(), cover.clusters.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
}

void validate_cover(const AttributedGraph& g, const CommunityCover& cover) {
    std::vector<unsigned> hits(g.node_count(), 0);
    for (const auto& c : cover.clusters) {
        if (c.empty()) throw std::invalid_argument("cover: empty cluster");
        for (NodeId v : c) {
            if (!g.has_node(v)) throw std::invalid_argument("cover: unknown node " + std::to_string(v));
            ++hits[v];
        }
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (hits[v] == 0) throw std::invalid_argument("cover: node " + std::to_string(v) + " not covered");
        if (!cover.overlapping && hits[v] > 1)
            throw std::invalid_argument("cover: node " + std::to_string(v) + " appears in several clusters");
    }
}

std::string cover_to_json(const CommunityCover& cover) {
    Json doc;
    doc["method"] = method_name(cover.method);
    doc["overlapping"] = cover.overlapping;
    CommunityCover sorted = cover;
    canonicalize_cover(sorted);
    doc["clusters"] = sorted.clusters;
    return doc.dump(2) + "\n";
}

CommunityCover cover_from_json(const std::string& text) {
    const Json doc = Json::parse(text);
    CommunityCover cover;
    cover.method = method_from_name(doc.at("method").get<std::string>());
    cover.overlapping = doc.at("overlapping").get<bool>();
    cover.clusters = doc.at("clusters").get<std::vector<std::vector<NodeId>>>();
    return cover;
}

double modularity(const AttributedGraph& g, const CommunityCover& partition) {
    if (partition.overlapping) throw std::invalid_argument("modularity requires a partition");
    if (g.edge_count() == 0) throw std::invalid_argument("modularity: graph has no edges");
    validate_cover(g, partition);

    std::vector<std::size_t> community_of(g.node_count());
    for (std::size_t c = 0; c < partition.clusters.size(); ++c)
        for (NodeId v : partition.clusters[c]) community_of[v] = c;

    const double m = static_cast<double>(g.edge_count());
    std::vector<double> intra(partition.clusters.size(), 0.0);
    std::vector<double> total_degree(partition.clusters.size(), 0.0);
    for (const auto& [u, v] : g.edges())
        if (community_of[u] == community_of[v]) intra[community_of[u]] += 1.0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        total_degree[community_of[v]] += static_cast<double>(g.degree(v));

    double q = 0.0;
    for (std::size_t c = 0; c < partition.clusters.size(); ++c) {
        const double frac = total_degree[c] / (2.0 * m);
        q += intra[c] / m - frac * frac;
    }
    return q;
}

namespace {

constexpr double kGainTolerance = 1e-10;

// Aggregated level graph for the multilevel pass. Self-loop weight counts
// twice toward the weighted degree.
struct LevelGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;  // no self entries
    std::vector<double> self_loop;
    std::vector<double> weighted_degree;
    double total_weight = 0.0;  // m (sum of edge weights, self-loops once)
};

// One sweep phase: greedy local moves in ascending node id until no move
// improves modularity by more than the tolerance. Returns the community of
// each level node.
std::vector<std::uint32_t> local_moving(const LevelGraph& lg) {
    const std::size_t n = lg.adjacency.size();
    std::vector<std::uint32_t> community(n);
    std::iota(community.begin(), community.end(), 0);
    std::vector<double> community_total(lg.weighted_degree);

    const double m = lg.total_weight;
    std::vector<double> weight_to(n, 0.0);
    std::vector<std::uint32_t> touched;

    bool moved = true;
    while (moved) {
        moved = false;
        for (std::uint32_t v = 0; v < n; ++v) {
            const std::uint32_t old_comm = community[v];
            touched.clear();
            for (const auto& [w, wt] : lg.adjacency[v]) {
                const std::uint32_t c = community[w];
                if (weight_to[c] == 0.0) touched.push_back(c);
                weight_to[c] += wt;
            }
            community_total[old_comm] -= lg.weighted_degree[v];

            // Gain of joining community c: k_{v,c}/m - tot_c * k_v / (2 m^2).
            const double kv = lg.weighted_degree[v];
            auto gain_of = [&](std::uint32_t c) {
                return weight_to[c] / m - community_total[c] * kv / (2.0 * m * m);
            };
            double best_gain = gain_of(old_comm);
            std::uint32_t best_comm = old_comm;
            std::sort(touched.begin(), touched.end());
            for (std::uint32_t c : touched) {
                if (c == old_comm) continue;
                const double gain = gain_of(c);
                if (gain > best_gain + kGainTolerance) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            community_total[best_comm] += kv;
            if (best_comm != old_comm) {
                community[v] = best_comm;
                moved = true;
            }
            for (const auto& [w, wt] : lg.adjacency[v]) weight_to[community[w]] = 0.0;
            weight_to[old_comm] = 0.0;
            weight_to[best_comm] = 0.0;
        }
    }
    return community;
}

// Renumbers communities densely in order of first appearance (ascending node
// id) and aggregates the level graph.
LevelGraph aggregate(const LevelGraph& lg, std::vector<std::uint32_t>& community, std::size_t& n_out) {
    const std::size_t n = lg.adjacency.size();
    std::vector<std::uint32_t> remap(n, std::numeric_limits<std::uint32_t>::max());
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (remap[community[v]] == std::numeric_limits<std::uint32_t>::max()) remap[community[v]] = next++;
        community[v] = remap[community[v]];
    }
    n_out = next;

    LevelGraph out;
    out.adjacency.resize(next);
    out.self_loop.assign(next, 0.0);
    out.weighted_degree.assign(next, 0.0);
    out.total_weight = lg.total_weight;

    std::vector<std::map<std::uint32_t, double>> acc(next);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t cv = community[v];
        out.self_loop[cv] += lg.self_loop[v];
        for (const auto& [w, wt] : lg.adjacency[v]) {
            const std::uint32_t cw = community[w];
            if (cw == cv) {
                if (w > v) out.self_loop[cv] += wt;
            } else {
                acc[cv][cw] += wt;
            }
        }
    }
    for (std::uint32_t c = 0; c < next; ++c) {
        out.weighted_degree[c] = 2.0 * out.self_loop[c];
        for (const auto& [w, wt] : acc[c]) {
            out.adjacency[c].emplace_back(w, wt);
            out.weighted_degree[c] += wt;
        }
    }
    return out;
}

}  // namespace

CommunityCover multilevel_communities(const AttributedGraph& g) {
    CommunityCover cover;
    cover.method = Method::MC;
    cover.overlapping = false;
    if (g.node_count() == 0) return cover;

    if (g.edge_count() == 0) {
        for (NodeId v = 0; v < g.node_count(); ++v) cover.clusters.push_back({v});
        canonicalize_cover(cover);
        return cover;
    }

    LevelGraph lg;
    lg.adjacency.resize(g.node_count());
    lg.self_loop.assign(g.node_count(), 0.0);
    lg.weighted_degree.assign(g.node_count(), 0.0);
    lg.total_weight = static_cast<double>(g.edge_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (NodeId w : g.neighbors(v)) lg.adjacency[v].emplace_back(w, 1.0);
        lg.weighted_degree[v] = static_cast<double>(g.degree(v));
    }

    // membership[v] = community of original node v at the current level
    std::vector<std::uint32_t> membership(g.node_count());
    std::iota(membership.begin(), membership.end(), 0);

    while (true) {
        std::vector<std::uint32_t> community = local_moving(lg);
        bool any_merge = false;
        for (std::size_t v = 0; v < community.size(); ++v)
            if (community[v] != v) any_merge = true;
        std::size_t n_next = 0;
        LevelGraph next = aggregate(lg, community, n_next);
        for (auto& m : membership) m = community[m];
        if (!any_merge || n_next == lg.adjacency.size()) break;
        lg = std::move(next);
        if (lg.adjacency.size() <= 1) break;
    }

    std::vector<std::vector<NodeId>> clusters(*std::max_element(membership.begin(), membership.end()) + 1);
    for (NodeId v = 0; v < g.node_count(); ++v) clusters[membership[v]].push_back(v);
    for (auto& c : clusters)
        if (!c.empty()) cover.clusters.push_back(std::move(c));
    canonicalize_cover(cover);
    return cover;
}

namespace {

// Spectral bisection state for one graph: global degrees and 2M are fixed,
// subsets shrink with recursion.
struct Spectral {
    const AttributedGraph& g;
    double two_m;
    std::vector<double> degree;
    std::vector<std::vector<NodeId>>& out;

    // Generalized modularity matrix over the subset S:
    // B(S)_ij = A_ij - k_i k_j / 2M - delta_ij * d_i(S),
    // d_i(S) = sum_{l in S} (A_il - k_i k_l / 2M).
    void split(std::vector<NodeId> s) {
        if (s.size() <= 1) {
            out.push_back(std::move(s));
            return;
        }
        const std::size_t n = s.size();
        std::vector<std::size_t> pos(g.node_count(), n);
        for (std::size_t i = 0; i < n; ++i) pos[s[i]] = i;

        double subset_degree = 0.0;
        for (NodeId v : s) subset_degree += degree[v];

        std::vector<double> diag(n);  // B_ii - d_i(S)
        std::vector<double> row_abs(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const NodeId v = s[i];
            double in_subset = 0.0;
            for (NodeId w : g.neighbors(v))
                if (pos[w] < n) in_subset += 1.0;
            const double d_i = in_subset - degree[v] * subset_degree / two_m;
            diag[i] = -degree[v] * degree[v] / two_m - d_i;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const NodeId v = s[i];
            double sum = std::abs(diag[i]);
            std::size_t a = 0;
            const auto adj = g.neighbors(v);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const NodeId w = s[j];
                while (a < adj.size() && adj[a] < w) ++a;
                const bool adjacent = a < adj.size() && adj[a] == w;
                sum += std::abs((adjacent ? 1.0 : 0.0) - degree[v] * degree[w] / two_m);
            }
            row_abs[i] = sum;
        }
        const double shift = *std::max_element(row_abs.begin(), row_abs.end());

        auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
            double k_dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) k_dot += degree[s[i]] * x[i];
            for (std::size_t i = 0; i < n; ++i) {
                const NodeId v = s[i];
                double acc = 0.0;
                for (NodeId w : g.neighbors(v))
                    if (pos[w] < n) acc += x[pos[w]];
                y[i] = acc - degree[v] * k_dot / two_m + diag[i] * x[i];
            }
        };

        // Power iteration on B(S) + shift*I; deterministic start vector.
        std::vector<double> x(n, 1.0), y(n);
        x[0] += 0.5;
        {
            double norm = 0.0;
            for (double v : x) norm += v * v;
            norm = std::sqrt(norm);
            for (double& v : x) v /= norm;
        }
        constexpr int kMaxIterations = 10000;
        constexpr double kTolerance = 1e-10;
        for (int it = 0; it < kMaxIterations; ++it) {
            matvec(x, y);
            for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
            double norm = 0.0;
            for (double v : y) norm += v * v;
            norm = std::sqrt(norm);
            if (norm == 0.0) break;
            double diff = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] /= norm;
                diff = std::max(diff, std::abs(y[i] - x[i]));
            }
            x.swap(y);
            if (diff < kTolerance) break;
        }

        matvec(x, y);
        double rayleigh = 0.0, xx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rayleigh += x[i] * y[i];
            xx += x[i] * x[i];
        }
        const double leading = rayleigh / xx;
        if (leading <= kGainTolerance) {
            out.push_back(std::move(s));
            return;
        }

        std::vector<NodeId> left, right;
        std::vector<double> sign(n);
        for (std::size_t i = 0; i < n; ++i) {
            sign[i] = x[i] >= 0.0 ? 1.0 : -1.0;
            (sign[i] > 0 ? left : right).push_back(s[i]);
        }
        if (left.empty() || right.empty()) {
            out.push_back(std::move(s));
            return;
        }

        // delta Q = s^T B(S) s / (2 * 2M); must strictly improve.
        matvec(sign, y);
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += sign[i] * y[i];
        delta /= 2.0 * two_m;
        if (delta <= kGainTolerance) {
            out.push_back(std::move(s));
            return;
        }
        split(std::move(left));
        split(std::move(right));
    }
};

std::vector<std::vector<NodeId>> connected_components(const AttributedGraph& g) {
    std::vector<std::vector<NodeId>> components;
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (seen[v]) continue;
        std::vector<NodeId> comp;
        stack.push_back(v);
        seen[v] = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId w : g.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

}  // namespace

CommunityCover leading_eigenvector_communities(const AttributedGraph& g) {
    CommunityCover cover;
    cover.method = Method::LE;
    cover.overlapping = false;
    if (g.node_count() == 0) return cover;
    if (g.edge_count() == 0) {
        for (NodeId v = 0; v < g.node_count(); ++v) cover.clusters.push_back({v});
        canonicalize_cover(cover);
        return cover;
    }

    std::vector<double> degree(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) degree[v] = static_cast<double>(g.degree(v));

    Spectral spectral{g, 2.0 * static_cast<double>(g.edge_count()), std::move(degree), cover.clusters};
    for (auto& comp : connected_components(g)) spectral.split(std::move(comp));
    canonicalize_cover(cover);
    return cover;
}

}  // namespace aclsim
