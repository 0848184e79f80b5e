#include "aclsim/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aclsim/graph_io.hpp"
#include "aclsim/link_communities.hpp"
#include "json.hpp"

namespace aclsim {

using Json = nlohmann::ordered_json;

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    const unsigned n = std::min<std::size_t>(jobs, count);
    threads.reserve(n);
    for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

ExperimentConfig default_experiment_config() {
    ExperimentConfig cfg;
    cfg.schema = default_schema();
    cfg.conditions = {
        {"H1", {{"Google", "Starbucks", 0.7}, {"Starbucks", "Ikea", 0.7}, {"Google", "Ikea", 0.7}}},
        {"H2", {{"Google", "Starbucks", 0.3}, {"Starbucks", "Ikea", 0.3}, {"Google", "Ikea", 0.3}}},
        {"H3", {{"Google", "Starbucks", 0.01}, {"Starbucks", "Ikea", 0.01}, {"Google", "Ikea", 0.01}}},
    };
    return cfg;
}

namespace {

AttributeSchema schema_from_json(const Json& j) {
    std::vector<Attribute> attrs;
    for (const auto& a : j.at("attributes")) {
        Attribute attr;
        attr.name = a.at("name").get<std::string>();
        attr.values = a.at("values").get<std::vector<std::string>>();
        attr.priors = a.at("priors").get<std::vector<double>>();
        attrs.push_back(std::move(attr));
    }
    return AttributeSchema(std::move(attrs));
}

Json schema_to_json(const AttributeSchema& schema) {
    Json attrs = Json::array();
    for (const auto& a : schema.attributes())
        attrs.push_back({{"name", a.name}, {"values", a.values}, {"priors", a.priors}});
    return Json{{"attributes", std::move(attrs)}};
}

std::vector<OpennessOverride> overrides_from_json(const Json& j) {
    std::vector<OpennessOverride> out;
    for (const auto& o : j) {
        if (!o.is_array() || o.size() != 3)
            throw std::invalid_argument("config: openness override must be [valueA, valueB, lambda]");
        out.push_back({o.at(0).get<std::string>(), o.at(1).get<std::string>(), o.at(2).get<double>()});
    }
    return out;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    ExperimentConfig cfg = default_experiment_config();
    if (doc.contains("schema")) cfg.schema = schema_from_json(doc.at("schema"));
    if (doc.contains("generator")) {
        const auto& gen = doc.at("generator");
        if (gen.contains("N")) cfg.network_size = gen.at("N").get<std::size_t>();
        if (gen.contains("m")) cfg.links_per_newcomer = gen.at("m").get<std::size_t>();
        if (gen.contains("m0")) cfg.seed_clique_size = gen.at("m0").get<std::size_t>();
        if (gen.contains("internalEdgesPerStep"))
            cfg.internal_edges_per_step = gen.at("internalEdgesPerStep").get<std::size_t>();
    }
    if (doc.contains("homophilyConditions")) {
        cfg.conditions.clear();
        for (const auto& [name, overrides] : doc.at("homophilyConditions").items())
            cfg.conditions.push_back({name, overrides_from_json(overrides)});
    }
    if (doc.contains("untrusted")) {
        const auto& u = doc.at("untrusted");
        if (u.contains("attribute")) cfg.untrusted.attribute = u.at("attribute").get<std::string>();
        if (u.contains("value")) cfg.untrusted.value = u.at("value").get<std::string>();
        if (u.contains("n")) cfg.untrusted.n = u.at("n").get<std::size_t>();
    }
    if (doc.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : doc.at("methods")) cfg.methods.push_back(method_from_name(m.get<std::string>()));
    }
    if (doc.contains("diffusion")) {
        const auto& d = doc.at("diffusion");
        if (d.contains("beta")) cfg.diffusion.beta = d.at("beta").get<double>();
        if (d.contains("seedCounts")) cfg.diffusion.seed_counts = d.at("seedCounts").get<std::vector<std::size_t>>();
        if (d.contains("removalFractions"))
            cfg.diffusion.removal_fractions = d.at("removalFractions").get<std::vector<double>>();
        if (d.contains("replications")) cfg.diffusion.replications = d.at("replications").get<std::size_t>();
        if (d.contains("aclMethod")) cfg.diffusion.acl_method = method_from_name(d.at("aclMethod").get<std::string>());
    }
    if (doc.contains("masterSeed")) cfg.master_seed = doc.at("masterSeed").get<std::uint64_t>();
    if (doc.contains("outputDir")) cfg.output_dir = doc.at("outputDir").get<std::string>();
    validate_experiment_config(cfg);
    return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    Json doc;
    doc["schema"] = schema_to_json(cfg.schema);
    doc["generator"] = {{"N", cfg.network_size},
                        {"m", cfg.links_per_newcomer},
                        {"m0", cfg.seed_clique_size},
                        {"internalEdgesPerStep", cfg.internal_edges_per_step}};
    Json conditions = Json::object();
    for (const auto& c : cfg.conditions) {
        Json overrides = Json::array();
        for (const auto& o : c.overrides) overrides.push_back({o.value_a, o.value_b, o.lambda});
        conditions[c.name] = std::move(overrides);
    }
    doc["homophilyConditions"] = std::move(conditions);
    doc["untrusted"] = {{"attribute", cfg.untrusted.attribute},
                        {"value", cfg.untrusted.value},
                        {"n", cfg.untrusted.n}};
    Json methods = Json::array();
    for (Method m : cfg.methods) methods.push_back(method_name(m));
    doc["methods"] = std::move(methods);
    doc["diffusion"] = {{"beta", cfg.diffusion.beta},
                        {"seedCounts", cfg.diffusion.seed_counts},
                        {"removalFractions", cfg.diffusion.removal_fractions},
                        {"replications", cfg.diffusion.replications},
                        {"aclMethod", method_name(cfg.diffusion.acl_method)}};
    doc["masterSeed"] = cfg.master_seed;
    doc["outputDir"] = cfg.output_dir;
    return doc.dump(2) + "\n";
}

void validate_experiment_config(const ExperimentConfig& cfg) {
    if (cfg.conditions.empty()) throw std::invalid_argument("config: no homophily conditions");
    if (cfg.methods.empty()) throw std::invalid_argument("config: no methods");
    if (cfg.untrusted.n < 1) throw std::invalid_argument("config: untrusted.n must be >= 1");
    // Resolves the untrusted value and every override against the schema.
    const std::size_t a = cfg.schema.attribute_index(cfg.untrusted.attribute);
    cfg.schema.value_index(a, cfg.untrusted.value);
    for (std::size_t ci = 0; ci < cfg.conditions.size(); ++ci)
        OpennessMatrix(cfg.schema, cfg.conditions[ci].overrides);
    GeneratorConfig gen;
    gen.target_size = cfg.network_size;
    gen.links_per_newcomer = cfg.links_per_newcomer;
    gen.seed_clique_size = cfg.seed_clique_size;
    gen.internal_edges_per_step = cfg.internal_edges_per_step;
    gen.schema = cfg.schema;
    gen.openness = OpennessMatrix(cfg.schema);
    validate_generator_config(gen);
    if (!(cfg.diffusion.beta >= 0.0 && cfg.diffusion.beta <= 1.0))
        throw std::invalid_argument("config: diffusion.beta must lie in [0,1]");
    if (cfg.diffusion.seed_counts.empty()) throw std::invalid_argument("config: diffusion.seedCounts empty");
    if (cfg.diffusion.removal_fractions.empty())
        throw std::invalid_argument("config: diffusion.removalFractions empty");
    for (double f : cfg.diffusion.removal_fractions)
        if (!(f >= 0.0 && f <= 1.0))
            throw std::invalid_argument("config: removal fraction must lie in [0,1]");
    if (cfg.diffusion.replications < 1) throw std::invalid_argument("config: replications must be >= 1");
}

GeneratorConfig generator_config_for(const ExperimentConfig& cfg, std::size_t condition_index) {
    if (condition_index >= cfg.conditions.size())
        throw std::out_of_range("generator_config_for: condition index out of range");
    GeneratorConfig gen;
    gen.target_size = cfg.network_size;
    gen.links_per_newcomer = cfg.links_per_newcomer;
    gen.seed_clique_size = cfg.seed_clique_size;
    gen.internal_edges_per_step = cfg.internal_edges_per_step;
    gen.schema = cfg.schema;
    gen.openness = OpennessMatrix(cfg.schema, cfg.conditions[condition_index].overrides);
    gen.rng_seed = derive_seed(cfg.master_seed, {kStreamNetgen, condition_index});
    return gen;
}

namespace {

CommunityCover detect(const AttributedGraph& g, Method m) {
    switch (m) {
        case Method::MC: return multilevel_communities(g);
        case Method::LE: return leading_eigenvector_communities(g);
        case Method::LiC: return links_in_context_communities(g);
    }
    throw std::logic_error("detect: bad method");
}

std::string fmt_fraction(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

std::string fmt_wide(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12f", x);
    return buf;
}

// The value a reader reconstructs from the 6-digit CSV field; summaries are
// computed from these so they are recomputable from sim2.csv alone.
double emitted_fraction(double x) {
    return std::strtod(fmt_fraction(x).c_str(), nullptr);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

Sim1Result run_simulation1(const ExperimentConfig& cfg, unsigned jobs) {
    validate_experiment_config(cfg);
    Sim1Result result;
    const std::size_t nc = cfg.conditions.size();
    const std::size_t nm = cfg.methods.size();

    result.graphs.resize(nc);
    std::vector<std::string> generation_errors(nc);
    parallel_for(nc, jobs, [&](std::size_t ci) {
        try {
            result.graphs[ci] = generate_network(generator_config_for(cfg, ci));
        } catch (const std::exception& e) {
            generation_errors[ci] = e.what();
        }
    });

    struct Cell {
        bool ok = false;
        Sim1Row row;
        CommunityCover cover;
        AclPrediction prediction;
        std::string error;
        std::string stage;
    };
    std::vector<Cell> cells(nc * nm);
    parallel_for(nc * nm, jobs, [&](std::size_t idx) {
        const std::size_t ci = idx / nm;
        const std::size_t mi = idx % nm;
        Cell& cell = cells[idx];
        if (!generation_errors[ci].empty()) {
            cell.stage = "generate";
            cell.error = generation_errors[ci];
            return;
        }
        const AttributedGraph& g = result.graphs[ci];
        try {
            cell.stage = "detect";
            cell.cover = detect(g, cfg.methods[mi]);
            cell.stage = "acl";
            cell.prediction = predict_acl(g, cell.cover, cfg.untrusted.attribute, cfg.untrusted.value,
                                          cfg.untrusted.n);
            cell.row = {cfg.conditions[ci].name, cfg.methods[mi], cell.cover.clusters.size(),
                        cell.prediction.acl.size(), cell.prediction.scores.precision,
                        cell.prediction.scores.recall, cell.prediction.scores.f1};
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    });

    for (std::size_t ci = 0; ci < nc; ++ci) {
        for (std::size_t mi = 0; mi < nm; ++mi) {
            Cell& cell = cells[ci * nm + mi];
            if (cell.ok) {
                result.rows.push_back(cell.row);
                result.covers.emplace(std::make_pair(ci, mi), std::move(cell.cover));
                result.predictions.emplace(std::make_pair(ci, mi), std::move(cell.prediction));
            } else {
                result.errors.push_back({cfg.conditions[ci].name, method_name(cfg.methods[mi]),
                                         cell.stage, cell.error});
            }
        }
    }
    return result;
}

Sim2Result run_simulation2(const ExperimentConfig& cfg, unsigned jobs) {
    validate_experiment_config(cfg);
    Sim2Result result;
    const std::size_t nc = cfg.conditions.size();
    const Method method = cfg.diffusion.acl_method;

    result.graphs.resize(nc);
    result.covers.resize(nc);
    result.predictions.resize(nc);
    std::vector<std::string> setup_errors(nc);
    std::vector<std::string> setup_stages(nc);
    parallel_for(nc, jobs, [&](std::size_t ci) {
        try {
            setup_stages[ci] = "generate";
            result.graphs[ci] = generate_network(generator_config_for(cfg, ci));
            setup_stages[ci] = "detect";
            result.covers[ci] = detect(result.graphs[ci], method);
            setup_stages[ci] = "acl";
            result.predictions[ci] = predict_acl(result.graphs[ci], result.covers[ci],
                                                 cfg.untrusted.attribute, cfg.untrusted.value,
                                                 cfg.untrusted.n);
        } catch (const std::exception& e) {
            setup_errors[ci] = e.what();
        }
    });

    const auto& seed_counts = cfg.diffusion.seed_counts;
    const auto& fractions = cfg.diffusion.removal_fractions;
    const std::size_t reps = cfg.diffusion.replications;
    const std::size_t cells = nc * seed_counts.size() * fractions.size();
    const std::size_t total = cells * reps;

    struct Slot {
        bool ok = false;
        Sim2Row row;
        std::string error;
    };
    std::vector<Slot> slots(total);
    parallel_for(total, jobs, [&](std::size_t idx) {
        std::size_t rest = idx;
        const std::size_t rep = rest % reps;
        rest /= reps;
        const std::size_t fi = rest % fractions.size();
        rest /= fractions.size();
        const std::size_t si = rest % seed_counts.size();
        const std::size_t ci = rest / seed_counts.size();
        Slot& slot = slots[idx];
        if (!setup_errors[ci].empty()) {
            slot.error = setup_errors[ci];
            return;
        }
        try {
            DiffusionConfig dc;
            dc.beta = cfg.diffusion.beta;
            dc.seed_count = seed_counts[si];
            dc.gatekeeper_removal_fraction = fractions[fi];
            dc.rng_seed = derive_seed(cfg.master_seed, {kStreamTrial, ci, si, fi, rep});
            const DiffusionOutcome outcome =
                run_diffusion_trial(result.graphs[ci], result.predictions[ci].acl, dc);
            slot.row = {cfg.master_seed,
                        cfg.conditions[ci].name,
                        method,
                        seed_counts[si],
                        fractions[fi],
                        rep,
                        outcome.gatekeeper_total,
                        outcome.removed_gatekeepers.size(),
                        outcome.infected.size(),
                        outcome.infected_acl_count,
                        result.predictions[ci].acl.size(),
                        outcome.infected_acl_fraction,
                        outcome.rounds};
            slot.ok = true;
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });

    for (std::size_t ci = 0; ci < nc; ++ci) {
        if (!setup_errors[ci].empty())
            result.errors.push_back({cfg.conditions[ci].name, method_name(method), setup_stages[ci],
                                     setup_errors[ci]});
    }
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::size_t ci = cell / (seed_counts.size() * fractions.size());
        if (!setup_errors[ci].empty()) continue;
        double sum = 0.0, sum_total = 0.0, sum_rounds = 0.0;
        std::size_t n = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            Slot& slot = slots[cell * reps + rep];
            if (!slot.ok) {
                const std::size_t fi = (cell / 1) % fractions.size();
                const std::size_t si = (cell / fractions.size()) % seed_counts.size();
                result.errors.push_back({cfg.conditions[ci].name, method_name(method),
                                         "diffuse[s=" + std::to_string(seed_counts[si]) +
                                             ",f=" + fmt_fraction(fractions[fi]) +
                                             ",rep=" + std::to_string(rep) + "]",
                                         slot.error});
                continue;
            }
            result.rows.push_back(slot.row);
            const double x = emitted_fraction(slot.row.infected_acl_fraction);
            sum += x;
            sum_total += static_cast<double>(slot.row.infected_total);
            sum_rounds += static_cast<double>(slot.row.rounds);
            ++n;
        }
        if (n == 0) continue;
        Sim2Summary s;
        const std::size_t fi = cell % fractions.size();
        const std::size_t si = (cell / fractions.size()) % seed_counts.size();
        s.condition = cfg.conditions[ci].name;
        s.method = method;
        s.seed_count = seed_counts[si];
        s.removal_fraction = fractions[fi];
        s.replications = n;
        s.mean_infected_acl_fraction = sum / static_cast<double>(n);
        if (n > 1) {
            double var = 0.0;
            const double mean = s.mean_infected_acl_fraction;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                const Slot& slot = slots[cell * reps + rep];
                if (!slot.ok) continue;
                const double d = emitted_fraction(slot.row.infected_acl_fraction) - mean;
                var += d * d;
            }
            s.stddev_infected_acl_fraction = std::sqrt(var / static_cast<double>(n - 1));
        }
        s.mean_infected_total = sum_total / static_cast<double>(n);
        s.mean_rounds = sum_rounds / static_cast<double>(n);
        result.summaries.push_back(s);
    }
    return result;
}

std::string sim1_csv(const std::vector<Sim1Row>& rows) {
    std::ostringstream out;
    out << "condition,method,cluster_count,acl_size,precision,recall,f1\n";
    for (const auto& r : rows) {
        out << csv_escape(r.condition) << ',' << method_name(r.method) << ',' << r.cluster_count << ','
            << r.acl_size << ',' << fmt_fraction(r.precision) << ',' << fmt_fraction(r.recall) << ','
            << fmt_fraction(r.f1) << '\n';
    }
    return out.str();
}

std::string sim2_csv(const std::vector<Sim2Row>& rows) {
    std::ostringstream out;
    out << "master_seed,homophily_config,method,seed_count,removal_fraction,replicate,"
           "gatekeeper_total,gatekeepers_removed,infected_total,infected_acl_count,acl_size,"
           "infected_acl_fraction,rounds\n";
    for (const auto& r : rows) {
        out << r.master_seed << ',' << csv_escape(r.condition) << ',' << method_name(r.method) << ','
            << r.seed_count << ',' << fmt_fraction(r.removal_fraction) << ',' << r.replicate << ','
            << r.gatekeeper_total << ',' << r.gatekeepers_removed << ',' << r.infected_total << ','
            << r.infected_acl_count << ',' << r.acl_size << ',' << fmt_fraction(r.infected_acl_fraction)
            << ',' << r.rounds << '\n';
    }
    return out.str();
}

std::string summary_csv(const std::vector<Sim2Summary>& rows) {
    std::ostringstream out;
    out << "homophily_config,method,seed_count,removal_fraction,replications,"
           "mean_infected_acl_fraction,stddev_infected_acl_fraction,mean_infected_total,mean_rounds\n";
    for (const auto& r : rows) {
        out << csv_escape(r.condition) << ',' << method_name(r.method) << ',' << r.seed_count << ','
            << fmt_fraction(r.removal_fraction) << ',' << r.replications << ','
            << fmt_wide(r.mean_infected_acl_fraction) << ',' << fmt_wide(r.stddev_infected_acl_fraction)
            << ',' << fmt_wide(r.mean_infected_total) << ',' << fmt_wide(r.mean_rounds) << '\n';
    }
    return out.str();
}

std::string errors_csv(const std::vector<RunError>& errors) {
    std::ostringstream out;
    out << "condition,method,stage,message\n";
    for (const auto& e : errors)
        out << csv_escape(e.condition) << ',' << csv_escape(e.method) << ',' << csv_escape(e.stage) << ','
            << csv_escape(e.message) << '\n';
    return out.str();
}

namespace {

std::string run_meta_json(const ExperimentConfig& cfg, const std::string& command) {
    Json doc;
    doc["command"] = command;
    doc["masterSeed"] = cfg.master_seed;
    doc["rngAlgorithm"] = std::string(kRngAlgorithm);
    doc["config"] = Json::parse(experiment_config_to_json(cfg));
    return doc.dump(2) + "\n";
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

void emit(std::vector<std::string>& written, const ExperimentConfig& cfg, const std::string& name,
          const std::string& content) {
    const std::string path = out_path(cfg, name);
    write_text_file(path, content);
    written.push_back(path);
}

}  // namespace

std::vector<std::string> write_sim1_outputs(const ExperimentConfig& cfg, const Sim1Result& result) {
    std::filesystem::create_directories(cfg.output_dir);
    std::vector<std::string> written;
    emit(written, cfg, "sim1.csv", sim1_csv(result.rows));
    for (std::size_t ci = 0; ci < cfg.conditions.size(); ++ci) {
        if (ci < result.graphs.size() && result.graphs[ci].node_count() > 0)
            emit(written, cfg, "graph_" + cfg.conditions[ci].name + ".json", graph_to_json(result.graphs[ci]));
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            const auto key = std::make_pair(ci, mi);
            const auto cover = result.covers.find(key);
            if (cover != result.covers.end())
                emit(written, cfg,
                     "cover_" + cfg.conditions[ci].name + "_" + method_name(cfg.methods[mi]) + ".json",
                     cover_to_json(cover->second));
            const auto pred = result.predictions.find(key);
            if (pred != result.predictions.end())
                emit(written, cfg,
                     "acl_" + cfg.conditions[ci].name + "_" + method_name(cfg.methods[mi]) + ".json",
                     acl_to_json(pred->second));
        }
    }
    if (!result.errors.empty()) emit(written, cfg, "errors.csv", errors_csv(result.errors));
    emit(written, cfg, "run_meta.json", run_meta_json(cfg, "sim1"));
    return written;
}

std::vector<std::string> write_sim2_outputs(const ExperimentConfig& cfg, const Sim2Result& result) {
    std::filesystem::create_directories(cfg.output_dir);
    std::vector<std::string> written;
    emit(written, cfg, "sim2.csv", sim2_csv(result.rows));
    emit(written, cfg, "summary.csv", summary_csv(result.summaries));
    const std::string method = method_name(cfg.diffusion.acl_method);
    for (std::size_t ci = 0; ci < cfg.conditions.size(); ++ci) {
        if (ci >= result.graphs.size() || result.graphs[ci].node_count() == 0) continue;
        emit(written, cfg, "graph_" + cfg.conditions[ci].name + ".json", graph_to_json(result.graphs[ci]));
        if (ci < result.covers.size() && !result.covers[ci].clusters.empty())
            emit(written, cfg, "cover_" + cfg.conditions[ci].name + "_" + method + ".json",
                 cover_to_json(result.covers[ci]));
        if (ci < result.predictions.size() && !result.predictions[ci].acl.empty())
            emit(written, cfg, "acl_" + cfg.conditions[ci].name + "_" + method + ".json",
                 acl_to_json(result.predictions[ci]));
    }
    if (!result.errors.empty()) emit(written, cfg, "errors.csv", errors_csv(result.errors));
    emit(written, cfg, "run_meta.json", run_meta_json(cfg, "sim2"));
    return written;
}

}  // namespace aclsim
