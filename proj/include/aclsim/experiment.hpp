#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aclsim/acl.hpp"
#include "aclsim/community.hpp"
#include "aclsim/diffusion.hpp"
#include "aclsim/netgen.hpp"

namespace aclsim {

struct HomophilyCondition {
    std::string name;
    std::vector<OpennessOverride> overrides;
};

struct UntrustedSpec {
    std::string attribute = "workplace";
    std::string value = "Ikea";
    std::size_t n = 10;
};

struct DiffusionGrid {
    double beta = 0.6;
    std::vector<std::size_t> seed_counts = {75, 150};
    std::vector<double> removal_fractions = {0.0, 1.0 / 3.0, 2.0 / 3.0};
    std::size_t replications = 100;
    Method acl_method = Method::LE;
};

struct ExperimentConfig {
    AttributeSchema schema;
    std::size_t network_size = 500;
    std::size_t links_per_newcomer = 3;
    std::size_t seed_clique_size = 3;
    std::size_t internal_edges_per_step = 1;
    std::vector<HomophilyCondition> conditions;
    UntrustedSpec untrusted;
    std::vector<Method> methods = {Method::MC, Method::LE, Method::LiC};
    DiffusionGrid diffusion;
    std::uint64_t master_seed = 1;
    std::string output_dir = "out";
};

// Paper defaults: H1/H2/H3 workplace cross-factors 0.7/0.3/0.01, untrusted
// (workplace, Ikea, 10), beta 0.6, s in {75,150}, fractions {0,1/3,2/3},
// 100 replications, LE ACLs.
ExperimentConfig default_experiment_config();

ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_config_to_json(const ExperimentConfig& cfg);
void validate_experiment_config(const ExperimentConfig& cfg);

// Generator setup for one condition; the network seed is derived from
// (masterSeed, kStreamNetgen, condition index).
GeneratorConfig generator_config_for(const ExperimentConfig& cfg, std::size_t condition_index);

struct RunError {
    std::string condition;
    std::string method;
    std::string stage;
    std::string message;
};

struct Sim1Row {
    std::string condition;
    Method method = Method::MC;
    std::size_t cluster_count = 0;
    std::size_t acl_size = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct Sim1Result {
    std::vector<Sim1Row> rows;
    std::vector<RunError> errors;
    std::vector<AttributedGraph> graphs;  // per condition, config order
    // keyed by (condition index, method index)
    std::map<std::pair<std::size_t, std::size_t>, CommunityCover> covers;
    std::map<std::pair<std::size_t, std::size_t>, AclPrediction> predictions;
};

struct Sim2Row {
    std::uint64_t master_seed = 0;
    std::string condition;
    Method method = Method::LE;
    std::size_t seed_count = 0;
    double removal_fraction = 0.0;
    std::size_t replicate = 0;
    std::size_t gatekeeper_total = 0;
    std::size_t gatekeepers_removed = 0;
    std::size_t infected_total = 0;
    std::size_t infected_acl_count = 0;
    std::size_t acl_size = 0;
    double infected_acl_fraction = 0.0;
    std::uint32_t rounds = 0;
};

struct Sim2Summary {
    std::string condition;
    Method method = Method::LE;
    std::size_t seed_count = 0;
    double removal_fraction = 0.0;
    std::size_t replications = 0;
    double mean_infected_acl_fraction = 0.0;
    double stddev_infected_acl_fraction = 0.0;
    double mean_infected_total = 0.0;
    double mean_rounds = 0.0;
};

struct Sim2Result {
    std::vector<Sim2Row> rows;
    std::vector<Sim2Summary> summaries;
    std::vector<RunError> errors;
    std::vector<AttributedGraph> graphs;
    std::vector<CommunityCover> covers;       // per condition, acl method
    std::vector<AclPrediction> predictions;   // per condition
};

// One network per condition shared by all methods; cells run concurrently
// when jobs > 1, with results identical regardless of scheduling.
Sim1Result run_simulation1(const ExperimentConfig& cfg, unsigned jobs = 1);
Sim2Result run_simulation2(const ExperimentConfig& cfg, unsigned jobs = 1);

// CSV renderings: comma separated, header row, fractions as 6-digit decimals,
// LF line endings. Summary means/stddevs carry 12 digits and are computed
// from the 6-digit row values so they are recomputable from sim2.csv.
std::string sim1_csv(const std::vector<Sim1Row>& rows);
std::string sim2_csv(const std::vector<Sim2Row>& rows);
std::string summary_csv(const std::vector<Sim2Summary>& rows);
std::string errors_csv(const std::vector<RunError>& errors);

// Writes sim outputs under cfg.output_dir: CSVs, per-condition graph/cover/
// acl JSON artifacts and run_meta.json. Returns the list of files written.
std::vector<std::string> write_sim1_outputs(const ExperimentConfig& cfg, const Sim1Result& result);
std::vector<std::string> write_sim2_outputs(const ExperimentConfig& cfg, const Sim2Result& result);

// Runs fn(i) for i in [0, count) on `jobs` threads; any exception is
// rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace aclsim
