#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rds/estimators.hpp"
#include "rds/netgen.hpp"
#include "rds/rds_sim.hpp"
#include "rds/rwwt.hpp"

namespace rds {

struct NetworkSpec {
    DegreeModel model;
    std::size_t n = 10000;
    int components = 1;  // 1, or 2 equal halves with no edges between them
};

/// Replication experiment. `rds.num_seeds` is ignored; the seed counts come
/// from `seed_counts`.
struct ExperimentSpec {
    NetworkSpec network;
    TraitConfig trait;
    RdsConfig rds;
    std::vector<std::size_t> seed_counts{1, 2, 5, 10, 15, 20, 30, 45, 60};
    std::size_t replications_per_network = 50;
    std::size_t network_samples = 20;
    std::uint64_t master_seed = 20170601;

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

/// Flat JSON with the field names of ExperimentSpec plus the degree-model
/// keys (degree_model, d_min, alpha, lambda, theta, sigma, pmf, d_max).
/// Missing keys take defaults; unknown keys are rejected.
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec read_spec(const std::filesystem::path& path);

enum class Estimator : std::uint8_t { T, VH, SM };
const char* to_string(Estimator e);

struct AggregateRow {
    std::size_t m = 0;
    Estimator estimator = Estimator::T;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t replicates = 0;
    double true_prevalence = 0.0;
};

struct ReplicationFailure {
    std::size_t network = 0;
    std::size_t m = 0;
    std::size_t replication = 0;
    std::string message;
};

struct ExperimentResult {
    std::vector<AggregateRow> rows;  // sorted by (m, estimator)
    std::vector<ReplicationFailure> failures;
    std::size_t total_replications = 0;
    std::vector<double> network_prevalence;
    std::vector<GenerationReport> generation;
};

/// A generated network with its trait vector.
struct Population {
    GeneratedNetwork network;
    std::vector<std::uint8_t> traits;
    double prevalence = 0.0;
};

// Stream coordinates. Network k draws from stream_key(master, {kNetworkStream, k});
// replication r of seed count m on network k from
// stream_key(master, {kRecruitStream, k, m, r}).
inline constexpr std::uint64_t kNetworkStream = 1;
inline constexpr std::uint64_t kRecruitStream = 2;

Population generate_population(const NetworkSpec& net, const TraitConfig& trait, Rng& rng);
Population generate_population(const ExperimentSpec& spec, std::size_t network_index);

/// Runs one recruitment and all three estimators.
EstimateReport run_replication(const Population& pop, const ExperimentSpec& spec, std::size_t network_index,
                               std::size_t m, std::size_t replication);

struct MeanSe {
    double mean = 0.0;
    double std_error = 0.0;  // sd (n-1 divisor) / sqrt(n); 0 when n < 2
};
MeanSe summarize(std::span<const double> values);

/// Generates every network, runs every (network, m, replication) task and
/// pools each (m, estimator) over all of them. Results are independent of
/// execution order and thread count.
ExperimentResult run_experiment(const ExperimentSpec& spec, Execution exec = Execution::parallel);

/// CSV `m,estimator,mean,std_error,replicates,true_prevalence`, rows sorted
/// by (m, estimator) with estimators in the order T, VH, SM.
void emit_table(std::span<const AggregateRow> rows, std::ostream& out);
void emit_table(std::span<const AggregateRow> rows, const std::filesystem::path& path);

}  // namespace rds
