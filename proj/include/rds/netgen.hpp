#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds {

/// p_d proportional to d^-alpha * exp(-lambda d) on {d_min, ..., d_max}.
struct PowerLawCutoff {
    int d_min = 3;
    double alpha = 2.5;
    double lambda = 1e-5;
};

/// Integer part of a log-normal(theta, sigma) variate, restricted to
/// {1, ..., d_max}.
struct LogNormal {
    double theta = 2.0;
    double sigma = 0.5;
};

struct ExplicitPmf {
    std::vector<std::pair<int, double>> pmf;  // (degree, probability)
};

struct DegreeModel {
    std::variant<PowerLawCutoff, LogNormal, ExplicitPmf> variant = PowerLawCutoff{};
    int d_max = 10000;
};

/// Normalised probability mass function over integer degrees.
struct DegreePmf {
    std::vector<int> degrees;     // ascending, distinct
    std::vector<double> probs;

    double mean() const;
    double second_moment() const;
};

/// Evaluates the model on its integer support and renormalises by the
/// discrete sum. Throws std::domain_error on invalid parameters.
DegreePmf discretize(const DegreeModel& model);

/// Inverse-CDF sampler over a discretised pmf.
class DegreeSampler {
public:
    explicit DegreeSampler(DegreePmf pmf);

    int operator()(Rng& rng) const;

    const DegreePmf& pmf() const { return pmf_; }

private:
    DegreePmf pmf_;
    std::vector<double> cdf_;
};

std::vector<int> sample_degree_sequence(const DegreeModel& model, std::size_t n, Rng& rng);

struct GenerationReport {
    std::size_t stubs = 0;
    bool odd_stub_dropped = false;
    std::size_t self_loops_erased = 0;
    std::size_t multiedges_collapsed = 0;
    double drawn_mean_degree = 0.0;
    double realized_mean_degree = 0.0;
};

struct GeneratedNetwork {
    Graph graph;
    std::vector<int> drawn_degrees;
    GenerationReport report;
};

/// Erased configuration model: one uniform stub matching, then self-loops
/// dropped and multiedges collapsed. Requires n >= 2.
GeneratedNetwork build_configuration_model(std::size_t n, const DegreeModel& model, Rng& rng);

/// Same, for an already drawn degree sequence.
GeneratedNetwork build_configuration_model(std::vector<int> degrees, Rng& rng);

/// Two independent erased configuration models on [0, n1) and [n1, n1+n2).
/// The report aggregates both halves.
GeneratedNetwork build_two_component(std::size_t n1, std::size_t n2, const DegreeModel& model, Rng& rng);

struct TraitConfig {
    double prevalence = 0.15;
    double swap_prob = 0.2;
};

/// Gives y=1 to the round(prevalence * n) highest-degree vertices (ties by
/// ascending index), then makes one pass in index order swapping each
/// vertex's value with a uniform partner with probability swap_prob.
std::vector<std::uint8_t> assign_trait(const Graph& g, const TraitConfig& cfg, Rng& rng);

}  // namespace rds
