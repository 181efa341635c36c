#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds {

/// Selects the serial reference kernel or the OpenMP one. Both produce the
/// same per-vertex arithmetic; only reductions may differ in rounding order.
enum class Execution { serial, parallel };

/// Random walk with teleportation: with probability `c` follow a uniform
/// incident edge, otherwise jump to a uniform vertex.
struct TeleportConfig {
    double c = 0.9;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Step {
    Vertex next;
    bool jumped;
};

/// One transition. An edge move drawn at a zero-degree vertex becomes a jump.
Step step(const Graph& g, Vertex current, const TeleportConfig& cfg, Rng& rng);

/// Dense row-major n x n matrix, entry (u, v) = P(next = v | current = u).
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> values;

    double operator()(std::size_t u, std::size_t v) const { return values[u * n + v]; }
};

inline constexpr std::size_t kDefaultDenseCap = 5000;

/// Throws std::length_error if the graph exceeds `cap` vertices.
DenseMatrix transition_matrix(const Graph& g, const TeleportConfig& cfg, std::size_t cap = kDefaultDenseCap);

struct StationaryResult {
    std::vector<double> probs;
    std::size_t iterations = 0;
    double last_change = 0.0;  // L1 distance between the last two iterates
};

struct PowerIterationOptions {
    double tol = 1e-12;
    std::size_t max_iter = 1'000'000;
    Execution execution = Execution::parallel;
};

/// Power iteration from the uniform vector using the split form
/// c * (walk operator) + (1 - c) * uniform, O(|E|) per sweep. Throws
/// ConvergenceError when successive iterates never get within `tol` in L1,
/// which only happens for periodic or reducible chains at c = 1.
StationaryResult exact_stationary(const Graph& g, const TeleportConfig& cfg, const PowerIterationOptions& opts = {});

/// One application of the transition operator: out = in * P.
void apply_transition(const Graph& g, double c, std::span<const double> in, std::span<double> out, Execution exec);

/// ||pi P - pi||_1.
double stationary_residual(const Graph& g, const TeleportConfig& cfg, std::span<const double> pi);

/// Closed-form configuration-model approximation
/// pi_v proportional to c * d_v / E(D) + 1 - c, renormalised to sum to 1.
std::vector<double> cm_stationary_approx(std::span<const std::size_t> degrees, const TeleportConfig& cfg,
                                         double mean_degree);

/// Visit counts of `steps` transitions from a uniform start (the start itself
/// is not counted).
std::vector<std::uint64_t> simulate_walk(const Graph& g, const TeleportConfig& cfg, std::size_t steps, Rng& rng);

}  // namespace rds
