#include "rds/rwwt.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace rds {

namespace {

void check_c(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("teleport parameter c must lie in [0,1]");
}

double l1_distance(std::span<const double> a, std::span<const double> b, Execution exec) {
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    double s = 0.0;
    if (exec == Execution::parallel) {
#pragma omp parallel for reduction(+ : s) schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    }
    return s;
}

}  // namespace

Step step(const Graph& g, Vertex current, const TeleportConfig& cfg, Rng& rng) {
    check_c(cfg.c);
    const auto n = static_cast<Vertex>(g.num_vertices());
    if (std::bernoulli_distribution(cfg.c)(rng)) {
        const auto nb = g.neighbors(current);
        if (!nb.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
            return {nb[pick(rng)], false};
        }
    }
    return {std::uniform_int_distribution<Vertex>(0, n - 1)(rng), true};
}

DenseMatrix transition_matrix(const Graph& g, const TeleportConfig& cfg, std::size_t cap) {
    check_c(cfg.c);
    const std::size_t n = g.num_vertices();
    if (n > cap)
        throw std::length_error("dense transition matrix requested for " + std::to_string(n) +
                                " vertices (cap " + std::to_string(cap) + ")");
    DenseMatrix p{n, std::vector<double>(n * n, 0.0)};
    const double jump = (1.0 - cfg.c) / static_cast<double>(n);
    for (Vertex u = 0; u < n; ++u) {
        double* row = p.values.data() + static_cast<std::size_t>(u) * n;
        const auto nb = g.neighbors(u);
        if (nb.empty()) {
            for (std::size_t v = 0; v < n; ++v) row[v] = 1.0 / static_cast<double>(n);
            continue;
        }
        const double move = cfg.c / static_cast<double>(nb.size());
        for (std::size_t v = 0; v < n; ++v) row[v] = jump;
        for (Vertex v : nb) row[v] += move;
    }
    return p;
}

void apply_transition(const Graph& g, double c, std::span<const double> in, std::span<double> out, Execution exec) {
    const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
    // Mass sitting on isolated vertices teleports, as does the 1-c share.
    double isolated = 0.0;
    for (std::ptrdiff_t u = 0; u < n; ++u)
        if (g.degree(static_cast<Vertex>(u)) == 0) isolated += in[u];
    const double base = (c * isolated + (1.0 - c)) / static_cast<double>(n);

    auto pull = [&](std::ptrdiff_t v) {
        double s = 0.0;
        for (Vertex u : g.neighbors(static_cast<Vertex>(v))) s += in[u] / static_cast<double>(g.degree(u));
        out[v] = c * s + base;
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 256)
        for (std::ptrdiff_t v = 0; v < n; ++v) pull(v);
    } else {
        for (std::ptrdiff_t v = 0; v < n; ++v) pull(v);
    }
}

StationaryResult exact_stationary(const Graph& g, const TeleportConfig& cfg, const PowerIterationOptions& opts) {
    check_c(cfg.c);
    const std::size_t n = g.num_vertices();
    if (n == 0) throw std::domain_error("stationary distribution of an empty graph");
    std::vector<double> cur(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    StationaryResult result;
    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        apply_transition(g, cfg.c, cur, next, opts.execution);
        const double change = l1_distance(cur, next, opts.execution);
        cur.swap(next);
        if (change < opts.tol) {
            const double total = std::accumulate(cur.begin(), cur.end(), 0.0);
            for (auto& p : cur) p /= total;
            result.probs = std::move(cur);
            result.iterations = it;
            result.last_change = change;
            return result;
        }
    }
    throw ConvergenceError("power iteration did not converge within " + std::to_string(opts.max_iter) +
                           " iterations (periodic or reducible chain?)");
}

double stationary_residual(const Graph& g, const TeleportConfig& cfg, std::span<const double> pi) {
    std::vector<double> next(pi.size());
    apply_transition(g, cfg.c, pi, next, Execution::serial);
    return l1_distance(pi, next, Execution::serial);
}

std::vector<double> cm_stationary_approx(std::span<const std::size_t> degrees, const TeleportConfig& cfg,
                                         double mean_degree) {
    check_c(cfg.c);
    if (cfg.c > 0.0 && !(mean_degree > 0.0)) throw std::domain_error("mean degree must be positive when c > 0");
    std::vector<double> pi(degrees.size());
    if (pi.empty()) return pi;
    for (std::size_t v = 0; v < pi.size(); ++v) {
        const double walk = cfg.c > 0.0 ? cfg.c * static_cast<double>(degrees[v]) / mean_degree : 0.0;
        pi[v] = walk + 1.0 - cfg.c;
    }
    const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
    if (!(total > 0.0)) throw std::domain_error("closed-form stationary vector has no mass");
    for (auto& p : pi) p /= total;
    return pi;
}

std::vector<std::uint64_t> simulate_walk(const Graph& g, const TeleportConfig& cfg, std::size_t steps, Rng& rng) {
    check_c(cfg.c);
    const std::size_t n = g.num_vertices();
    if (n == 0) throw std::domain_error("walk on an empty graph");
    if (steps == 0) throw std::domain_error("walk needs at least one step");
    std::vector<std::uint64_t> visits(n, 0);
    Vertex at = std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(n - 1))(rng);
    for (std::size_t t = 0; t < steps; ++t) {
        at = step(g, at, cfg, rng).next;
        ++visits[at];
    }
    return visits;
}

}  // namespace rds
