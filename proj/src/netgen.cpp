#include "rds/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rds {

namespace {

double lognormal_cdf(double x, double theta, double sigma) {
    return 0.5 * std::erfc(-(std::log(x) - theta) / (sigma * std::sqrt(2.0)));
}

DegreePmf normalise(std::vector<int> degrees, std::vector<double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) throw std::domain_error("degree pmf has no mass");
    for (auto& w : weights) w /= total;
    return {std::move(degrees), std::move(weights)};
}

DegreePmf discretize_impl(const PowerLawCutoff& m, int d_max) {
    if (!(m.alpha > 1.0)) throw std::domain_error("power-law alpha must exceed 1");
    if (!(m.lambda >= 0.0)) throw std::domain_error("power-law lambda must be non-negative");
    if (m.d_min < 1) throw std::domain_error("power-law d_min must be at least 1");
    if (d_max < m.d_min) throw std::domain_error("d_max below d_min");
    std::vector<int> degrees;
    std::vector<double> weights;
    for (int d = m.d_min; d <= d_max; ++d) {
        degrees.push_back(d);
        weights.push_back(std::pow(static_cast<double>(d), -m.alpha) * std::exp(-m.lambda * d));
    }
    return normalise(std::move(degrees), std::move(weights));
}

DegreePmf discretize_impl(const LogNormal& m, int d_max) {
    if (!(m.sigma > 0.0)) throw std::domain_error("log-normal sigma must be positive");
    if (!std::isfinite(m.theta)) throw std::domain_error("log-normal theta must be finite");
    if (d_max < 1) throw std::domain_error("d_max must be at least 1");
    std::vector<int> degrees;
    std::vector<double> weights;
    double lower = lognormal_cdf(1.0, m.theta, m.sigma);
    for (int d = 1; d <= d_max; ++d) {
        const double upper = lognormal_cdf(d + 1.0, m.theta, m.sigma);
        degrees.push_back(d);
        weights.push_back(std::max(upper - lower, 0.0));
        lower = upper;
    }
    return normalise(std::move(degrees), std::move(weights));
}

DegreePmf discretize_impl(const ExplicitPmf& m, int d_max) {
    if (m.pmf.empty()) throw std::domain_error("explicit pmf is empty");
    std::vector<std::pair<int, double>> entries = m.pmf;
    std::sort(entries.begin(), entries.end());
    std::vector<int> degrees;
    std::vector<double> weights;
    for (auto [d, p] : entries) {
        if (d < 0) throw std::domain_error("negative degree in explicit pmf");
        if (d > d_max) throw std::domain_error("explicit pmf degree " + std::to_string(d) + " exceeds d_max");
        if (!(p >= 0.0) || !std::isfinite(p)) throw std::domain_error("invalid probability in explicit pmf");
        if (!degrees.empty() && degrees.back() == d) {
            weights.back() += p;
            continue;
        }
        degrees.push_back(d);
        weights.push_back(p);
    }
    return normalise(std::move(degrees), std::move(weights));
}

}  // namespace

double DegreePmf::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) s += degrees[i] * probs[i];
    return s;
}

double DegreePmf::second_moment() const {
    double s = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) s += static_cast<double>(degrees[i]) * degrees[i] * probs[i];
    return s;
}

DegreePmf discretize(const DegreeModel& model) {
    return std::visit([&](const auto& m) { return discretize_impl(m, model.d_max); }, model.variant);
}

DegreeSampler::DegreeSampler(DegreePmf pmf) : pmf_(std::move(pmf)), cdf_(pmf_.probs.size()) {
    std::partial_sum(pmf_.probs.begin(), pmf_.probs.end(), cdf_.begin());
    // Absorb rounding so every uniform draw lands inside the support.
    if (!cdf_.empty()) cdf_.back() = 1.0;
}

int DegreeSampler::operator()(Rng& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return pmf_.degrees[static_cast<std::size_t>(it - cdf_.begin())];
}

std::vector<int> sample_degree_sequence(const DegreeModel& model, std::size_t n, Rng& rng) {
    if (n == 0) throw std::domain_error("degree sequence length must be positive");
    const DegreeSampler sampler(discretize(model));
    std::vector<int> out(n);
    for (auto& d : out) d = sampler(rng);
    return out;
}

GeneratedNetwork build_configuration_model(std::vector<int> degrees, Rng& rng) {
    const std::size_t n = degrees.size();
    if (n < 2) throw std::domain_error("configuration model needs at least two vertices");

    std::vector<Vertex> stubs;
    stubs.reserve(static_cast<std::size_t>(std::accumulate(degrees.begin(), degrees.end(), 0LL)));
    for (Vertex u = 0; u < n; ++u) {
        if (degrees[u] < 0) throw std::domain_error("negative degree");
        stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[u]), u);
    }

    GenerationReport report;
    report.stubs = stubs.size();
    report.drawn_mean_degree =
        static_cast<double>(stubs.size()) / static_cast<double>(n);

    std::shuffle(stubs.begin(), stubs.end(), rng);
    if (stubs.size() % 2 == 1) {
        // After the shuffle the last stub is a uniform choice.
        stubs.pop_back();
        report.odd_stub_dropped = true;
    }

    std::vector<Edge> pairs;
    pairs.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) pairs.emplace_back(stubs[i], stubs[i + 1]);

    CleaningReport cleaning;
    Graph g = Graph::from_edges(n, pairs, &cleaning);
    report.self_loops_erased = cleaning.self_loops;
    report.multiedges_collapsed = cleaning.duplicates;
    report.realized_mean_degree = mean_degree(g);
    return {std::move(g), std::move(degrees), report};
}

GeneratedNetwork build_configuration_model(std::size_t n, const DegreeModel& model, Rng& rng) {
    if (n < 2) throw std::domain_error("configuration model needs at least two vertices");
    return build_configuration_model(sample_degree_sequence(model, n, rng), rng);
}

GeneratedNetwork build_two_component(std::size_t n1, std::size_t n2, const DegreeModel& model, Rng& rng) {
    if (n1 < 2 || n2 < 2) throw std::domain_error("each component needs at least two vertices");
    GeneratedNetwork a = build_configuration_model(n1, model, rng);
    GeneratedNetwork b = build_configuration_model(n2, model, rng);

    GeneratedNetwork out;
    out.graph = disjoint_union(a.graph, b.graph);
    out.drawn_degrees = std::move(a.drawn_degrees);
    out.drawn_degrees.insert(out.drawn_degrees.end(), b.drawn_degrees.begin(), b.drawn_degrees.end());
    const double n = static_cast<double>(n1 + n2);
    out.report.stubs = a.report.stubs + b.report.stubs;
    out.report.odd_stub_dropped = a.report.odd_stub_dropped || b.report.odd_stub_dropped;
    out.report.self_loops_erased = a.report.self_loops_erased + b.report.self_loops_erased;
    out.report.multiedges_collapsed = a.report.multiedges_collapsed + b.report.multiedges_collapsed;
    out.report.drawn_mean_degree = static_cast<double>(out.report.stubs) / n;
    out.report.realized_mean_degree = mean_degree(out.graph);
    return out;
}

std::vector<std::uint8_t> assign_trait(const Graph& g, const TraitConfig& cfg, Rng& rng) {
    if (!(cfg.prevalence >= 0.0 && cfg.prevalence <= 1.0)) throw std::domain_error("prevalence must lie in [0,1]");
    if (!(cfg.swap_prob >= 0.0 && cfg.swap_prob <= 1.0)) throw std::domain_error("swap probability must lie in [0,1]");
    const std::size_t n = g.num_vertices();
    std::vector<std::uint8_t> y(n, 0);
    if (n == 0) return y;

    const auto count = std::min(n, static_cast<std::size_t>(std::floor(cfg.prevalence * static_cast<double>(n) + 0.5)));
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (std::size_t i = 0; i < count; ++i) y[order[i]] = 1;

    std::bernoulli_distribution swap(cfg.swap_prob);
    std::uniform_int_distribution<Vertex> partner(0, static_cast<Vertex>(n - 1));
    for (Vertex u = 0; u < n; ++u) {
        if (swap(rng)) std::swap(y[u], y[partner(rng)]);
    }
    return y;
}

}  // namespace rds
