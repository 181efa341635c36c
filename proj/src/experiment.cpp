#include "rds/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "rds/io.hpp"

namespace rds {

namespace {

const std::set<std::string> kSpecKeys{
    "degree_model", "d_min", "alpha", "lambda", "theta", "sigma", "pmf", "d_max",
    "n", "components", "prevalence", "swap_prob", "coupons", "target_size", "replenish_seeds",
    "seed_counts", "replications_per_network", "network_samples", "master_seed",
};

}  // namespace

void ExperimentSpec::validate() const {
    if (network.n < 2) throw std::invalid_argument("n must be at least 2");
    if (network.components != 1 && network.components != 2) throw std::invalid_argument("components must be 1 or 2");
    if (network.components == 2 && network.n < 4) throw std::invalid_argument("two components need n >= 4");
    if (!(trait.prevalence > 0.0 && trait.prevalence < 1.0)) throw std::invalid_argument("prevalence must lie in (0,1)");
    if (!(trait.swap_prob >= 0.0 && trait.swap_prob <= 1.0)) throw std::invalid_argument("swap_prob must lie in [0,1]");
    if (rds.coupons == 0) throw std::invalid_argument("coupons must be positive");
    if (rds.target_size == 0) throw std::invalid_argument("target_size must be positive");
    if (seed_counts.empty()) throw std::invalid_argument("seed_counts is empty");
    for (auto m : seed_counts) {
        if (m == 0) throw std::invalid_argument("seed counts must be positive");
        if (m > rds.target_size) throw std::invalid_argument("seed count exceeds target_size");
        if (m > network.n) throw std::invalid_argument("seed count exceeds n");
    }
    if (replications_per_network == 0) throw std::invalid_argument("replications_per_network must be positive");
    if (network_samples == 0) throw std::invalid_argument("network_samples must be positive");
    discretize(network.model);  // throws on bad degree parameters
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("experiment spec must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kSpecKeys.count(key)) throw std::invalid_argument("unknown spec key '" + key + "'");

    ExperimentSpec spec;
    const std::string kind = j.value("degree_model", std::string("power_law_cutoff"));
    if (kind == "power_law_cutoff") {
        PowerLawCutoff p;
        p.d_min = j.value("d_min", p.d_min);
        p.alpha = j.value("alpha", p.alpha);
        p.lambda = j.value("lambda", p.lambda);
        spec.network.model.variant = p;
    } else if (kind == "log_normal") {
        LogNormal p;
        p.theta = j.value("theta", p.theta);
        p.sigma = j.value("sigma", p.sigma);
        spec.network.model.variant = p;
    } else if (kind == "explicit") {
        if (!j.contains("pmf")) throw std::invalid_argument("explicit degree model needs 'pmf'");
        ExplicitPmf p;
        for (const auto& entry : j.at("pmf")) p.pmf.emplace_back(entry.at(0).get<int>(), entry.at(1).get<double>());
        spec.network.model.variant = p;
    } else {
        throw std::invalid_argument("unknown degree_model '" + kind + "'");
    }
    spec.network.model.d_max = j.value("d_max", spec.network.model.d_max);
    spec.network.n = j.value("n", spec.network.n);
    spec.network.components = j.value("components", spec.network.components);
    spec.trait.prevalence = j.value("prevalence", spec.trait.prevalence);
    spec.trait.swap_prob = j.value("swap_prob", spec.trait.swap_prob);
    spec.rds.coupons = j.value("coupons", spec.rds.coupons);
    spec.rds.target_size = j.value("target_size", spec.rds.target_size);
    spec.rds.replenish_seeds = j.value("replenish_seeds", spec.rds.replenish_seeds);
    spec.seed_counts = j.value("seed_counts", spec.seed_counts);
    spec.replications_per_network = j.value("replications_per_network", spec.replications_per_network);
    spec.network_samples = j.value("network_samples", spec.network_samples);
    spec.master_seed = j.value("master_seed", spec.master_seed);
    spec.validate();
    return spec;
}

nlohmann::json to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                j["degree_model"] = "power_law_cutoff";
                j["d_min"] = m.d_min;
                j["alpha"] = m.alpha;
                j["lambda"] = m.lambda;
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                j["degree_model"] = "log_normal";
                j["theta"] = m.theta;
                j["sigma"] = m.sigma;
            } else {
                j["degree_model"] = "explicit";
                nlohmann::json pmf = nlohmann::json::array();
                for (auto [d, p] : m.pmf) pmf.push_back({d, p});
                j["pmf"] = pmf;
            }
        },
        spec.network.model.variant);
    j["d_max"] = spec.network.model.d_max;
    j["n"] = spec.network.n;
    j["components"] = spec.network.components;
    j["prevalence"] = spec.trait.prevalence;
    j["swap_prob"] = spec.trait.swap_prob;
    j["coupons"] = spec.rds.coupons;
    j["target_size"] = spec.rds.target_size;
    j["replenish_seeds"] = spec.rds.replenish_seeds;
    j["seed_counts"] = spec.seed_counts;
    j["replications_per_network"] = spec.replications_per_network;
    j["network_samples"] = spec.network_samples;
    j["master_seed"] = spec.master_seed;
    return j;
}

ExperimentSpec read_spec(const std::filesystem::path& path) {
    auto in = open_input(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("cannot parse spec '" + path.string() + "': " + e.what());
    }
    return spec_from_json(j);
}

const char* to_string(Estimator e) {
    switch (e) {
        case Estimator::T: return "T";
        case Estimator::VH: return "VH";
        case Estimator::SM: return "SM";
    }
    return "?";
}

Population generate_population(const NetworkSpec& net, const TraitConfig& trait, Rng& rng) {
    Population pop;
    if (net.components == 2) {
        const std::size_t n1 = net.n / 2;
        pop.network = build_two_component(n1, net.n - n1, net.model, rng);
    } else {
        pop.network = build_configuration_model(net.n, net.model, rng);
    }
    pop.traits = assign_trait(pop.network.graph, trait, rng);
    const auto infected = std::accumulate(pop.traits.begin(), pop.traits.end(), std::size_t{0});
    pop.prevalence = static_cast<double>(infected) / static_cast<double>(pop.traits.size());
    return pop;
}

Population generate_population(const ExperimentSpec& spec, std::size_t network_index) {
    Rng rng = make_stream(spec.master_seed, {kNetworkStream, network_index});
    return generate_population(spec.network, spec.trait, rng);
}

EstimateReport run_replication(const Population& pop, const ExperimentSpec& spec, std::size_t network_index,
                               std::size_t m, std::size_t replication) {
    Rng rng = make_stream(spec.master_seed, {kRecruitStream, network_index, m, replication});
    RdsConfig cfg = spec.rds;
    cfg.num_seeds = m;
    const RdsSample sample = run_rds(pop.network.graph, pop.traits, cfg, rng);
    return teleport_estimate(sample);
}

MeanSe summarize(std::span<const double> values) {
    MeanSe out;
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, Execution exec) {
    spec.validate();
    const std::size_t networks = spec.network_samples;
    const std::size_t ms = spec.seed_counts.size();
    const std::size_t reps = spec.replications_per_network;

    std::vector<Population> pops(networks);
    std::exception_ptr error;
    const auto nets = static_cast<std::ptrdiff_t>(networks);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
    for (std::ptrdiff_t k = 0; k < nets; ++k) {
        try {
            pops[static_cast<std::size_t>(k)] = generate_population(spec, static_cast<std::size_t>(k));
        } catch (...) {
#pragma omp critical(rds_experiment_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    struct Outcome {
        bool ok = false;
        double mu[3] = {0.0, 0.0, 0.0};
        std::string message;
    };
    // Flat task index: ((k * ms) + mi) * reps + r.
    const std::size_t tasks = networks * ms * reps;
    std::vector<Outcome> outcomes(tasks);
    const auto ntasks = static_cast<std::ptrdiff_t>(tasks);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::parallel)
    for (std::ptrdiff_t t = 0; t < ntasks; ++t) {
        const auto idx = static_cast<std::size_t>(t);
        const std::size_t r = idx % reps;
        const std::size_t mi = (idx / reps) % ms;
        const std::size_t k = idx / (reps * ms);
        Outcome& out = outcomes[idx];
        try {
            const EstimateReport rep = run_replication(pops[k], spec, k, spec.seed_counts[mi], r);
            out.mu[0] = rep.mu_t;
            out.mu[1] = rep.mu_vh;
            out.mu[2] = rep.mu_sm;
            out.ok = true;
        } catch (const std::exception& e) {
            out.message = e.what();
        }
    }

    ExperimentResult result;
    result.total_replications = tasks;
    for (const auto& p : pops) {
        result.network_prevalence.push_back(p.prevalence);
        result.generation.push_back(p.network.report);
    }
    const double true_prevalence =
        std::accumulate(result.network_prevalence.begin(), result.network_prevalence.end(), 0.0) /
        static_cast<double>(networks);

    for (std::size_t mi = 0; mi < ms; ++mi) {
        std::vector<double> values[3];
        for (std::size_t k = 0; k < networks; ++k) {
            for (std::size_t r = 0; r < reps; ++r) {
                const Outcome& o = outcomes[(k * ms + mi) * reps + r];
                if (!o.ok) {
                    result.failures.push_back({k, spec.seed_counts[mi], r, o.message});
                    continue;
                }
                for (int e = 0; e < 3; ++e) values[e].push_back(o.mu[e]);
            }
        }
        for (int e = 0; e < 3; ++e) {
            const MeanSe s = summarize(values[e]);
            result.rows.push_back(
                {spec.seed_counts[mi], static_cast<Estimator>(e), s.mean, s.std_error, values[e].size(), true_prevalence});
        }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
        return a.m != b.m ? a.m < b.m : a.estimator < b.estimator;
    });
    return result;
}

void emit_table(std::span<const AggregateRow> rows, std::ostream& out) {
    std::vector<AggregateRow> sorted(rows.begin(), rows.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const AggregateRow& a, const AggregateRow& b) {
        return a.m != b.m ? a.m < b.m : a.estimator < b.estimator;
    });
    out << "m,estimator,mean,std_error,replicates,true_prevalence\n";
    out << std::setprecision(17);
    for (const auto& r : sorted)
        out << r.m << ',' << to_string(r.estimator) << ',' << r.mean << ',' << r.std_error << ',' << r.replicates
            << ',' << r.true_prevalence << '\n';
}

void emit_table(std::span<const AggregateRow> rows, const std::filesystem::path& path) {
    auto out = open_output(path);
    emit_table(rows, out);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace rds
