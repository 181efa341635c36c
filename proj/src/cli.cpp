#include "rds/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <ostream>

#include "rds/experiment.hpp"
#include "rds/io.hpp"

namespace rds {

namespace {

struct GenerateArgs {
    std::string spec;
    std::string model = "power_law_cutoff";
    std::size_t n = 10000;
    int components = 1;
    int d_max = 10000;
    double prevalence = 0.15;
    double swap_prob = 0.2;
    std::uint64_t master_seed = ExperimentSpec{}.master_seed;
    std::string out;
};

struct SimulateArgs {
    std::string graph;
    std::string traits;
    std::size_t seeds = 10;
    std::size_t coupons = 3;
    std::size_t target_size = 300;
    bool replenish = false;
    std::uint64_t master_seed = ExperimentSpec{}.master_seed;
    std::string out;
};

struct EstimateArgs {
    std::string sample;
    std::string out;
    bool exclude_seeds = false;
};

struct ExperimentArgs {
    std::string spec;
    std::string out;
    std::optional<std::uint64_t> master_seed;
    bool serial = false;
};

struct ValidateArgs {
    std::string graph;
    double c = 0.9;
    double tol = 1e-12;
    std::size_t max_iter = 1'000'000;
    std::string out;
};

int run_generate(const GenerateArgs& a, std::ostream& out) {
    NetworkSpec net;
    TraitConfig trait;
    if (!a.spec.empty()) {
        const ExperimentSpec spec = read_spec(a.spec);
        net = spec.network;
        trait = spec.trait;
    } else {
        if (a.model == "power_law_cutoff") net.model.variant = PowerLawCutoff{};
        else if (a.model == "log_normal") net.model.variant = LogNormal{};
        else throw std::invalid_argument("unknown model '" + a.model + "'");
        net.model.d_max = a.d_max;
        net.n = a.n;
        net.components = a.components;
        trait.prevalence = a.prevalence;
        trait.swap_prob = a.swap_prob;
    }
    if (net.components != 1 && net.components != 2) throw std::invalid_argument("components must be 1 or 2");

    Rng rng = make_stream(a.master_seed, {kNetworkStream, 0});
    const Population pop = generate_population(net, trait, rng);

    {
        auto f = open_output(a.out + ".edges");
        f << "# " << pop.network.graph.num_vertices() << " vertices, " << pop.network.graph.num_edges() << " edges\n";
        write_edge_list(f, pop.network.graph);
    }
    {
        auto f = open_output(a.out + ".traits.csv");
        write_traits(f, pop.traits, "y");
    }
    nlohmann::json report = to_json(pop.network.report);
    report["master_seed"] = a.master_seed;
    report["n"] = net.n;
    report["components"] = net.components;
    report["prevalence"] = pop.prevalence;
    {
        auto f = open_output(a.out + ".report.jsonl");
        f << report.dump() << '\n';
    }
    out << report.dump() << '\n';
    return 0;
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    const LoadedGraph loaded = read_edge_list(a.graph);
    auto tin = open_input(a.traits);
    const TraitTable traits = read_traits(tin, loaded.ids);

    RdsConfig cfg;
    cfg.num_seeds = a.seeds;
    cfg.coupons = a.coupons;
    cfg.target_size = a.target_size;
    cfg.replenish_seeds = a.replenish;
    Rng rng = make_stream(a.master_seed, {kRecruitStream, 0, a.seeds, 0});
    const RdsSample sample = run_rds(loaded.graph, traits.values, cfg, rng);

    auto f = open_output(a.out);
    write_sample_csv(f, sample, loaded.ids);
    out << "wrote " << sample.size() << " records (" << sample.num_seeds() << " seeds) to " << a.out << '\n';
    return 0;
}

void print_table(const EstimateReport& r, std::ostream& out) {
    auto opt = [](const std::optional<double>& v) {
        std::ostringstream s;
        if (v) s << std::setprecision(10) << *v;
        else s << "undefined";
        return s.str();
    };
    out << std::left;
    auto row = [&](const char* name, const std::string& value) { out << "  " << std::setw(16) << name << value << '\n'; };
    auto num = [](double v) {
        std::ostringstream s;
        s << std::setprecision(10) << v;
        return s.str();
    };
    out << "sample size " << r.sample_size << ", seeds " << r.num_seeds << '\n';
    row("c_hat", num(r.c_hat));
    row("E(D) seeds", opt(r.ed_seeds));
    row("Var seeds", opt(r.var_ed_seeds));
    row("E(D) walk", opt(r.ed_rw));
    row("Var walk", opt(r.var_ed_rw));
    row("w*", num(r.w_star));
    row("E(D)", num(r.ed_hat));
    row("mu_T", num(r.mu_t));
    row("mu_VH", num(r.mu_vh));
    row("mu_SM", num(r.mu_sm));
    if (!r.flags.empty()) {
        out << "  flags:";
        for (auto f : r.flags) out << ' ' << to_string(f);
        out << '\n';
    }
}

int run_estimate(const EstimateArgs& a, std::ostream& out) {
    auto in = open_input(a.sample);
    const SampleFile file = read_sample_csv(in);
    EstimateOptions opts;
    opts.include_seeds = !a.exclude_seeds;
    const EstimateReport report = teleport_estimate(file.sample, opts);
    print_table(report, out);
    const std::string json = to_json(report).dump();
    if (a.out.empty()) {
        out << json << '\n';
    } else {
        auto f = open_output(a.out);
        f << json << '\n';
    }
    return 0;
}

int run_experiment_cmd(const ExperimentArgs& a, std::ostream& out) {
    ExperimentSpec spec = read_spec(a.spec);
    if (a.master_seed) spec.master_seed = *a.master_seed;
    const ExperimentResult result = run_experiment(spec, a.serial ? Execution::serial : Execution::parallel);
    emit_table(result.rows, a.out);
    out << "wrote " << result.rows.size() << " rows to " << a.out << "; " << result.failures.size() << " of "
        << result.total_replications << " replications failed\n";
    return 0;
}

int run_validate(const ValidateArgs& a, std::ostream& out) {
    const LoadedGraph loaded = read_edge_list(a.graph);
    const Graph& g = loaded.graph;
    const TeleportConfig cfg{a.c};
    PowerIterationOptions opts;
    opts.tol = a.tol;
    opts.max_iter = a.max_iter;
    const StationaryResult exact = exact_stationary(g, cfg, opts);
    const auto degrees = g.degrees();
    const std::vector<double> approx = cm_stationary_approx(degrees, cfg, mean_degree(g));

    auto f = open_output(a.out);
    f << "vertex,degree,pi_exact,pi_approx,relative_error\n" << std::setprecision(17);
    double mean_rel = 0.0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        const double rel = std::abs(approx[v] - exact.probs[v]) / exact.probs[v];
        mean_rel += rel;
        f << loaded.ids[v] << ',' << degrees[v] << ',' << exact.probs[v] << ',' << approx[v] << ',' << rel << '\n';
    }
    mean_rel /= static_cast<double>(g.num_vertices());
    out << "power iteration converged in " << exact.iterations << " sweeps; mean relative error " << mean_rel
        << "; residual " << stationary_residual(g, cfg, exact.probs) << '\n';
    return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Respondent-driven sampling simulation and estimation toolkit", "rdskit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a configuration-model network with traits");
    generate->add_option("--spec", gen.spec, "Experiment spec JSON (network and trait fields are used)");
    generate->add_option("--model", gen.model, "power_law_cutoff | log_normal (default parameters)");
    generate->add_option("--n", gen.n, "Number of vertices");
    generate->add_option("--components", gen.components, "1 or 2");
    generate->add_option("--d-max", gen.d_max, "Degree truncation");
    generate->add_option("--prevalence", gen.prevalence, "Fraction of vertices with y=1");
    generate->add_option("--swap-prob", gen.swap_prob, "Per-vertex trait swap probability");
    generate->add_option("--master-seed", gen.master_seed, "Random seed");
    generate->add_option("--out", gen.out, "Output prefix (.edges, .traits.csv, .report.jsonl)")->required();

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate one RDS recruitment");
    simulate->add_option("--graph", sim.graph, "Edge-list file")->required();
    simulate->add_option("--traits", sim.traits, "Trait CSV (id,<name>)")->required();
    simulate->add_option("--seeds", sim.seeds, "Number of seeds");
    simulate->add_option("--coupons", sim.coupons, "Coupons per respondent");
    simulate->add_option("--target-size", sim.target_size, "Target sample size");
    simulate->add_flag("--replenish", sim.replenish, "Add a fresh seed whenever recruitment dies out");
    simulate->add_option("--master-seed", sim.master_seed, "Random seed");
    simulate->add_option("--out", sim.out, "Sample CSV path")->required();

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Estimate prevalence from a sample CSV");
    estimate->add_option("sample", est.sample, "Sample CSV")->required();
    estimate->add_option("--out", est.out, "Write the JSON report here instead of stdout");
    estimate->add_flag("--exclude-seeds", est.exclude_seeds, "Drop seeds from the final ratio estimators");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "Run a replication experiment");
    experiment->add_option("--spec", exp.spec, "Experiment spec JSON")->required();
    experiment->add_option("--out", exp.out, "Aggregate CSV path")->required();
    experiment->add_option("--master-seed", exp.master_seed, "Override the spec's master seed");
    experiment->add_flag("--serial", exp.serial, "Use the serial reference path");

    ValidateArgs val;
    auto* validate = app.add_subcommand("validate-stationary", "Compare the closed-form stationary law with power iteration");
    validate->add_option("--graph", val.graph, "Edge-list file")->required();
    validate->add_option("--c", val.c, "Edge-traversal probability")->check(CLI::Range(0.0, 1.0));
    validate->add_option("--tol", val.tol, "L1 convergence tolerance");
    validate->add_option("--max-iter", val.max_iter, "Iteration cap");
    validate->add_option("--out", val.out, "CSV path")->required();

    std::vector<std::string> argv_store{"rdskit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*generate) return run_generate(gen, out);
        if (*simulate) return run_simulate(sim, out);
        if (*estimate) return run_estimate(est, out);
        if (*experiment) return run_experiment_cmd(exp, out);
        if (*validate) return run_validate(val, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace rds
