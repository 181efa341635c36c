#include "rds/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rds {

const char* to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::no_seeds: return "no_seeds";
        case Degeneracy::single_seed: return "single_seed";
        case Degeneracy::single_nonseed: return "single_nonseed";
        case Degeneracy::no_nonseeds: return "no_nonseeds";
        case Degeneracy::all_seeds: return "all_seeds";
        case Degeneracy::zero_variance_both: return "zero_variance_both";
    }
    return "unknown";
}

bool EstimateReport::has_flag(Degeneracy d) const {
    return std::find(flags.begin(), flags.end(), d) != flags.end();
}

namespace {

void require_nonempty(const RdsSample& s) {
    if (s.empty()) throw std::domain_error("empty sample");
}

void require_positive_degrees(const RdsSample& s) {
    for (const auto& r : s.records)
        if (r.degree <= 0) throw std::domain_error("record " + std::to_string(r.id) + " has non-positive degree");
}

std::vector<double> degrees_of(const RdsSample& s, bool seeds) {
    std::vector<double> out;
    for (const auto& r : s.records)
        if (r.is_seed == seeds) out.push_back(static_cast<double>(r.degree));
    return out;
}

double mean(const std::vector<double>& x) {
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size());
}

/// (n-1)-divisor sample variance.
double sample_variance(const std::vector<double>& x) {
    const double mu = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - mu) * (v - mu);
    return ss / static_cast<double>(x.size() - 1);
}

std::vector<double> inverses(std::vector<double> x) {
    for (auto& v : x) {
        if (!(v > 0.0)) throw std::domain_error("non-positive degree among non-seeds");
        v = 1.0 / v;
    }
    return x;
}

}  // namespace

double sample_mean(const RdsSample& s) {
    require_nonempty(s);
    double sum = 0.0;
    for (const auto& r : s.records) sum += r.y;
    return sum / static_cast<double>(s.size());
}

double vh_estimate(const RdsSample& s) {
    require_nonempty(s);
    require_positive_degrees(s);
    double num = 0.0;
    double den = 0.0;
    for (const auto& r : s.records) {
        const double w = 1.0 / r.degree;
        num += r.y * w;
        den += w;
    }
    return num / den;
}

double estimate_c(const RdsSample& s) {
    require_nonempty(s);
    return 1.0 - static_cast<double>(s.num_seeds()) / static_cast<double>(s.size());
}

double ed_seeds(const RdsSample& s) {
    const auto d = degrees_of(s, true);
    if (d.empty()) throw std::domain_error("no seeds in sample");
    return mean(d);
}

std::optional<double> var_ed_seeds(const RdsSample& s) {
    const auto d = degrees_of(s, true);
    if (d.size() < 2) return std::nullopt;
    return sample_variance(d) / static_cast<double>(d.size());
}

double ed_rw(const RdsSample& s) {
    const auto inv = inverses(degrees_of(s, false));
    if (inv.empty()) throw std::domain_error("no non-seeds in sample");
    double sum = 0.0;
    for (double v : inv) sum += v;
    return static_cast<double>(inv.size()) / sum;
}

std::optional<double> var_ed_rw(const RdsSample& s) {
    const auto inv = inverses(degrees_of(s, false));
    if (inv.size() < 2) return std::nullopt;
    const double m = mean(inv);
    return sample_variance(inv) / (m * m * m * m) / static_cast<double>(inv.size());
}

double optimal_weight(std::optional<double> var_seeds, std::optional<double> var_rw) {
    if (!var_seeds && !var_rw) return 0.5;
    if (!var_seeds) return 0.0;
    if (!var_rw) return 1.0;
    const double total = *var_seeds + *var_rw;
    if (total == 0.0) return 0.5;
    return *var_rw / total;
}

double composite_ed(double ed_j, double ed_walk, double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::domain_error("composite weight must lie in [0,1]");
    return w * ed_j + (1.0 - w) * ed_walk;
}

std::vector<double> selection_weights(const RdsSample& s, double c_hat, double ed_hat) {
    if (c_hat > 0.0 && !(ed_hat > 0.0)) throw std::domain_error("expected degree must be positive when c > 0");
    require_positive_degrees(s);
    std::vector<double> w;
    w.reserve(s.size());
    for (const auto& r : s.records) {
        const double walk = c_hat > 0.0 ? c_hat * r.degree / ed_hat : 0.0;
        w.push_back(walk + 1.0 - c_hat);
    }
    return w;
}

double ratio_estimate(const RdsSample& s, const std::vector<double>& weights, bool include_seeds) {
    double num = 0.0;
    double den = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& r = s.records[i];
        if (!include_seeds && r.is_seed) continue;
        const double inv = 1.0 / weights[i];
        num += r.y * inv;
        den += inv;
        ++used;
    }
    if (used == 0) throw std::domain_error("no records selected for estimation");
    return num / den;
}

EstimateReport teleport_estimate(const RdsSample& s, const EstimateOptions& opts) {
    require_nonempty(s);
    require_positive_degrees(s);

    EstimateReport rep;
    rep.sample_size = s.size();
    rep.num_seeds = s.num_seeds();
    const std::size_t m = rep.num_seeds;
    const std::size_t walkers = rep.sample_size - m;

    // Step 1.
    rep.c_hat = estimate_c(s);

    // Step 2-3: the seeds are the jump partition, everything else was reached by an edge.
    if (m == 0) rep.flags.push_back(Degeneracy::no_seeds);
    if (m == 1) rep.flags.push_back(Degeneracy::single_seed);
    if (walkers == 0) {
        rep.flags.push_back(Degeneracy::no_nonseeds);
        rep.flags.push_back(Degeneracy::all_seeds);
    }
    if (walkers == 1) rep.flags.push_back(Degeneracy::single_nonseed);

    if (m > 0) {
        rep.ed_seeds = ed_seeds(s);
        rep.var_ed_seeds = var_ed_seeds(s);
    }
    if (walkers > 0) {
        rep.ed_rw = ed_rw(s);
        rep.var_ed_rw = var_ed_rw(s);
    }
    if (rep.var_ed_seeds && rep.var_ed_rw && *rep.var_ed_seeds == 0.0 && *rep.var_ed_rw == 0.0)
        rep.flags.push_back(Degeneracy::zero_variance_both);

    // A missing partition carries no estimate at all, which overrides the
    // variance-based rule.
    if (!rep.ed_seeds) rep.w_star = 0.0;
    else if (!rep.ed_rw) rep.w_star = 1.0;
    else rep.w_star = optimal_weight(rep.var_ed_seeds, rep.var_ed_rw);

    rep.ed_hat = composite_ed(rep.ed_seeds.value_or(0.0), rep.ed_rw.value_or(0.0), rep.w_star);

    // Step 4-5.
    rep.weights = selection_weights(s, rep.c_hat, rep.ed_hat);
    rep.mu_t = ratio_estimate(s, rep.weights, opts.include_seeds);

    std::vector<double> degree_weights;
    degree_weights.reserve(s.size());
    for (const auto& r : s.records) degree_weights.push_back(static_cast<double>(r.degree));
    rep.mu_vh = ratio_estimate(s, degree_weights, opts.include_seeds);
    rep.mu_sm = ratio_estimate(s, std::vector<double>(s.size(), 1.0), opts.include_seeds);
    return rep;
}

}  // namespace rds
