#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rds/rds_sim.hpp"

namespace rds {

/// Conditions under which the composite-weight rules fall back to a limit of
/// the minimum-variance formula instead of evaluating it directly.
enum class Degeneracy : std::uint8_t {
    no_seeds,
    single_seed,
    single_nonseed,
    no_nonseeds,
    all_seeds,
    zero_variance_both,
};

const char* to_string(Degeneracy d);

struct EstimateOptions {
    /// When false, the three final ratio estimators sum over non-seed records
    /// only. The c and E(D) estimates always use the whole sample.
    bool include_seeds = true;
};

struct EstimateReport {
    std::size_t sample_size = 0;
    std::size_t num_seeds = 0;

    double c_hat = 0.0;
    std::optional<double> ed_seeds;
    std::optional<double> var_ed_seeds;
    std::optional<double> ed_rw;
    std::optional<double> var_ed_rw;
    double w_star = 0.0;
    double ed_hat = 0.0;

    /// Unnormalised selection weights, one per record, in record order.
    std::vector<double> weights;

    double mu_t = 0.0;
    double mu_vh = 0.0;
    double mu_sm = 0.0;

    std::vector<Degeneracy> flags;

    bool has_flag(Degeneracy d) const;
};

/// Unweighted mean of y. Throws std::domain_error when empty.
double sample_mean(const RdsSample& s);

/// Inverse-degree weighted mean of y. Throws std::domain_error when empty or
/// when any degree is zero.
double vh_estimate(const RdsSample& s);

/// 1 - m / n_S.
double estimate_c(const RdsSample& s);

/// Mean degree of the seeds. Throws std::domain_error when there are none.
double ed_seeds(const RdsSample& s);
/// s_J^2 / m with the (m-1)-divisor sample variance; empty when m < 2.
std::optional<double> var_ed_seeds(const RdsSample& s);

/// Harmonic mean degree of the non-seeds. Throws std::domain_error when there
/// are none or a non-seed has degree zero.
double ed_rw(const RdsSample& s);
/// Delta-method variance (mean inverse degree)^-4 * s^2 / (n_S - m); empty
/// when fewer than two non-seeds.
std::optional<double> var_ed_rw(const RdsSample& s);

/// Minimum-variance weight on the seed-based estimate. Undefined variances
/// are treated as infinite; two zero variances split evenly.
double optimal_weight(std::optional<double> var_seeds, std::optional<double> var_rw);

/// w * ed_seeds + (1 - w) * ed_rw. Throws std::domain_error unless 0 <= w <= 1.
double composite_ed(double ed_seeds, double ed_rw, double w);

/// c_hat * d / ed_hat + 1 - c_hat for each record.
std::vector<double> selection_weights(const RdsSample& s, double c_hat, double ed_hat);

/// Hansen-Hurwitz ratio sum(y/p) / sum(1/p) over the selected records.
double ratio_estimate(const RdsSample& s, const std::vector<double>& weights, bool include_seeds = true);

/// Full teleportation-corrected estimate plus both baselines.
EstimateReport teleport_estimate(const RdsSample& s, const EstimateOptions& opts = {});

}  // namespace rds
