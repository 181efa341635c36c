#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "estimator_oracle.hpp"
#include "rds/estimators.hpp"

using namespace rds;

namespace {

RdsSample make_sample(const std::vector<std::tuple<int, int, bool>>& rows) {
    RdsSample s;
    std::uint32_t id = 0;
    std::optional<std::uint32_t> last_seed;
    for (auto [d, y, seed] : rows) {
        Respondent r;
        r.id = id++;
        r.degree = d;
        r.y = y;
        r.is_seed = seed;
        if (seed) {
            last_seed = r.id;
        } else {
            r.recruiter = last_seed;
            r.wave = 1;
        }
        s.records.push_back(r);
    }
    return s;
}

RdsSample worked_example() {
    return make_sample({{2, 1, true}, {4, 0, true}, {1, 1, false}, {3, 0, false}});
}

RdsSample random_sample(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::vector<std::tuple<int, int, bool>> rows;
    for (std::size_t i = 0; i < n; ++i)
        rows.emplace_back(1 + static_cast<int>(rng() % 40), static_cast<int>(rng() % 2), i < m);
    return make_sample(rows);
}

// Golden value frozen from the exact rational oracle (estimator_oracle.hpp).
constexpr double kWorkedMuT = 1683801.0 / 2746927.0;

}  // namespace

TEST(SampleMean, Values) {
    EXPECT_DOUBLE_EQ(sample_mean(make_sample({{1, 1, true}, {1, 1, false}, {1, 0, false}, {1, 0, false}})), 0.5);
    EXPECT_DOUBLE_EQ(sample_mean(make_sample({{3, 1, true}, {2, 1, false}})), 1.0);
    EXPECT_DOUBLE_EQ(
        sample_mean(make_sample({{1, 1, true}, {1, 0, false}, {1, 1, false}, {1, 0, false}, {1, 0, false}})), 0.4);
    EXPECT_THROW(sample_mean(RdsSample{}), std::domain_error);
}

TEST(VolzHeckathorn, Values) {
    EXPECT_DOUBLE_EQ(vh_estimate(make_sample({{1, 1, true}, {3, 0, false}})), 0.75);
    const auto equal = make_sample({{4, 1, true}, {4, 0, false}, {4, 1, false}});
    EXPECT_DOUBLE_EQ(vh_estimate(equal), sample_mean(equal));
    EXPECT_DOUBLE_EQ(vh_estimate(make_sample({{2, 1, true}, {7, 1, false}})), 1.0);
    EXPECT_THROW(vh_estimate(make_sample({{0, 1, true}})), std::domain_error);
}

TEST(EstimateC, Values) {
    std::vector<std::tuple<int, int, bool>> rows;
    for (int i = 0; i < 300; ++i) rows.emplace_back(2, 0, i < 30);
    EXPECT_DOUBLE_EQ(estimate_c(make_sample(rows)), 0.9);
    EXPECT_DOUBLE_EQ(estimate_c(make_sample({{2, 0, true}, {2, 0, true}})), 0.0);
    EXPECT_DOUBLE_EQ(estimate_c(worked_example()), 0.5);
}

TEST(SeedDegree, MeanAndVariance) {
    const auto s = worked_example();
    EXPECT_DOUBLE_EQ(ed_seeds(s), 3.0);
    EXPECT_DOUBLE_EQ(*var_ed_seeds(s), 1.0);

    const auto flat = make_sample({{5, 0, true}, {5, 0, true}, {5, 0, true}});
    EXPECT_DOUBLE_EQ(ed_seeds(flat), 5.0);
    EXPECT_DOUBLE_EQ(*var_ed_seeds(flat), 0.0);

    const auto one = make_sample({{7, 0, true}, {2, 0, false}});
    EXPECT_DOUBLE_EQ(ed_seeds(one), 7.0);
    EXPECT_FALSE(var_ed_seeds(one).has_value());

    EXPECT_THROW(ed_seeds(make_sample({{2, 0, false}})), std::domain_error);
}

TEST(WalkDegree, HarmonicMeanAndDeltaVariance) {
    const auto s = worked_example();
    EXPECT_DOUBLE_EQ(ed_rw(s), 1.5);
    EXPECT_NEAR(*var_ed_rw(s), 9.0 / 16.0, 1e-15);

    const auto fours = make_sample({{1, 0, true}, {4, 0, false}, {4, 0, false}, {4, 0, false}});
    EXPECT_DOUBLE_EQ(ed_rw(fours), 4.0);
    EXPECT_DOUBLE_EQ(*var_ed_rw(fours), 0.0);

    EXPECT_DOUBLE_EQ(ed_rw(make_sample({{1, 0, true}, {2, 0, false}, {2, 0, false}, {2, 0, false}})), 2.0);
    EXPECT_FALSE(var_ed_rw(make_sample({{1, 0, true}, {2, 0, false}})).has_value());
    EXPECT_THROW(ed_rw(make_sample({{1, 0, true}})), std::domain_error);
}

TEST(OptimalWeight, Values) {
    EXPECT_NEAR(optimal_weight(1.0, 9.0 / 16.0), 0.36, 1e-15);
    EXPECT_DOUBLE_EQ(optimal_weight(2.5, 2.5), 0.5);
    EXPECT_DOUBLE_EQ(optimal_weight(std::nullopt, 0.3), 0.0);
    EXPECT_DOUBLE_EQ(optimal_weight(0.3, std::nullopt), 1.0);
    EXPECT_DOUBLE_EQ(optimal_weight(0.0, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(optimal_weight(0.0, 0.4), 1.0);
    EXPECT_DOUBLE_EQ(optimal_weight(0.4, 0.0), 0.0);
}

// f(w) = w^2 Vj + (1-w)^2 Vrw is minimised at the returned weight.
TEST(OptimalWeight, MinimisesCombinedVariance) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> var(1e-4, 10.0);
    for (int t = 0; t < 200; ++t) {
        const double vj = var(rng), vr = var(rng);
        const double w = optimal_weight(vj, vr);
        auto f = [&](double x) { return x * x * vj + (1 - x) * (1 - x) * vr; };
        for (int i = 0; i <= 10000; ++i) EXPECT_LE(f(w), f(i / 10000.0) + 1e-15);
    }
}

TEST(CompositeEd, Values) {
    EXPECT_NEAR(composite_ed(3.0, 1.5, 0.36), 2.04, 1e-15);
    EXPECT_DOUBLE_EQ(composite_ed(3.0, 1.5, 0.0), 1.5);
    EXPECT_DOUBLE_EQ(composite_ed(3.0, 1.5, 1.0), 3.0);
    EXPECT_THROW(composite_ed(3.0, 1.5, 1.2), std::domain_error);
}

TEST(SelectionWeights, Values) {
    const auto s = worked_example();
    for (double w : selection_weights(s, 0.0, 2.0)) EXPECT_EQ(w, 1.0);

    const auto two = make_sample({{1, 0, true}, {3, 0, false}});
    const auto vh = selection_weights(two, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(vh[1] / vh[0], 3.0);

    const auto w = selection_weights(s, 0.5, 2.04);
    const std::vector<double> expected{0.99020, 1.48039, 0.74510, 1.23529};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(w[i], expected[i], 5e-6);

    EXPECT_THROW(selection_weights(s, 0.5, 0.0), std::domain_error);
}

TEST(TeleportEstimate, WorkedExampleAgainstRationalOracle) {
    const auto exact = oracle::estimate({{2, 1, true}, {4, 0, true}, {1, 1, false}, {3, 0, false}});
    EXPECT_EQ(exact.c_hat, oracle::Q(1, 2));
    EXPECT_EQ(exact.ed_j, oracle::Q(3));
    EXPECT_EQ(exact.var_j, oracle::Q(1));
    EXPECT_EQ(exact.ed_rw, oracle::Q(3, 2));
    EXPECT_EQ(exact.var_rw, oracle::Q(9, 16));
    EXPECT_EQ(exact.w_star, oracle::Q(9, 25));
    EXPECT_EQ(exact.ed_hat, oracle::Q(51, 25));
    EXPECT_EQ(exact.mu_t, oracle::Q(1683801, 2746927));

    const EstimateReport r = teleport_estimate(worked_example());
    EXPECT_DOUBLE_EQ(r.c_hat, 0.5);
    EXPECT_DOUBLE_EQ(*r.ed_seeds, 3.0);
    EXPECT_DOUBLE_EQ(*r.var_ed_seeds, 1.0);
    EXPECT_DOUBLE_EQ(*r.ed_rw, 1.5);
    EXPECT_NEAR(*r.var_ed_rw, oracle::to_double(exact.var_rw), 1e-15);
    EXPECT_NEAR(r.w_star, oracle::to_double(exact.w_star), 1e-15);
    EXPECT_NEAR(r.ed_hat, oracle::to_double(exact.ed_hat), 1e-15);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.weights[i], oracle::to_double(exact.weights[i]), 1e-14);
    EXPECT_NEAR(r.mu_t, kWorkedMuT, 1e-12);
    EXPECT_TRUE(r.flags.empty());
}

TEST(TeleportEstimate, AllSeedsIsSampleMean) {
    const auto s = make_sample({{2, 1, true}, {9, 0, true}, {4, 1, true}, {1, 0, true}, {6, 1, true}});
    const auto r = teleport_estimate(s);
    EXPECT_EQ(r.c_hat, 0.0);
    EXPECT_EQ(r.mu_t, sample_mean(s));
    EXPECT_TRUE(r.has_flag(Degeneracy::all_seeds));
    EXPECT_TRUE(r.has_flag(Degeneracy::no_nonseeds));
    EXPECT_EQ(r.w_star, 1.0);
}

TEST(TeleportEstimate, NoSeedsIsVolzHeckathorn) {
    const auto s = make_sample({{2, 1, false}, {9, 0, false}, {4, 1, false}, {1, 0, false}, {6, 1, false}});
    const auto r = teleport_estimate(s);
    EXPECT_EQ(r.c_hat, 1.0);
    EXPECT_NEAR(r.mu_t, vh_estimate(s), 1e-12);
    EXPECT_TRUE(r.has_flag(Degeneracy::no_seeds));
    EXPECT_EQ(r.w_star, 0.0);
}

TEST(TeleportEstimate, DegenerateFlags) {
    const auto single_seed = teleport_estimate(make_sample({{2, 1, true}, {3, 0, false}, {5, 1, false}}));
    EXPECT_TRUE(single_seed.has_flag(Degeneracy::single_seed));
    EXPECT_FALSE(single_seed.var_ed_seeds.has_value());
    EXPECT_EQ(single_seed.w_star, 0.0);
    EXPECT_DOUBLE_EQ(single_seed.ed_hat, *single_seed.ed_rw);

    const auto single_nonseed = teleport_estimate(make_sample({{2, 1, true}, {4, 0, true}, {5, 1, false}}));
    EXPECT_TRUE(single_nonseed.has_flag(Degeneracy::single_nonseed));
    EXPECT_EQ(single_nonseed.w_star, 1.0);

    const auto both_single = teleport_estimate(make_sample({{2, 1, true}, {5, 1, false}}));
    EXPECT_EQ(both_single.w_star, 0.5);

    const auto zero = teleport_estimate(make_sample({{3, 1, true}, {3, 0, true}, {3, 1, false}, {3, 0, false}}));
    EXPECT_TRUE(zero.has_flag(Degeneracy::zero_variance_both));
    EXPECT_EQ(zero.w_star, 0.5);

    EXPECT_THROW(teleport_estimate(RdsSample{}), std::domain_error);
    EXPECT_THROW(teleport_estimate(make_sample({{0, 1, true}, {2, 0, false}})), std::domain_error);
}

TEST(TeleportEstimate, ExcludingSeedsUsesNonSeedRecordsOnly) {
    const auto s = worked_example();
    const auto all = teleport_estimate(s);
    const auto r = teleport_estimate(s, EstimateOptions{false});
    EXPECT_EQ(r.ed_hat, all.ed_hat);
    EXPECT_EQ(r.c_hat, all.c_hat);
    const double a = 1.0 / all.weights[2], b = 1.0 / all.weights[3];
    EXPECT_NEAR(r.mu_t, a / (a + b), 1e-12);
    EXPECT_NEAR(r.mu_vh, 0.75, 1e-12);
    EXPECT_NEAR(r.mu_sm, 0.5, 1e-15);
}

TEST(EstimatorProperty, BoundednessScalePermutationAndCollapse) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 2 + rng() % 60;
        const std::size_t m = rng() % (n + 1);
        RdsSample s = random_sample(rng, n, m);
        const auto r = teleport_estimate(s);

        int lo = 1, hi = 0;
        for (const auto& x : s.records) {
            lo = std::min(lo, x.y);
            hi = std::max(hi, x.y);
        }
        for (double mu : {r.mu_t, r.mu_vh, r.mu_sm}) {
            EXPECT_GE(mu, lo - 1e-12);
            EXPECT_LE(mu, hi + 1e-12);
        }
        EXPECT_GE(r.w_star, 0.0);
        EXPECT_LE(r.w_star, 1.0);
        for (double w : r.weights) EXPECT_GT(w, 0.0);

        std::vector<double> scaled = r.weights;
        for (auto& w : scaled) w *= 37.5;
        EXPECT_NEAR(ratio_estimate(s, scaled), r.mu_t, 1e-12);

        std::shuffle(s.records.begin(), s.records.end(), rng);
        const auto shuffled = teleport_estimate(s);
        EXPECT_NEAR(shuffled.mu_t, r.mu_t, 1e-12);
        EXPECT_NEAR(shuffled.mu_vh, r.mu_vh, 1e-12);
        EXPECT_NEAR(shuffled.mu_sm, r.mu_sm, 1e-12);

        for (auto& x : s.records) x.degree = 5;
        const auto flat = teleport_estimate(s);
        EXPECT_NEAR(flat.mu_t, flat.mu_sm, 1e-12);
        EXPECT_NEAR(flat.mu_vh, flat.mu_sm, 1e-12);
    }
}

TEST(EstimatorProperty, MatchesRationalOracleOnSmallSamples) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 2 + rng() % 3;
        const std::size_t n = m + 2 + rng() % 3;
        std::vector<oracle::Record> rows;
        std::vector<std::tuple<int, int, bool>> sample_rows;
        for (std::size_t i = 0; i < n; ++i) {
            const int d = 1 + static_cast<int>(rng() % 6);
            const int y = static_cast<int>(rng() % 2);
            rows.push_back({d, y, i < m});
            sample_rows.emplace_back(d, y, i < m);
        }
        const auto s = make_sample(sample_rows);
        const auto r = teleport_estimate(s);
        // Constant degrees within a partition give zero variances, which the
        // oracle's plain formula does not cover.
        if (!r.var_ed_seeds || !r.var_ed_rw || *r.var_ed_seeds + *r.var_ed_rw == 0.0) continue;
        const auto exact = oracle::estimate(rows);
        EXPECT_NEAR(r.mu_t, oracle::to_double(exact.mu_t), 1e-12);
        EXPECT_NEAR(r.ed_hat, oracle::to_double(exact.ed_hat), 1e-12);
    }
}
