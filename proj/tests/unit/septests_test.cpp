#include "hpart/errors.hpp"
#include "hpart/estimation.hpp"
#include "hpart/filter.hpp"
#include "hpart/septests.hpp"
#include "hpart/stats.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

using namespace hpart;

namespace {

const Coefficients kSet1{0.5, 0.6, 0.4, 0.2, 0.4, 0.5};
const Coefficients kSet2{0.6, 0.8, 0.7, 0.4, 0.2, 0.2};

OptimizerConfig quick() {
    OptimizerConfig cfg;
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST(CompoundIntensity, EndpointsAndMidpoint) {
    auto spec = ModelSpec::hpart(kSet1, 3, 6, 0);
    spec.init.lambda0 = 1.0;
    const CountSeries y({2, 5, 7, 4, 5, 5, 6, 2});
    auto b_spec = spec;
    b_spec.kind = ModelKind::Bpart;
    const IntensityPath b = intensity_filter(y, b_spec);
    const IntensityPath h = intensity_filter(y, spec);
    const IntensityPath at0 = compound_intensity(y, spec, 0.0);
    const IntensityPath at1 = compound_intensity(y, spec, 1.0);
    const IntensityPath mid = compound_intensity(y, spec, 0.5);
    EXPECT_EQ(at0.lambdas, b.lambdas);
    EXPECT_EQ(at1.lambdas, h.lambdas);
    EXPECT_EQ(at1.regimes, h.regimes);
    for (std::size_t k = 0; k < y.size(); ++k) EXPECT_DOUBLE_EQ(mid.lambdas[k], 0.5 * (b.lambdas[k] + h.lambdas[k]));
    EXPECT_THROW((void)compound_intensity(y, spec, 1.5), InvalidArgument);
}

TEST(ScoreStat, DegenerateWhenNoDataInBand) {
    const CountSeries y({1, 2, 0, 3, 1, 2, 3, 0, 1, 1, 2, 3, 2, 1, 0, 2});
    EXPECT_THROW((void)score_stat_bpart(y, ModelSpec::bpart(kSet1, 3, 6), 0), DegenerateTest);
    EXPECT_THROW((void)test_hpart_vs_bpart(y, ModelSpec::hpart(kSet1, 3, 6, 0)), DegenerateTest);
}

TEST(ScoreStat, DependsOnCandidateOnlyThroughPath) {
    const auto sim = simulate(ModelSpec::hpart(kSet1, 3, 6, 0), 500, 100, 2);
    const auto spec = ModelSpec::bpart(kSet1, 3, 6);
    // Both candidates lie below every observed difference, so they induce the same path.
    EXPECT_EQ(score_stat_bpart(sim.series, spec, -100), score_stat_bpart(sim.series, spec, -101));
    EXPECT_GE(score_stat_bpart(sim.series, spec, 0), 0.0);
}

TEST(Sigma, SymmetricPsdAndReducedDiagonal) {
    const auto sim = simulate(ModelSpec::bpart(kSet1, 3, 6), 1000, 200, 3);
    const FitResult f = fit(sim.series, ModelKind::Bpart, GridOptions{}, quick());
    const std::vector<Count> cands = {-2, -1, 0, 1, 2};
    const SigmaEstimates s = estimate_sigma_bvh(sim.series, f.spec_hat, cands);
    EXPECT_LT((s.sigma1 - s.sigma1.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.sigma1);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
    for (Eigen::Index i = 0; i < s.sigma1.rows(); ++i) EXPECT_LE(s.sigma2(i, i), s.sigma1(i, i) + 1e-12);
}

TEST(SupNull, SingleCandidateMatchesScaledChiSquare) {
    const auto sim = simulate(ModelSpec::bpart(kSet1, 3, 6), 1000, 200, 4);
    const FitResult f = fit(sim.series, ModelKind::Bpart, GridOptions{}, quick());
    const SigmaEstimates s = estimate_sigma_bvh(sim.series, f.spec_hat, {0});
    NullSimConfig cfg;
    cfg.sims = 200000;
    cfg.seed = 1;
    std::vector<double> draws = simulate_sup_null(s.sigma1, s.sigma2, cfg);
    std::sort(draws.begin(), draws.end());
    const double crit = sample_quantile(draws, 0.95);
    const double expected = s.sigma2(0, 0) / s.sigma1(0, 0) * chi_square_quantile(0.95, 1.0);
    EXPECT_NEAR(crit / expected, 1.0, 0.02);
}

TEST(SupNull, DeterministicAndThreadIndependent) {
    Eigen::MatrixXd s1(2, 2), s2(2, 2);
    s1 << 2.0, 0.5, 0.5, 1.0;
    s2 << 1.5, 0.3, 0.3, 0.7;
    NullSimConfig a;
    a.sims = 10000;
    a.seed = 9;
    a.threads = 1;
    NullSimConfig b = a;
    b.threads = 3;
    EXPECT_EQ(simulate_sup_null(s1, s2, a), simulate_sup_null(s1, s2, a));
    EXPECT_EQ(simulate_sup_null(s1, s2, a), simulate_sup_null(s1, s2, b));
}

TEST(TestBvh, StatisticIsMaxOfCandidates) {
    const auto sim = simulate(ModelSpec::bpart(kSet1, 3, 6), 800, 200, 5);
    const FitResult f = fit(sim.series, ModelKind::Bpart, GridOptions{}, quick());
    NullSimConfig cfg;
    cfg.sims = 5000;
    const TestOutcome o = test_bpart_vs_hpart(sim.series, f.spec_hat, default_c_candidates(sim.series), cfg);
    ASSERT_FALSE(o.per_c_stats.empty());
    EXPECT_EQ(o.statistic, *std::max_element(o.per_c_stats.begin(), o.per_c_stats.end()));
    for (const double v : o.per_c_stats) EXPECT_GE(v, 0.0);
    EXPECT_GE(o.p_value, 0.0);
    EXPECT_LE(o.p_value, 1.0);
    ASSERT_EQ(o.decisions.size(), 3u);
    for (const auto& d : o.decisions) EXPECT_EQ(d.reject, o.p_value < d.level);
    EXPECT_EQ(o.null_sims, 5000u);
}

TEST(TestBvh, PowerfulOnSecondSetHpartData) {
    const auto sim = simulate(ModelSpec::hpart(kSet2, 4, 7, 0), 500, 200, 6);
    const FitResult f = fit(sim.series, ModelKind::Bpart, GridOptions{}, quick());
    NullSimConfig cfg;
    cfg.sims = 5000;
    const TestOutcome o = test_bpart_vs_hpart(sim.series, f.spec_hat, default_c_candidates(sim.series), cfg);
    EXPECT_TRUE(o.decisions[1].reject);
}

TEST(TestBvh, DropsCandidatesEqualToBufferPath) {
    const auto sim = simulate(ModelSpec::bpart(kSet1, 3, 6), 500, 200, 7);
    const FitResult f = fit(sim.series, ModelKind::Bpart, GridOptions{}, quick());
    NullSimConfig cfg;
    cfg.sims = 1000;
    const TestOutcome o = test_bpart_vs_hpart(sim.series, f.spec_hat, {0, 1}, cfg);
    EXPECT_EQ(o.candidates.size() + o.dropped_candidates.size(), 2u);
}

TEST(TestHvb, ScaledStatisticAndChiSquareDecisions) {
    const auto sim = simulate(ModelSpec::hpart(kSet1, 3, 6, 0), 1000, 200, 8);
    const FitResult f = fit(sim.series, ModelKind::Hpart, GridOptions{}, quick());
    const TestOutcome o = test_hpart_vs_bpart(sim.series, f.spec_hat);
    EXPECT_GT(o.sigma.sigma1p, 0.0);
    EXPECT_GT(o.sigma.sigma2p, 0.0);
    EXPECT_LE(o.sigma.sigma2p, o.sigma.sigma1p + 1e-12);
    EXPECT_NEAR(o.statistic, o.raw_statistic * o.sigma.sigma1p / o.sigma.sigma2p, 1e-12 * (1.0 + o.statistic));
    EXPECT_NEAR(o.p_value, chi_square_sf(o.statistic, 1.0), 1e-15);
    ASSERT_EQ(o.decisions.size(), 3u);
    EXPECT_NEAR(o.decisions[1].critical_value, 3.841458820694124, 1e-9);
}

TEST(Candidates, DefaultListIsThinnedAndSorted) {
    const auto sim = simulate(ModelSpec::hpart(kSet2, 4, 7, -1), 1000, 200, 9);
    const auto c = default_c_candidates(sim.series);
    EXPECT_LE(c.size(), kDefaultMaxCandidates);
    EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
    EXPECT_EQ(std::adjacent_find(c.begin(), c.end()), c.end());
}

TEST(ChiSquare, KnownValues) {
    EXPECT_NEAR(chi_square_quantile(0.95, 1.0), 3.841458820694124, 1e-12);
    EXPECT_NEAR(chi_square_sf(2.46, 2.0), std::exp(-1.23), 1e-14);
    EXPECT_NEAR(chi_square_cdf(3.841458820694124, 1.0), 0.95, 1e-12);
}

TEST(Ks, DistanceOfExactQuantiles) {
    std::vector<double> u;
    for (int i = 0; i < 100; ++i) u.push_back((i + 0.5) / 100.0);
    EXPECT_NEAR(ks_distance(u, [](double x) { return x; }), 0.005, 1e-12);
}
