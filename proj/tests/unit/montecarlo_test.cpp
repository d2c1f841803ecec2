#include "hpart/errors.hpp"
#include "hpart/montecarlo.hpp"

#include <gtest/gtest.h>

using namespace hpart;

namespace {

const Coefficients kSet2{0.6, 0.8, 0.7, 0.4, 0.2, 0.2};

StudyConfig small_config(std::size_t threads) {
    StudyConfig cfg;
    cfg.threads = threads;
    cfg.burn_in = 200;
    cfg.optimizer.refine_top = 5;
    cfg.null_sims = 2000;
    return cfg;
}

}  // namespace

TEST(EstimationStudy, SingleReplicateHasNoVariance) {
    const McSummary s = run_estimation_study(ModelSpec::bpart(kSet2, 4, 7), 300, 1, 0, small_config(1));
    EXPECT_EQ(s.replications, 1u);
    for (const auto& p : s.params) {
        EXPECT_FALSE(p.ev.has_value()) << p.name;
        EXPECT_FALSE(p.vm.has_value()) << p.name;
    }
}

TEST(EstimationStudy, SeedStableAcrossThreadCounts) {
    const auto truth = ModelSpec::bpart(kSet2, 4, 7);
    const McSummary a = run_estimation_study(truth, 300, 6, 11, small_config(1));
    const McSummary b = run_estimation_study(truth, 300, 6, 11, small_config(3));
    ASSERT_EQ(a.params.size(), b.params.size());
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        EXPECT_EQ(a.params[i].em, b.params[i].em);
        EXPECT_EQ(a.params[i].ev, b.params[i].ev);
        EXPECT_EQ(a.params[i].sg, b.params[i].sg);
    }
    EXPECT_EQ(a.threshold_recovery, b.threshold_recovery);
}

TEST(EstimationStudy, SummaryShape) {
    const McSummary s = run_estimation_study(ModelSpec::hpart(kSet2, 4, 7, -1), 300, 4, 2, small_config(1));
    EXPECT_EQ(s.params.size(), 9u);
    EXPECT_EQ(s.param("c").truth, -1.0);
    for (const auto& p : s.params) {
        ASSERT_TRUE(p.ev.has_value());
        EXPECT_GE(*p.ev, 0.0);
        if (p.em != 0.0) {
            ASSERT_TRUE(p.vm.has_value());
            EXPECT_DOUBLE_EQ(*p.vm, *p.ev / p.em);
        }
    }
    EXPECT_FALSE(s.param("r").sg.has_value());
    EXPECT_TRUE(s.param("alpha1").sg.has_value());
    EXPECT_THROW((void)s.param("gamma"), InvalidArgument);
}

TEST(EstimationStudy, TooManyFailuresIsAnError) {
    // Series shorter than the minimum fit length make every replicate fail.
    EXPECT_THROW((void)run_estimation_study(ModelSpec::bpart(kSet2, 4, 7), 20, 5, 0, small_config(1)), FitFailure);
    EXPECT_THROW((void)run_estimation_study(ModelSpec::bpart(kSet2, 4, 7), 300, 0, 0, small_config(1)),
                 InvalidArgument);
}

TEST(EstimationStudy, ThresholdRecoveryDoesNotDegradeWithN) {
    const auto truth = ModelSpec::bpart(kSet2, 4, 7);
    const McSummary small = run_estimation_study(truth, 500, 30, 5, small_config(1));
    const McSummary large = run_estimation_study(truth, 2000, 30, 5, small_config(1));
    EXPECT_GE(large.threshold_recovery, small.threshold_recovery - 0.05);
}

TEST(TestStudy, RatesAreFrequenciesAndSeedStable) {
    const auto gen = ModelSpec::hpart(kSet2, 4, 7, 0);
    const TestStudyResult a = run_test_study(gen, TestKind::H0Tilde, 300, 6, kDefaultLevels, 3, small_config(1));
    const TestStudyResult b = run_test_study(gen, TestKind::H0Tilde, 300, 6, kDefaultLevels, 3, small_config(2));
    ASSERT_EQ(a.rejection_rate.size(), 3u);
    for (const double r : a.rejection_rate) {
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 1.0);
    }
    EXPECT_EQ(a.rejection_rate, b.rejection_rate);
    EXPECT_EQ(a.statistics, b.statistics);
}

TEST(TestStudy, BvhOnSecondSetHasPower) {
    const auto gen = ModelSpec::hpart(kSet2, 4, 7, 0);
    const TestStudyResult s = run_test_study(gen, TestKind::H0, 500, 10, kDefaultLevels, 4, small_config(1));
    EXPECT_GE(s.rejection_rate[1], 0.8);
}

TEST(TestKindNames, Parse) {
    EXPECT_EQ(parse_test_kind("H0"), TestKind::H0);
    EXPECT_EQ(parse_test_kind("h0-tilde"), TestKind::H0Tilde);
    EXPECT_THROW((void)parse_test_kind("H1"), InvalidArgument);
}
