#pragma once

#include "hpart/estimation.hpp"
#include "hpart/model.hpp"
#include "hpart/septests.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpart {

inline constexpr std::size_t kDefaultReps = 200;
/// Largest tolerated share of failed replicates before a study is declared misconfigured.
inline constexpr double kMaxFailureShare = 0.05;

struct StudyConfig {
    std::size_t burn_in = 500;
    /// Replicate-level workers; fits inside a replicate run single-threaded.
    std::size_t threads = 0;
    OptimizerConfig optimizer{};
    GridOptions grid{};
    std::size_t null_sims = kDefaultNullSims;
    std::size_t max_candidates = kDefaultMaxCandidates;
};

/// Summary of one estimated quantity across replicates.
struct ParamSummary {
    std::string name;
    double truth = 0.0;
    double em = 0.0;
    /// Sample variance (divisor reps - 1); absent with a single replicate.
    std::optional<double> ev;
    /// Mean of diag(G^-1 / n); absent for thresholds or when no replicate had a regular G.
    std::optional<double> sg;
    /// EV / EM; absent when EV is absent or EM = 0.
    std::optional<double> vm;
};

struct ReplicateEstimate {
    std::size_t index = 0;
    Coefficients coef;
    Thresholds tau;
    double loglik = 0.0;
    /// diag(G^-1 / n); empty when G was singular.
    std::vector<double> variances;
};

struct McSummary {
    ModelSpec truth;
    std::size_t n = 0;
    std::size_t replications = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_messages;
    /// Coefficients followed by r, s (two-regime) and c (HPART).
    std::vector<ParamSummary> params;
    /// Share of successful replicates whose thresholds equal the truth exactly.
    double threshold_recovery = 0.0;
    std::vector<ReplicateEstimate> replicates;

    [[nodiscard]] const ParamSummary& param(std::string_view name) const;
};

/// Seed handed to simulate() for replicate @p index of master seed @p seed.
[[nodiscard]] std::uint64_t replicate_seed(std::uint64_t seed, std::size_t index);

/**
 * @brief Simulate, fit and aggregate @p reps replicates of @p truth.
 *
 * Failed fits are excluded and counted; throws FitFailure when more than
 * kMaxFailureShare of replicates fail. Results do not depend on the thread count.
 */
[[nodiscard]] McSummary run_estimation_study(const ModelSpec& truth, std::size_t n, std::size_t reps,
                                             std::uint64_t seed, const StudyConfig& cfg = {});

/// H0: BPART null tested against HPART; H0Tilde: HPART null tested against BPART.
enum class TestKind { H0, H0Tilde };

[[nodiscard]] std::string_view to_string(TestKind kind) noexcept;
[[nodiscard]] TestKind parse_test_kind(std::string_view name);

struct TestStudyResult {
    TestKind test = TestKind::H0;
    ModelSpec generator;
    std::size_t n = 0;
    std::size_t replications = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_messages;
    std::vector<double> levels;
    /// Rejection frequency per level over successful replicates.
    std::vector<double> rejection_rate;
    std::vector<double> statistics;
    std::vector<double> p_values;
};

/**
 * @brief Simulate from @p generator, fit the null model and run the designated test.
 *
 * Replicates whose fit fails or whose test is degenerate count as failures.
 */
[[nodiscard]] TestStudyResult run_test_study(const ModelSpec& generator, TestKind test, std::size_t n,
                                             std::size_t reps, const std::vector<double>& levels,
                                             std::uint64_t seed, const StudyConfig& cfg = {});

}  // namespace hpart
