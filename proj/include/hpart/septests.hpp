#pragma once

#include "hpart/estimation.hpp"
#include "hpart/model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace hpart {

inline const std::vector<double> kDefaultLevels = {0.10, 0.05, 0.01};
inline constexpr std::size_t kDefaultNullSims = 20000;
inline constexpr std::size_t kDefaultMaxCandidates = 9;

/**
 * @brief Pointwise (1 - delta) lambda^b + delta lambda^h.
 *
 * Both legs share spec.coef, r, s and the resolved lambda_0; the HPART leg uses
 * spec.tau.c. regimes are copied from the BPART leg, or the HPART leg at delta = 1.
 */
[[nodiscard]] IntensityPath compound_intensity(const CountSeries& series, const ModelSpec& spec, double delta);

/// Per-candidate score statistic T_n^b(c) at a fitted BPART spec.
/// Throws DegenerateTest when the HPART leg coincides with the BPART path.
[[nodiscard]] double score_stat_bpart(const CountSeries& series, const ModelSpec& bpart_fit, Count c);

/// Plug-in sigma quantities. Test of BPART uses sigma1/sigma2, the reverse test sigma1p/sigma2p.
struct SigmaEstimates {
    Eigen::MatrixXd sigma1;
    Eigen::MatrixXd sigma2;
    double sigma1p = 0.0;
    double sigma2p = 0.0;
    /// Set when sigma2 needed eigenvalue clipping or sigma2p hit its floor.
    bool repaired = false;
};

/// sigma^_1(c_i, c_j) and sigma^_2(c_i, c_j) at a fitted BPART spec.
[[nodiscard]] SigmaEstimates estimate_sigma_bvh(const CountSeries& series, const ModelSpec& bpart_fit,
                                                const std::vector<Count>& candidates);

struct LevelDecision {
    double level = 0.0;
    double critical_value = 0.0;
    bool reject = false;
};

struct TestOutcome {
    /// "bpart-vs-hpart" (null: BPART) or "hpart-vs-bpart" (null: HPART).
    std::string test;
    double statistic = 0.0;
    /// Raw T_n^h before scaling (reverse test only).
    double raw_statistic = 0.0;
    std::vector<Count> candidates;
    std::vector<double> per_c_stats;
    std::vector<Count> dropped_candidates;
    double p_value = 1.0;
    std::vector<LevelDecision> decisions;
    SigmaEstimates sigma;
    std::size_t null_sims = 0;
    std::vector<std::string> warnings;
};

struct NullSimConfig {
    std::size_t sims = kDefaultNullSims;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

/// Distinct observed differences between their 10th and 90th percentiles, thinned to @p cap.
[[nodiscard]] std::vector<Count> default_c_candidates(const CountSeries& series,
                                                      std::size_t cap = kDefaultMaxCandidates);

/**
 * @brief Draws the limit max_i Z_i^2 / sigma1(i, i) with Z ~ N(0, sigma2).
 *
 * Sims are generated in fixed blocks with per-block streams, so the output is
 * independent of the thread count.
 */
[[nodiscard]] std::vector<double> simulate_sup_null(const Eigen::MatrixXd& sigma1, const Eigen::MatrixXd& sigma2,
                                                    const NullSimConfig& cfg);

/**
 * @brief Score test of a fitted BPART model against HPART departures.
 *
 * S_n = max over nondegenerate candidates of T_n^b(c); the p-value and
 * critical values come from simulate_sup_null. A level is rejected when the
 * p-value is below it.
 */
[[nodiscard]] TestOutcome test_bpart_vs_hpart(const CountSeries& series, const ModelSpec& bpart_fit,
                                              const std::vector<Count>& candidates,
                                              const NullSimConfig& null_cfg = {},
                                              const std::vector<double>& levels = kDefaultLevels);

/**
 * @brief Score test of a fitted HPART model against BPART departures.
 *
 * Scales T_n^h by sigma1'/sigma2' and refers it to chi-square(1).
 */
[[nodiscard]] TestOutcome test_hpart_vs_bpart(const CountSeries& series, const ModelSpec& hpart_fit,
                                              const std::vector<double>& levels = kDefaultLevels);

}  // namespace hpart
