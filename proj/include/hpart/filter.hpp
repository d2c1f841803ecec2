#pragma once

#include "hpart/model.hpp"

#include <cstdint>

namespace hpart {

/// lambda_0 after applying the policy rules; always > 0 on success.
[[nodiscard]] double resolve_lambda0(const CountSeries& series, const ModelSpec& spec);

/**
 * @brief Filtered intensities lambda~_t for any model kind.
 *
 * lambdas[k] = (omega + alpha * values[k] + beta * lambdas[k-1]) using the
 * triple picked by regimes[k], seeded by the resolved lambda_0.
 * Throws InvalidArgument on an invalid spec, an empty series or lambda_0 <= 0.
 */
[[nodiscard]] IntensityPath intensity_filter(const CountSeries& series, const ModelSpec& spec);

/// Intensities for a precomputed regime path (no validation of the path).
[[nodiscard]] std::vector<double> filter_with_regimes(const CountSeries& series, const Coefficients& coef,
                                                      const RegimePath& regimes, double lambda0);

struct SimulationResult {
    CountSeries series;
    /// Same convention as intensity_filter: path.lambdas[k] drives values[k + 1].
    IntensityPath path;
    /// Filter state just before values[0]; filtering @c series with this
    /// initialization reproduces @c path exactly.
    InitPolicy state;
};

/// Default number of discarded warm-up steps.
inline constexpr std::size_t kDefaultBurnIn = 500;

/**
 * @brief Draws a trajectory y_t ~ Poisson(lambda_t).
 *
 * The chain starts at the upper-regime unconditional mean (or spec.init.lambda0),
 * runs @p burn_in discarded steps and records @p n values. Deterministic in
 * (spec, n, burn_in, seed).
 */
[[nodiscard]] SimulationResult simulate(const ModelSpec& spec, std::size_t n, std::size_t burn_in,
                                        std::uint64_t seed);

}  // namespace hpart
