#pragma once

#include "hpart/model.hpp"

namespace hpart {

/**
 * @brief Hysteretic regime indicator I_t.
 *
 * Returns 1 (first triple) when the previous count is at or below @p r, or
 * when it lies in the band (r, s] and the controlling factor
 * dy_prev = y_{t-1} - y_{t-2} is at least @p c. Falling paths switch at r,
 * rising ones at s. Every HPART code path goes through this function.
 */
[[nodiscard]] constexpr std::uint8_t hysteresis_indicator(Count y_prev, Count dy_prev, Count r, Count s,
                                                          Count c) noexcept {
    if (dy_prev >= c) return y_prev <= s ? 1 : 0;
    return y_prev <= r ? 1 : 0;
}

/// One step of the buffered recurrence R_t = I(y <= r) + I(r < y <= s) R_{t-1}.
[[nodiscard]] constexpr std::uint8_t buffer_indicator(Count y_prev, std::uint8_t regime_prev, Count r,
                                                      Count s) noexcept {
    if (y_prev <= r) return 1;
    if (y_prev > s) return 0;
    return regime_prev;
}

/// Buffered regime path; output[k] is the state determined by values[k].
/// @p regime0 is carried into the first step when values[0] falls in (r, s].
[[nodiscard]] RegimePath regime_path_bpart(const CountSeries& series, Count r, Count s, int regime0);

/// Hysteretic regime path; the first step uses @p delta_y0 as its difference.
[[nodiscard]] RegimePath regime_path_hpart(const CountSeries& series, Count r, Count s, Count c,
                                           Count delta_y0);

/// Self-excited threshold path I(y_{t-1} <= r).
[[nodiscard]] RegimePath regime_path_setpar(const CountSeries& series, Count r);

/// Regime path for any model kind, using @p spec's initialization rules.
[[nodiscard]] RegimePath regime_path(const CountSeries& series, const ModelSpec& spec);

/// Buffer state used before the first step: explicit value or I(y_0 <= r).
[[nodiscard]] int resolve_regime0(const CountSeries& series, const ModelSpec& spec);

/// First-step controlling factor: values[0] - previous when known, else the policy value.
[[nodiscard]] Count resolve_delta_y0(const CountSeries& series, const ModelSpec& spec);

}  // namespace hpart
