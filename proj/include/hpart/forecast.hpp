#pragma once

#include "hpart/estimation.hpp"
#include "hpart/model.hpp"

#include <string_view>
#include <vector>

namespace hpart {

enum class RefitPolicy { Fixed, Expanding };

[[nodiscard]] std::string_view to_string(RefitPolicy policy) noexcept;
[[nodiscard]] RefitPolicy parse_refit_policy(std::string_view name);

struct ForecastReport {
    ModelKind kind = ModelKind::Par;
    std::vector<double> predictions;
    std::vector<Count> actuals;
    double mse = 0.0;
    double mae = 0.0;
    RefitPolicy refit_policy = RefitPolicy::Fixed;
    /// Index in the series of the first forecast target.
    std::size_t origin = 0;
    /// Fit on the training window (the last refit under Expanding).
    FitResult fit;
    std::size_t refits = 0;
};

/// Conditional mean of the next count after @p prefix: the last filtered intensity.
[[nodiscard]] double one_step_mean(const CountSeries& prefix, const ModelSpec& spec);

/**
 * @brief Rolling one-step-ahead evaluation over the last @p holdout values.
 *
 * Fits on values[0 .. n - holdout) and predicts each holdout value from all
 * data before it. Fixed keeps the training estimate (including its lambda_0);
 * Expanding refits on every longer prefix. Requires holdout < n / 2.
 */
[[nodiscard]] ForecastReport rolling_forecast(const CountSeries& series, std::size_t holdout, ModelKind kind,
                                              const GridOptions& grid = {},
                                              RefitPolicy policy = RefitPolicy::Fixed,
                                              const OptimizerConfig& cfg = {});

/// MSE and MAE of real-valued predictions against counts.
void score_forecasts(ForecastReport& report);

}  // namespace hpart
