#pragma once

#include "hpart/diagnostics.hpp"
#include "hpart/estimation.hpp"
#include "hpart/forecast.hpp"
#include "hpart/montecarlo.hpp"
#include "hpart/septests.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>

namespace hpart {

using Json = nlohmann::json;

[[nodiscard]] Json to_json(const ModelSpec& spec);
/// Inverse of to_json(ModelSpec); doubles round-trip exactly.
[[nodiscard]] ModelSpec spec_from_json(const Json& j);

[[nodiscard]] Json to_json(const FitResult& fit);
[[nodiscard]] Json to_json(const TestOutcome& outcome);
[[nodiscard]] Json to_json(const ForecastReport& report);
[[nodiscard]] Json to_json(const McSummary& summary);
[[nodiscard]] Json to_json(const TestStudyResult& study);
[[nodiscard]] Json to_json(const ContingencyTable2x2& table);

/// Rows t, y_t, lambda_t, regime_t for t = 1 .. n-1, where lambda_t is the conditional mean of y_t.
void write_plot_data(std::ostream& out, const CountSeries& series, const ModelSpec& spec);

/**
 * @brief Regime map over the (y_{t-2}, y_{t-1}) plane for 0 <= y <= @p y_max.
 *
 * Columns y_tm2, y_tm1, zone, indicator. zone is lower (y_{t-1} <= r),
 * band (r < y_{t-1} <= s) or upper. indicator is I_t; for BPART the band
 * carries the previous state and is written as "carry".
 */
void write_regime_bands(std::ostream& out, const ModelSpec& spec, Count y_max);

void write_csv(std::ostream& out, const McSummary& summary);
void write_csv(std::ostream& out, const TestStudyResult& study);
void write_csv(std::ostream& out, const ForecastReport& report);

}  // namespace hpart
