#include "hpart/forecast.hpp"

#include "hpart/errors.hpp"
#include "hpart/filter.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace hpart {

std::string_view to_string(RefitPolicy policy) noexcept {
    return policy == RefitPolicy::Fixed ? "fixed" : "expanding";
}

RefitPolicy parse_refit_policy(std::string_view name) {
    std::string lower(name);
    for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "fixed") return RefitPolicy::Fixed;
    if (lower == "expanding") return RefitPolicy::Expanding;
    throw InvalidArgument("unknown refit policy: " + std::string(name));
}

double one_step_mean(const CountSeries& prefix, const ModelSpec& spec) {
    if (prefix.empty()) throw InvalidArgument("one_step_mean: empty prefix");
    return intensity_filter(prefix, spec).lambdas.back();
}

void score_forecasts(ForecastReport& report) {
    if (report.predictions.size() != report.actuals.size()) {
        throw InvalidArgument("score_forecasts: prediction and actual lengths differ");
    }
    if (report.predictions.empty()) throw InvalidArgument("score_forecasts: nothing to score");
    double se = 0.0;
    double ae = 0.0;
    for (std::size_t i = 0; i < report.predictions.size(); ++i) {
        const double e = static_cast<double>(report.actuals[i]) - report.predictions[i];
        se += e * e;
        ae += std::abs(e);
    }
    const auto m = static_cast<double>(report.predictions.size());
    report.mse = se / m;
    report.mae = ae / m;
}

ForecastReport rolling_forecast(const CountSeries& series, std::size_t holdout, ModelKind kind,
                                const GridOptions& grid, RefitPolicy policy, const OptimizerConfig& cfg) {
    const std::size_t n = series.size();
    if (holdout == 0) throw InvalidArgument("rolling_forecast: holdout must be positive");
    if (2 * holdout >= n) throw InvalidArgument("rolling_forecast: holdout must be below half the series");

    ForecastReport report;
    report.kind = kind;
    report.refit_policy = policy;
    report.origin = n - holdout;

    auto fit_prefix = [&](std::size_t len) {
        try {
            report.fit = fit(series.prefix(len), kind, grid, cfg);
            ++report.refits;
        } catch (const Error& e) {
            throw FitFailure("rolling_forecast: fit on the first " + std::to_string(len) + " values failed after " +
                             std::to_string(report.predictions.size()) + " forecasts: " + e.what());
        }
    };

    fit_prefix(report.origin);
    for (std::size_t t = report.origin; t < n; ++t) {
        if (policy == RefitPolicy::Expanding && t > report.origin) fit_prefix(t);
        report.predictions.push_back(one_step_mean(series.prefix(t), report.fit.spec_hat));
        report.actuals.push_back(series[t]);
    }
    score_forecasts(report);
    return report;
}

}  // namespace hpart
