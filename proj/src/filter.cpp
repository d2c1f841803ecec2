#include "hpart/filter.hpp"

#include "hpart/errors.hpp"
#include "hpart/regime.hpp"
#include "hpart/rng.hpp"

#include <cmath>

namespace hpart {

double resolve_lambda0(const CountSeries& series, const ModelSpec& spec) {
    double lambda0 = 0.0;
    if (spec.init.lambda0) {
        lambda0 = *spec.init.lambda0;
    } else if (spec.init.lambda_rule == InitPolicy::LambdaRule::UnconditionalMean) {
        const auto& c = spec.coef;
        lambda0 = spec.kind == ModelKind::Par ? c.omega1 / (1.0 - c.alpha1 - c.beta1)
                                              : c.omega2 / (1.0 - c.alpha2 - c.beta2);
    } else {
        lambda0 = series.mean();
    }
    // An all-zero series has sample mean 0; fall back to the smallest admissible seed.
    if (lambda0 == 0.0 && !spec.init.lambda0) lambda0 = spec.coef.omega1;
    if (!std::isfinite(lambda0) || !(lambda0 > 0.0)) throw InvalidArgument("lambda0 must be > 0");
    return lambda0;
}

std::vector<double> filter_with_regimes(const CountSeries& series, const Coefficients& coef,
                                        const RegimePath& regimes, double lambda0) {
    std::vector<double> lambdas(series.size());
    double prev = lambda0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto y = static_cast<double>(series[k]);
        prev = regimes[k] ? coef.omega1 + coef.alpha1 * y + coef.beta1 * prev
                          : coef.omega2 + coef.alpha2 * y + coef.beta2 * prev;
        lambdas[k] = prev;
    }
    return lambdas;
}

IntensityPath intensity_filter(const CountSeries& series, const ModelSpec& spec) {
    spec.validate();
    if (series.empty()) throw InvalidArgument("intensity_filter: empty series");
    IntensityPath path;
    path.regimes = regime_path(series, spec);
    path.lambdas = filter_with_regimes(series, spec.coef, path.regimes, resolve_lambda0(series, spec));
    return path;
}

SimulationResult simulate(const ModelSpec& spec, std::size_t n, std::size_t burn_in, std::uint64_t seed) {
    spec.validate();
    if (n == 0) throw InvalidArgument("simulate: n must be positive");

    Rng rng = make_rng(seed);
    const auto& c = spec.coef;
    double lambda = spec.init.lambda0.value_or(
        spec.kind == ModelKind::Par ? c.omega1 / (1.0 - c.alpha1 - c.beta1) : c.omega2 / (1.0 - c.alpha2 - c.beta2));

    auto draw = [&rng](double mean) {
        std::poisson_distribution<Count> poisson(mean);
        return poisson(rng);
    };

    // State carried into the step that consumes the next recorded value.
    Count y_prev = draw(lambda);
    std::uint8_t regime = spec.init.regime0 ? static_cast<std::uint8_t>(*spec.init.regime0)
                                            : static_cast<std::uint8_t>(y_prev <= spec.tau.r ? 1 : 0);
    Count dy_prev = spec.init.delta_y0;

    SimulationResult out;
    out.series.values.reserve(n);
    out.path.lambdas.reserve(n);
    out.path.regimes.reserve(n);

    const std::size_t total = burn_in + n;
    for (std::size_t step = 0; step < total; ++step) {
        const Count y = step == 0 ? y_prev : draw(lambda);
        const Count dy = step == 0 ? dy_prev : y - y_prev;
        if (step == burn_in) {
            out.state.lambda0 = lambda;
            out.state.regime0 = regime;
            out.state.delta_y0 = dy;
            if (step > 0) out.series.previous = y_prev;
        }
        switch (spec.kind) {
            case ModelKind::Par: regime = 1; break;
            case ModelKind::Setpar: regime = y <= spec.tau.r ? 1 : 0; break;
            case ModelKind::Bpart: regime = buffer_indicator(y, regime, spec.tau.r, spec.tau.s); break;
            case ModelKind::Hpart: regime = hysteresis_indicator(y, dy, spec.tau.r, spec.tau.s, spec.tau.c); break;
        }
        const auto yd = static_cast<double>(y);
        lambda = regime ? c.omega1 + c.alpha1 * yd + c.beta1 * lambda : c.omega2 + c.alpha2 * yd + c.beta2 * lambda;
        if (step >= burn_in) {
            out.series.values.push_back(y);
            out.path.lambdas.push_back(lambda);
            out.path.regimes.push_back(regime);
        }
        y_prev = y;
    }
    return out;
}

}  // namespace hpart
