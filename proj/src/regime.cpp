#include "hpart/regime.hpp"

#include "hpart/errors.hpp"

namespace hpart {

RegimePath regime_path_bpart(const CountSeries& series, Count r, Count s, int regime0) {
    if (r > s) throw InvalidArgument("regime_path_bpart: r must not exceed s");
    RegimePath out(series.size());
    auto prev = static_cast<std::uint8_t>(regime0 != 0 ? 1 : 0);
    for (std::size_t k = 0; k < series.size(); ++k) {
        prev = buffer_indicator(series[k], prev, r, s);
        out[k] = prev;
    }
    return out;
}

RegimePath regime_path_hpart(const CountSeries& series, Count r, Count s, Count c, Count delta_y0) {
    if (r > s) throw InvalidArgument("regime_path_hpart: r must not exceed s");
    RegimePath out(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        const Count dy = k == 0 ? delta_y0 : series[k] - series[k - 1];
        out[k] = hysteresis_indicator(series[k], dy, r, s, c);
    }
    return out;
}

RegimePath regime_path_setpar(const CountSeries& series, Count r) {
    RegimePath out(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) out[k] = series[k] <= r ? 1 : 0;
    return out;
}

int resolve_regime0(const CountSeries& series, const ModelSpec& spec) {
    if (spec.init.regime0) return *spec.init.regime0;
    if (series.empty()) return 1;
    return series[0] <= spec.tau.r ? 1 : 0;
}

Count resolve_delta_y0(const CountSeries& series, const ModelSpec& spec) {
    if (series.previous && !series.empty()) return series[0] - *series.previous;
    return spec.init.delta_y0;
}

RegimePath regime_path(const CountSeries& series, const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::Par: return RegimePath(series.size(), 1);
        case ModelKind::Setpar: return regime_path_setpar(series, spec.tau.r);
        case ModelKind::Bpart:
            return regime_path_bpart(series, spec.tau.r, spec.tau.s, resolve_regime0(series, spec));
        case ModelKind::Hpart:
            return regime_path_hpart(series, spec.tau.r, spec.tau.s, spec.tau.c, resolve_delta_y0(series, spec));
    }
    throw InvalidArgument("regime_path: unknown model kind");
}

}  // namespace hpart
