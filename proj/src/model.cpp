#include "hpart/model.hpp"

#include "hpart/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace hpart {

CountSeries::CountSeries(std::vector<Count> v, std::optional<Count> prev)
    : values(std::move(v)), previous(prev) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0) {
            throw InvalidArgument("negative count at position " + std::to_string(i));
        }
    }
    if (previous && *previous < 0) throw InvalidArgument("negative previous count");
}

double CountSeries::mean() const {
    if (values.empty()) return 0.0;
    const double sum = std::accumulate(values.begin(), values.end(), 0.0,
                                       [](double acc, Count v) { return acc + static_cast<double>(v); });
    return sum / static_cast<double>(values.size());
}

CountSeries CountSeries::prefix(std::size_t n) const {
    CountSeries out;
    out.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(std::min(n, values.size())));
    out.previous = previous;
    return out;
}

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::Par: return "par";
        case ModelKind::Setpar: return "setpar";
        case ModelKind::Bpart: return "bpart";
        case ModelKind::Hpart: return "hpart";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "par") return ModelKind::Par;
    if (lower == "setpar") return ModelKind::Setpar;
    if (lower == "bpart") return ModelKind::Bpart;
    if (lower == "hpart") return ModelKind::Hpart;
    throw InvalidArgument("unknown model kind '" + std::string(name) + "'");
}

namespace {

void check_triple(double omega, double alpha, double beta, const char* label) {
    const std::string l(label);
    if (!std::isfinite(omega) || !(omega > 0.0)) throw InvalidArgument("omega" + l + " must be > 0");
    if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidArgument("alpha" + l + " must be >= 0");
    if (!std::isfinite(beta) || beta < 0.0 || beta >= 1.0) {
        throw InvalidArgument("beta" + l + " must lie in [0, 1)");
    }
}

}  // namespace

void ModelSpec::validate() const {
    check_triple(coef.omega1, coef.alpha1, coef.beta1, "1");
    if (kind == ModelKind::Par) {
        if (coef.alpha1 + coef.beta1 >= 1.0) throw InvalidArgument("PAR requires alpha + beta < 1");
    } else {
        check_triple(coef.omega2, coef.alpha2, coef.beta2, "2");
        if (coef.alpha2 + coef.beta2 >= 1.0) throw InvalidArgument("alpha2 + beta2 must be < 1");
        if (tau.r < 0) throw InvalidArgument("threshold r must be >= 0");
        if (kind != ModelKind::Setpar && tau.s < tau.r) throw InvalidArgument("thresholds require r <= s");
    }
    if (init.lambda0 && !(*init.lambda0 > 0.0)) throw InvalidArgument("lambda0 must be > 0");
    if (init.regime0 && *init.regime0 != 0 && *init.regime0 != 1) {
        throw InvalidArgument("initial regime must be 0 or 1");
    }
}

ModelSpec ModelSpec::par(double omega, double alpha, double beta) {
    ModelSpec spec;
    spec.kind = ModelKind::Par;
    spec.coef = Coefficients::par(omega, alpha, beta);
    return spec;
}

ModelSpec ModelSpec::setpar(const Coefficients& coef, Count r) {
    ModelSpec spec;
    spec.kind = ModelKind::Setpar;
    spec.coef = coef;
    spec.tau = {r, r, 0};
    return spec;
}

ModelSpec ModelSpec::bpart(const Coefficients& coef, Count r, Count s) {
    ModelSpec spec;
    spec.kind = ModelKind::Bpart;
    spec.coef = coef;
    spec.tau = {r, s, 0};
    return spec;
}

ModelSpec ModelSpec::hpart(const Coefficients& coef, Count r, Count s, Count c) {
    ModelSpec spec;
    spec.kind = ModelKind::Hpart;
    spec.coef = coef;
    spec.tau = {r, s, c};
    return spec;
}

}  // namespace hpart
