#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hpart {

using Count = std::int64_t;

/**
 * @brief An observed count sequence.
 *
 * The first element of @c values is the conditioning observation y_0: the
 * filter starts from it and the likelihood covers values[1..]. The optional
 * @c previous holds the count observed just before values[0]; when present it
 * fixes the first controlling-factor difference of the hysteretic model.
 */
struct CountSeries {
    std::vector<Count> values;
    std::optional<Count> previous;

    CountSeries() = default;
    explicit CountSeries(std::vector<Count> v, std::optional<Count> prev = std::nullopt);

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] bool empty() const noexcept { return values.empty(); }
    [[nodiscard]] Count operator[](std::size_t i) const { return values[i]; }

    /// Arithmetic mean of the values.
    [[nodiscard]] double mean() const;

    /// Series restricted to the first @p n values (the previous count is kept).
    [[nodiscard]] CountSeries prefix(std::size_t n) const;
};

enum class ModelKind { Par, Setpar, Bpart, Hpart };

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;
/// Parses "par", "setpar", "bpart", "hpart" (case-insensitive).
[[nodiscard]] ModelKind parse_model_kind(std::string_view name);

/// Number of free coefficients: 3 for PAR, 6 for the two-regime models.
[[nodiscard]] constexpr std::size_t coefficient_count(ModelKind kind) noexcept {
    return kind == ModelKind::Par ? 3 : 6;
}

/// Coefficients (omega_i, alpha_i, beta_i) of the two linear regimes.
struct Coefficients {
    double omega1 = 0.0;
    double alpha1 = 0.0;
    double beta1 = 0.0;
    double omega2 = 0.0;
    double alpha2 = 0.0;
    double beta2 = 0.0;

    [[nodiscard]] std::array<double, 6> as_array() const noexcept {
        return {omega1, alpha1, beta1, omega2, alpha2, beta2};
    }
    [[nodiscard]] static Coefficients from_array(const std::array<double, 6>& a) noexcept {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
    [[nodiscard]] static Coefficients par(double omega, double alpha, double beta) noexcept {
        return {omega, alpha, beta, 0.0, 0.0, 0.0};
    }

    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

inline constexpr std::array<std::string_view, 6> kCoefficientNames = {
    "omega1", "alpha1", "beta1", "omega2", "alpha2", "beta2"};

/// Integer thresholds. PAR ignores all of them, SETPAR uses r, BPART r and s.
struct Thresholds {
    Count r = 0;
    Count s = 0;
    Count c = 0;

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// How to seed the filter. Unset fields fall back to the documented rules.
struct InitPolicy {
    enum class LambdaRule { SampleMean, UnconditionalMean };

    /// Explicit lambda_0; when unset, @c lambda_rule decides.
    std::optional<double> lambda0;
    LambdaRule lambda_rule = LambdaRule::SampleMean;
    /// Explicit buffer state before the first step; default I(y_0 <= r).
    std::optional<int> regime0;
    /// Controlling-factor difference for the first step (HPART).
    Count delta_y0 = 0;

    friend bool operator==(const InitPolicy&, const InitPolicy&) = default;
};

/// A fully specified model: kind, coefficients, thresholds and initialization.
struct ModelSpec {
    ModelKind kind = ModelKind::Par;
    Coefficients coef;
    Thresholds tau;
    InitPolicy init;

    /// Throws InvalidArgument unless the coefficients and thresholds are admissible.
    void validate() const;

    [[nodiscard]] static ModelSpec par(double omega, double alpha, double beta);
    [[nodiscard]] static ModelSpec setpar(const Coefficients& coef, Count r);
    [[nodiscard]] static ModelSpec bpart(const Coefficients& coef, Count r, Count s);
    [[nodiscard]] static ModelSpec hpart(const Coefficients& coef, Count r, Count s, Count c);
};

/// Regime labelling convention of the paths: 1 selects the first triple.
using RegimePath = std::vector<std::uint8_t>;

/**
 * @brief Output of the intensity filter.
 *
 * lambdas[k] is the conditional mean of values[k + 1] given values[0..k];
 * the last entry is therefore the one-step-ahead forecast. regimes[k] is the
 * indicator that selected the triple used for lambdas[k].
 */
struct IntensityPath {
    std::vector<double> lambdas;
    RegimePath regimes;

    [[nodiscard]] std::size_t size() const noexcept { return lambdas.size(); }
};

}  // namespace hpart
