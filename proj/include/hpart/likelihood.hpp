#pragma once

#include "hpart/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace hpart {

using Gradient = std::array<double, 6>;

/// log(y!) via lgamma(y + 1); exact table for y <= 20.
[[nodiscard]] double log_factorial(Count y);

/// Poisson log-probability of @p y at mean @p lambda.
[[nodiscard]] double poisson_log_pmf(Count y, double lambda);

/// Number of likelihood terms for a series: every value after the first.
[[nodiscard]] inline std::size_t likelihood_terms(const CountSeries& series) noexcept {
    return series.size() > 0 ? series.size() - 1 : 0;
}

struct LogLikelihood {
    double value = 0.0;
    IntensityPath path;
};

/**
 * @brief Conditional Poisson log-likelihood.
 *
 * Sums -lambda + y log(lambda) - log(y!) over values[1..], pairing values[k]
 * with path.lambdas[k - 1].
 */
[[nodiscard]] LogLikelihood log_likelihood(const CountSeries& series, const ModelSpec& spec);

/// d lambda_k / d theta for every filter step, thresholds held fixed.
struct GradientPath {
    std::vector<Gradient> steps;
    [[nodiscard]] std::size_t size() const noexcept { return steps.size(); }
};

[[nodiscard]] GradientPath intensity_gradient(const CountSeries& series, const ModelSpec& spec);

/// Score sum_t (y_t / lambda_t - 1) d lambda_t / d theta.
[[nodiscard]] Gradient score(const CountSeries& series, const ModelSpec& spec);

/**
 * @brief Plug-in information estimate G^ = n^-1 sum lambda^-1 (dlambda)(dlambda)^T.
 *
 * Dimension is coefficient_count(kind): PAR keeps only its own triple.
 */
class InformationMatrix {
public:
    InformationMatrix() = default;
    InformationMatrix(Eigen::MatrixXd g, std::size_t terms) : g_(std::move(g)), terms_(terms) {}

    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return g_; }
    [[nodiscard]] std::size_t terms() const noexcept { return terms_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return g_.rows(); }

    /// G^-1 (throws SingularInformation when the condition number exceeds 1e12).
    [[nodiscard]] Eigen::MatrixXd inverse() const;
    /// G^-1 / n, the asymptotic covariance of the coefficient estimates.
    [[nodiscard]] Eigen::MatrixXd covariance() const;

private:
    Eigen::MatrixXd g_;
    std::size_t terms_ = 0;
};

inline constexpr double kMaxConditionNumber = 1e12;

[[nodiscard]] InformationMatrix information_matrix(const CountSeries& series, const ModelSpec& spec);

/**
 * @brief Symmetric inverse with a condition-number guard.
 *
 * Throws SingularInformation for an indefinite or ill-conditioned matrix and
 * NumericalFailure for non-finite input.
 */
[[nodiscard]] Eigen::MatrixXd guarded_spd_inverse(const Eigen::MatrixXd& m);

/**
 * @brief Likelihood kernel for a fixed regime path.
 *
 * Used by the optimizer: the regime indicators do not depend on the
 * coefficients, so they are computed once per threshold cell.
 */
class LikelihoodKernel {
public:
    LikelihoodKernel(const CountSeries& series, RegimePath regimes, double lambda0);

    /// Log-likelihood without the log(y!) constant; fills @p grad when non-null.
    /// Returns -infinity if an intensity becomes non-positive or non-finite.
    [[nodiscard]] double evaluate(const Coefficients& coef, Gradient* grad) const;

    /// Full log-likelihood including the log(y!) terms.
    [[nodiscard]] double full(const Coefficients& coef) const { return evaluate(coef, nullptr) - log_factorials_; }

    [[nodiscard]] std::size_t terms() const noexcept { return y_.size() > 0 ? y_.size() - 1 : 0; }
    [[nodiscard]] const RegimePath& regimes() const noexcept { return regimes_; }
    [[nodiscard]] double lambda0() const noexcept { return lambda0_; }

private:
    std::vector<double> y_;
    RegimePath regimes_;
    double lambda0_;
    double log_factorials_ = 0.0;
};

}  // namespace hpart
