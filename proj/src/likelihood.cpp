#include "hpart/likelihood.hpp"

#include "hpart/errors.hpp"
#include "hpart/filter.hpp"
#include "hpart/regime.hpp"

#include <cmath>
#include <limits>

namespace hpart {

namespace {

const std::array<double, 21>& log_factorial_table() {
    static const std::array<double, 21> table = [] {
        std::array<double, 21> t{};
        double acc = 0.0;
        t[0] = 0.0;
        for (int i = 1; i <= 20; ++i) {
            acc += std::log(static_cast<double>(i));
            t[static_cast<std::size_t>(i)] = acc;
        }
        return t;
    }();
    return table;
}

// Adds one step of the chain rule: g_k = e_k + beta_regime * g_{k-1}.
inline void advance_gradient(Gradient& g, std::uint8_t regime, double y_prev, double lambda_prev,
                             const Coefficients& coef) {
    const double beta = regime ? coef.beta1 : coef.beta2;
    for (auto& v : g) v *= beta;
    const std::size_t off = regime ? 0 : 3;
    g[off] += 1.0;
    g[off + 1] += y_prev;
    g[off + 2] += lambda_prev;
}

}  // namespace

double log_factorial(Count y) {
    if (y < 0) throw InvalidArgument("log_factorial: negative argument");
    if (y <= 20) return log_factorial_table()[static_cast<std::size_t>(y)];
    return std::lgamma(static_cast<double>(y) + 1.0);
}

double poisson_log_pmf(Count y, double lambda) {
    return -lambda + static_cast<double>(y) * std::log(lambda) - log_factorial(y);
}

LogLikelihood log_likelihood(const CountSeries& series, const ModelSpec& spec) {
    LogLikelihood out;
    out.path = intensity_filter(series, spec);
    for (std::size_t k = 1; k < series.size(); ++k) {
        out.value += poisson_log_pmf(series[k], out.path.lambdas[k - 1]);
    }
    return out;
}

GradientPath intensity_gradient(const CountSeries& series, const ModelSpec& spec) {
    const IntensityPath path = intensity_filter(series, spec);
    const double lambda0 = resolve_lambda0(series, spec);
    GradientPath out;
    out.steps.resize(series.size());
    Gradient g{};
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double lambda_prev = k == 0 ? lambda0 : path.lambdas[k - 1];
        advance_gradient(g, path.regimes[k], static_cast<double>(series[k]), lambda_prev, spec.coef);
        out.steps[k] = g;
    }
    return out;
}

Gradient score(const CountSeries& series, const ModelSpec& spec) {
    const IntensityPath path = intensity_filter(series, spec);
    const GradientPath grad = intensity_gradient(series, spec);
    Gradient out{};
    for (std::size_t k = 1; k < series.size(); ++k) {
        const double w = static_cast<double>(series[k]) / path.lambdas[k - 1] - 1.0;
        for (std::size_t j = 0; j < 6; ++j) out[j] += w * grad.steps[k - 1][j];
    }
    return out;
}

Eigen::MatrixXd guarded_spd_inverse(const Eigen::MatrixXd& m) {
    if (!m.allFinite()) throw NumericalFailure("matrix has non-finite entries");
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    if (eig.info() != Eigen::Success) throw NumericalFailure("eigendecomposition failed");
    const auto& ev = eig.eigenvalues();
    const double max_ev = ev.maxCoeff();
    const double min_ev = ev.minCoeff();
    if (!(max_ev > 0.0) || !(min_ev > 0.0) || max_ev / min_ev > kMaxConditionNumber) {
        throw SingularInformation("information matrix is singular or ill-conditioned (eigenvalues " +
                                  std::to_string(min_ev) + " .. " + std::to_string(max_ev) + ")");
    }
    return eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::MatrixXd InformationMatrix::inverse() const { return guarded_spd_inverse(g_); }

Eigen::MatrixXd InformationMatrix::covariance() const {
    if (terms_ == 0) throw InsufficientData("information matrix has no terms");
    return inverse() / static_cast<double>(terms_);
}

InformationMatrix information_matrix(const CountSeries& series, const ModelSpec& spec) {
    const IntensityPath path = intensity_filter(series, spec);
    const GradientPath grad = intensity_gradient(series, spec);
    const auto dim = static_cast<Eigen::Index>(coefficient_count(spec.kind));
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    const std::size_t terms = likelihood_terms(series);
    if (terms == 0) throw InsufficientData("information_matrix: need at least two values");
    Eigen::VectorXd d(dim);
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        for (Eigen::Index j = 0; j < dim; ++j) d[j] = grad.steps[k][static_cast<std::size_t>(j)];
        g.noalias() += (d * d.transpose()) / path.lambdas[k];
    }
    g /= static_cast<double>(terms);
    return {std::move(g), terms};
}

LikelihoodKernel::LikelihoodKernel(const CountSeries& series, RegimePath regimes, double lambda0)
    : regimes_(std::move(regimes)), lambda0_(lambda0) {
    if (regimes_.size() != series.size()) throw InvalidArgument("regime path length mismatch");
    y_.reserve(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        y_.push_back(static_cast<double>(series[k]));
        if (k > 0) log_factorials_ += log_factorial(series[k]);
    }
}

double LikelihoodKernel::evaluate(const Coefficients& coef, Gradient* grad) const {
    const std::size_t n = y_.size();
    double ll = 0.0;
    double lambda = lambda0_;
    Gradient g{};
    Gradient sc{};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double y_prev = y_[k];
        const double lambda_prev = lambda;
        const std::uint8_t reg = regimes_[k];
        lambda = reg ? coef.omega1 + coef.alpha1 * y_prev + coef.beta1 * lambda_prev
                     : coef.omega2 + coef.alpha2 * y_prev + coef.beta2 * lambda_prev;
        if (!(lambda > 0.0) || !std::isfinite(lambda)) return -std::numeric_limits<double>::infinity();
        const double y = y_[k + 1];
        ll += -lambda + (y > 0.0 ? y * std::log(lambda) : 0.0);
        if (grad != nullptr) {
            advance_gradient(g, reg, y_prev, lambda_prev, coef);
            const double w = y / lambda - 1.0;
            for (std::size_t j = 0; j < 6; ++j) sc[j] += w * g[j];
        }
    }
    if (grad != nullptr) *grad = sc;
    return ll;
}

}  // namespace hpart
