#pragma once

#include "hpart/likelihood.hpp"
#include "hpart/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hpart {

/// Lower bound applied to every coefficient (and to 1 - beta, 1 - alpha2 - beta2).
inline constexpr double kCoefficientFloor = 1e-6;
/// Minimum series length accepted by the fitter.
inline constexpr std::size_t kMinFitLength = 30;
/// Wald p-value above which equal regime coefficients are flagged.
inline constexpr double kIdentificationLevel = 0.01;

struct OptimizerConfig {
    std::size_t max_iterations = 2000;
    /// Convergence tolerance on the relative change of the log-likelihood.
    double tolerance = 1e-8;
    /// Starts per threshold cell: one moment-based start plus jittered ones.
    std::size_t multistart = 5;
    std::uint64_t seed = 0;
    /// Worker threads for the grid sweep; 0 uses every core.
    std::size_t threads = 0;
    /**
     * When nonzero, the sweep runs only the moment-based start in every cell
     * and spends the remaining multistarts on the @c refine_top best cells.
     * Zero runs every start in every cell.
     */
    std::size_t refine_top = 0;
};

/// Upper limits of the coefficient box; lower limits are kCoefficientFloor.
struct CoefficientBounds {
    double omega_max = 100.0;
    double alpha_max = 5.0;

    /// Data-scaled defaults: omega_max = 2 (max y + 1) + 10.
    [[nodiscard]] static CoefficientBounds for_series(const CountSeries& series);
};

struct CoefficientFit {
    Coefficients coef;
    double loglik = 0.0;
    bool converged = false;
    std::size_t starts_run = 0;
    std::size_t iterations = 0;
    /// Names of coefficients that ended within 1e-4 of a box edge.
    std::vector<std::string> at_boundary;
};

/**
 * @brief Maximizes the likelihood over the coefficients for fixed thresholds.
 *
 * Runs BFGS on a logistic reparameterization of the coefficient box from
 * cfg.multistart starts plus any @p extra_starts, returning the best.
 * Throws InsufficientData below kMinFitLength values and FitFailure when no
 * start yields a finite converged maximizer.
 */
[[nodiscard]] CoefficientFit fit_coefficients(const CountSeries& series, ModelKind kind, const Thresholds& tau,
                                              const OptimizerConfig& cfg,
                                              std::span<const Coefficients> extra_starts = {},
                                              const InitPolicy& init = {});

/// Candidate threshold tuples for the profile likelihood.
struct ThresholdGrid {
    ModelKind kind = ModelKind::Par;
    std::vector<Thresholds> cells;
    /// Cells rejected by the regime-share rule, kept for reporting.
    std::vector<Thresholds> skipped;

    [[nodiscard]] bool empty() const noexcept { return cells.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return cells.size(); }
};

struct GridOptions {
    std::optional<std::vector<Count>> r_values;
    std::optional<std::vector<Count>> s_values;
    std::optional<std::vector<Count>> c_values;
    /// Each cell must leave this share of values at or below r and above s.
    double min_regime_frac = 0.10;
    double lower_quantile = 0.10;
    double upper_quantile = 0.90;
    std::size_t max_c_candidates = 15;
};

/// Sample quantile with linear interpolation between order statistics.
[[nodiscard]] double sample_quantile(std::vector<double> values, double q);

/// Distinct observed values between two quantiles of @p values.
[[nodiscard]] std::vector<Count> observed_between_quantiles(std::span<const Count> values, double lo, double hi);

/// Builds the default (data-driven) or overridden threshold grid for @p kind.
[[nodiscard]] ThresholdGrid make_grid(const CountSeries& series, ModelKind kind, const GridOptions& options = {});

struct ProfileEntry {
    Thresholds tau;
    double loglik = 0.0;
    bool converged = false;
    /// Index of the earlier cell with the same regime path whose fit was reused.
    std::optional<std::size_t> same_path_as;
    std::string error;
};

struct FitDiagnostics {
    bool converged = false;
    std::size_t multistart = 0;
    std::size_t cells = 0;
    std::size_t distinct_paths = 0;
    std::size_t failed_cells = 0;
    bool identification_suspect = false;
    std::vector<std::string> at_boundary;
    std::vector<std::string> notes;
};

struct FitResult {
    ModelSpec spec_hat;
    double loglik = 0.0;
    std::size_t terms = 0;
    std::optional<InformationMatrix> info;
    /// sqrt(diag(G^-1 / n)); empty when the information matrix is singular.
    std::vector<double> std_errors;
    std::vector<ProfileEntry> profile;
    FitDiagnostics diagnostics;
};

/**
 * @brief Profile maximum likelihood over a threshold grid.
 *
 * Fits the coefficients in every cell, keeps the best (ties go to the
 * smallest r, then s, then |c|, then c) and attaches G^ and standard errors.
 * The fitted spec carries the resolved lambda_0 so it can be replayed on
 * extensions of the series. Throws InvalidArgument on an empty grid and
 * FitFailure when every cell fails.
 */
[[nodiscard]] FitResult fit(const CountSeries& series, ModelKind kind, const ThresholdGrid& grid,
                            const OptimizerConfig& cfg = {});

/// Convenience overload that builds the default grid.
[[nodiscard]] FitResult fit(const CountSeries& series, ModelKind kind, const GridOptions& grid_options = {},
                            const OptimizerConfig& cfg = {});

/// sqrt(diag(G^-1 / n)) at the fitted model; throws SingularInformation.
[[nodiscard]] std::vector<double> standard_errors(const FitResult& fit);

/// Rebuilds a FitResult-shaped summary for a given spec without optimizing.
[[nodiscard]] FitResult evaluate_at(const CountSeries& series, const ModelSpec& spec);

}  // namespace hpart
