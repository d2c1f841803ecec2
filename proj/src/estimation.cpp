#include "hpart/estimation.hpp"

#include "hpart/errors.hpp"
#include "hpart/filter.hpp"
#include "hpart/optimizer.hpp"
#include "hpart/parallel.hpp"
#include "hpart/regime.hpp"
#include "hpart/rng.hpp"
#include "hpart/stats.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string_view>
#include <tuple>
#include <unordered_map>

namespace hpart {

namespace {

constexpr double kLo = kCoefficientFloor;
constexpr double kBoundaryTol = 1e-4;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double logit_clamped(double p) {
    p = std::clamp(p, 1e-9, 1.0 - 1e-9);
    return std::log(p / (1.0 - p));
}

/**
 * Maps unconstrained u to the coefficient box.
 *
 * Regime 1: omega, alpha, beta each through a scaled logistic.
 * Regime 2 (and PAR's single triple): omega as above, then the persistence
 * p = alpha + beta in (2 lo, 1 - lo) and its split w = alpha share.
 */
class CoefficientTransform {
public:
    CoefficientTransform(ModelKind kind, CoefficientBounds bounds) : kind_(kind), b_(bounds) {}

    [[nodiscard]] Eigen::Index dim() const { return static_cast<Eigen::Index>(coefficient_count(kind_)); }

    Coefficients to_coef(const Eigen::VectorXd& u, Eigen::MatrixXd* jac) const {
        Coefficients c;
        if (jac != nullptr) jac->setZero(6, dim());
        if (kind_ == ModelKind::Par) {
            constrained_triple(u, 0, c.omega1, c.alpha1, c.beta1, jac, 0);
            return c;
        }
        const double s0 = logistic(u[0]);
        const double s1 = logistic(u[1]);
        const double s2 = logistic(u[2]);
        c.omega1 = kLo + (b_.omega_max - kLo) * s0;
        c.alpha1 = kLo + (b_.alpha_max - kLo) * s1;
        c.beta1 = kLo + (1.0 - 2.0 * kLo) * s2;
        if (jac != nullptr) {
            (*jac)(0, 0) = (b_.omega_max - kLo) * s0 * (1.0 - s0);
            (*jac)(1, 1) = (b_.alpha_max - kLo) * s1 * (1.0 - s1);
            (*jac)(2, 2) = (1.0 - 2.0 * kLo) * s2 * (1.0 - s2);
        }
        constrained_triple(u, 3, c.omega2, c.alpha2, c.beta2, jac, 3);
        return c;
    }

    [[nodiscard]] Eigen::VectorXd to_unconstrained(const Coefficients& c) const {
        Eigen::VectorXd u(dim());
        if (kind_ == ModelKind::Par) {
            inverse_triple(c.omega1, c.alpha1, c.beta1, u, 0);
            return u;
        }
        u[0] = logit_clamped((c.omega1 - kLo) / (b_.omega_max - kLo));
        u[1] = logit_clamped((c.alpha1 - kLo) / (b_.alpha_max - kLo));
        u[2] = logit_clamped((c.beta1 - kLo) / (1.0 - 2.0 * kLo));
        inverse_triple(c.omega2, c.alpha2, c.beta2, u, 3);
        return u;
    }

private:
    void constrained_triple(const Eigen::VectorXd& u, Eigen::Index off, double& omega, double& alpha, double& beta,
                            Eigen::MatrixXd* jac, Eigen::Index row) const {
        const double so = logistic(u[off]);
        const double sp = logistic(u[off + 1]);
        const double w = logistic(u[off + 2]);
        const double q = (1.0 - 3.0 * kLo) * sp;  // p - 2 lo
        omega = kLo + (b_.omega_max - kLo) * so;
        alpha = kLo + q * w;
        beta = kLo + q * (1.0 - w);
        if (jac != nullptr) {
            const double dq = (1.0 - 3.0 * kLo) * sp * (1.0 - sp);
            const double dw = w * (1.0 - w);
            (*jac)(row, off) = (b_.omega_max - kLo) * so * (1.0 - so);
            (*jac)(row + 1, off + 1) = dq * w;
            (*jac)(row + 2, off + 1) = dq * (1.0 - w);
            (*jac)(row + 1, off + 2) = q * dw;
            (*jac)(row + 2, off + 2) = -q * dw;
        }
    }

    void inverse_triple(double omega, double alpha, double beta, Eigen::VectorXd& u, Eigen::Index off) const {
        const double a = std::max(alpha - kLo, 0.0);
        const double bb = std::max(beta - kLo, 0.0);
        const double q = a + bb;
        u[off] = logit_clamped((omega - kLo) / (b_.omega_max - kLo));
        u[off + 1] = logit_clamped(q / (1.0 - 3.0 * kLo));
        u[off + 2] = logit_clamped(q > 0.0 ? a / q : 0.5);
    }

    ModelKind kind_;
    CoefficientBounds b_;
};

std::vector<std::string> boundary_hits(ModelKind kind, const Coefficients& c, const CoefficientBounds& b) {
    std::vector<std::string> hits;
    const auto a = c.as_array();
    const std::size_t count = coefficient_count(kind);
    for (std::size_t j = 0; j < count; ++j) {
        const bool is_omega = j % 3 == 0;
        const bool is_alpha = j % 3 == 1;
        double hi = is_omega ? b.omega_max : (is_alpha ? b.alpha_max : 1.0 - kLo);
        if (a[j] <= kLo + kBoundaryTol || a[j] >= hi - kBoundaryTol) hits.emplace_back(kCoefficientNames[j]);
    }
    const bool persistence_capped = kind == ModelKind::Par ? c.alpha1 + c.beta1 >= 1.0 - kLo - kBoundaryTol
                                                           : c.alpha2 + c.beta2 >= 1.0 - kLo - kBoundaryTol;
    if (persistence_capped) hits.emplace_back(kind == ModelKind::Par ? "alpha1+beta1" : "alpha2+beta2");
    return hits;
}

// Mean of the next value over the steps assigned to each regime.
std::array<double, 2> regime_means(const CountSeries& series, const RegimePath& regimes) {
    std::array<double, 2> sum{0.0, 0.0};
    std::array<double, 2> cnt{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        const std::size_t idx = regimes[k] ? 0 : 1;
        sum[idx] += static_cast<double>(series[k + 1]);
        cnt[idx] += 1.0;
    }
    const double overall = std::max(series.mean(), 0.1);
    return {cnt[0] > 0 ? std::max(sum[0] / cnt[0], 0.1) : overall, cnt[1] > 0 ? std::max(sum[1] / cnt[1], 0.1) : overall};
}

Coefficients moment_start(ModelKind kind, const std::array<double, 2>& means) {
    constexpr double kAlpha = 0.3;
    constexpr double kBeta = 0.4;
    const double m1 = kind == ModelKind::Par ? std::max(means[0], 0.1) : means[0];
    return {m1 * (1.0 - kAlpha - kBeta), kAlpha, kBeta, means[1] * (1.0 - kAlpha - kBeta), kAlpha, kBeta};
}

Coefficients jittered_start(const std::array<double, 2>& means, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a1 = 0.02 + 0.58 * unit(rng);
    const double b1 = 0.02 + 0.88 * unit(rng);
    const double p2 = 0.10 + 0.85 * unit(rng);
    const double w2 = 0.05 + 0.90 * unit(rng);
    const double a2 = p2 * w2;
    const double b2 = p2 * (1.0 - w2);
    const double o1 = means[0] * std::max(0.05, 1.0 - a1 - b1) * (0.5 + unit(rng));
    const double o2 = means[1] * std::max(0.05, 1.0 - p2) * (0.5 + unit(rng));
    return {o1, a1, b1, o2, a2, b2};
}

std::uint64_t fnv1a(const RegimePath& path) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto v : path) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return h;
}

// Per-path stream so that identical regime paths always see identical starts.
std::uint64_t path_stream(const RegimePath& path, ModelKind kind) {
    return fnv1a(path) ^ (static_cast<std::uint64_t>(kind) << 56);
}

struct KernelFit {
    CoefficientFit best;
    bool any_finite = false;
};

KernelFit run_starts(const LikelihoodKernel& kernel, const CountSeries& series, ModelKind kind,
                     const CoefficientBounds& bounds, const OptimizerConfig& cfg, std::size_t first_start,
                     std::size_t last_start, std::span<const Coefficients> extra_starts) {
    const CoefficientTransform transform(kind, bounds);
    const auto terms = static_cast<double>(kernel.terms());
    const Objective objective = [&](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
        Eigen::MatrixXd jac;
        const Coefficients coef = transform.to_coef(u, grad != nullptr ? &jac : nullptr);
        Gradient g{};
        const double ll = kernel.evaluate(coef, grad != nullptr ? &g : nullptr);
        if (!std::isfinite(ll)) return std::numeric_limits<double>::infinity();
        if (grad != nullptr) {
            Eigen::Map<const Eigen::Matrix<double, 6, 1>> gv(g.data());
            *grad = -(jac.transpose() * gv) / terms;
        }
        return -ll / terms;
    };

    BfgsOptions opts;
    opts.max_iterations = cfg.max_iterations;
    opts.f_tol = cfg.tolerance;

    const auto means = regime_means(series, kernel.regimes());
    Rng rng = make_rng(cfg.seed, path_stream(kernel.regimes(), kind));
    // Jitter draws are consumed in start order so skipped early starts keep later ones stable.
    std::vector<Coefficients> starts;
    const std::size_t multistart = std::max<std::size_t>(cfg.multistart, 1);
    for (std::size_t i = 0; i < multistart; ++i) {
        const Coefficients start = i == 0 ? moment_start(kind, means) : jittered_start(means, rng);
        if (i >= first_start && i < last_start) starts.push_back(start);
    }
    starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

    KernelFit out;
    out.best.loglik = -std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        const BfgsResult res = minimize_bfgs(objective, transform.to_unconstrained(start), opts);
        ++out.best.starts_run;
        out.best.iterations += res.iterations;
        if (!std::isfinite(res.f)) continue;
        out.any_finite = true;
        const double ll = -res.f * terms;
        // Prefer converged starts; among equals, the higher likelihood.
        const bool better = (res.converged && !out.best.converged) ||
                            (res.converged == out.best.converged && ll > out.best.loglik);
        if (better) {
            out.best.coef = transform.to_coef(res.x, nullptr);
            out.best.loglik = ll;
            out.best.converged = res.converged;
        }
    }
    if (out.any_finite) {
        out.best.loglik = kernel.full(out.best.coef);
        out.best.at_boundary = boundary_hits(kind, out.best.coef, bounds);
    }
    return out;
}

RegimePath cell_regimes(const CountSeries& series, ModelKind kind, const Thresholds& tau, const InitPolicy& init) {
    ModelSpec spec;
    spec.kind = kind;
    spec.tau = tau;
    spec.init = init;
    return regime_path(series, spec);
}

double default_lambda0(const CountSeries& series, const InitPolicy& init) {
    if (init.lambda0) return *init.lambda0;
    const double m = series.mean();
    return m > 0.0 ? m : 1.0;
}

void check_fit_input(const CountSeries& series) {
    if (series.size() < kMinFitLength) {
        throw InsufficientData("fitting requires at least " + std::to_string(kMinFitLength) + " values, got " +
                               std::to_string(series.size()));
    }
}

auto tie_key(const Thresholds& t) { return std::make_tuple(t.r, t.s, t.c < 0 ? -t.c : t.c, t.c); }

}  // namespace

CoefficientBounds CoefficientBounds::for_series(const CountSeries& series) {
    Count max_y = 0;
    for (const auto v : series.values) max_y = std::max(max_y, v);
    CoefficientBounds b;
    b.omega_max = 2.0 * (static_cast<double>(max_y) + 1.0) + 10.0;
    return b;
}

CoefficientFit fit_coefficients(const CountSeries& series, ModelKind kind, const Thresholds& tau,
                                const OptimizerConfig& cfg, std::span<const Coefficients> extra_starts,
                                const InitPolicy& init) {
    check_fit_input(series);
    if (kind != ModelKind::Par && kind != ModelKind::Setpar && tau.r > tau.s) {
        throw InvalidArgument("fit_coefficients: thresholds require r <= s");
    }
    const LikelihoodKernel kernel(series, cell_regimes(series, kind, tau, init), default_lambda0(series, init));
    const auto bounds = CoefficientBounds::for_series(series);
    const KernelFit res = run_starts(kernel, series, kind, bounds, cfg, 0, std::max<std::size_t>(cfg.multistart, 1),
                                     extra_starts);
    if (!res.any_finite) throw FitFailure("all optimizer starts failed");
    if (!res.best.converged) throw FitFailure("optimizer did not converge within the iteration limit");
    return res.best;
}

double sample_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidArgument("sample_quantile: empty input");
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<Count> observed_between_quantiles(std::span<const Count> values, double lo, double hi) {
    if (values.empty()) return {};
    std::vector<double> as_double(values.begin(), values.end());
    const double qlo = sample_quantile(as_double, lo);
    const double qhi = sample_quantile(as_double, hi);
    std::vector<Count> out;
    for (const auto v : values) {
        const auto d = static_cast<double>(v);
        if (d >= qlo && d <= qhi) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<Count> thin_evenly(std::vector<Count> values, std::size_t cap) {
    if (cap == 0 || values.size() <= cap) return values;
    std::vector<Count> out;
    out.reserve(cap);
    const double step = static_cast<double>(values.size() - 1) / static_cast<double>(cap - 1);
    for (std::size_t i = 0; i < cap; ++i) {
        out.push_back(values[static_cast<std::size_t>(std::lround(static_cast<double>(i) * step))]);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ThresholdGrid make_grid(const CountSeries& series, ModelKind kind, const GridOptions& options) {
    ThresholdGrid grid;
    grid.kind = kind;
    if (kind == ModelKind::Par) {
        grid.cells.push_back({});
        return grid;
    }
    if (series.empty()) throw InvalidArgument("make_grid: empty series");

    const auto level_candidates = [&] {
        return observed_between_quantiles(series.values, options.lower_quantile, options.upper_quantile);
    };
    const std::vector<Count> r_values = options.r_values.value_or(level_candidates());
    const std::vector<Count> s_values = options.s_values.value_or(r_values);
    std::vector<Count> c_values{0};
    if (kind == ModelKind::Hpart) {
        if (options.c_values) {
            c_values = *options.c_values;
        } else {
            std::vector<Count> diffs;
            for (std::size_t k = 1; k < series.size(); ++k) diffs.push_back(series[k] - series[k - 1]);
            c_values = thin_evenly(observed_between_quantiles(diffs, options.lower_quantile, options.upper_quantile),
                                   options.max_c_candidates);
            if (c_values.empty()) c_values.push_back(0);
        }
    }

    const auto n = static_cast<double>(series.size());
    const auto share_at_or_below = [&](Count v) {
        return static_cast<double>(std::count_if(series.values.begin(), series.values.end(),
                                                 [v](Count y) { return y <= v; })) / n;
    };
    const auto admissible = [&](Count r, Count s) {
        return share_at_or_below(r) >= options.min_regime_frac && 1.0 - share_at_or_below(s) >= options.min_regime_frac;
    };

    for (const Count r : r_values) {
        if (r < 0) throw InvalidArgument("make_grid: negative threshold r");
        if (kind == ModelKind::Setpar) {
            (admissible(r, r) ? grid.cells : grid.skipped).push_back({r, r, 0});
            continue;
        }
        for (const Count s : s_values) {
            if (s <= r) continue;
            for (const Count c : c_values) {
                const Thresholds t{r, s, kind == ModelKind::Hpart ? c : 0};
                (admissible(r, s) ? grid.cells : grid.skipped).push_back(t);
            }
        }
    }
    if (grid.cells.empty()) throw InvalidArgument("make_grid: no admissible threshold cells");
    return grid;
}

FitResult fit(const CountSeries& series, ModelKind kind, const ThresholdGrid& grid, const OptimizerConfig& cfg) {
    check_fit_input(series);
    if (grid.empty()) throw InvalidArgument("fit: empty threshold grid");
    for (const auto& t : grid.cells) {
        if ((kind == ModelKind::Bpart || kind == ModelKind::Hpart) && !(t.r < t.s)) {
            throw InvalidArgument("fit: grid cells require r < s");
        }
    }

    const InitPolicy init{};
    const double lambda0 = default_lambda0(series, init);
    const auto bounds = CoefficientBounds::for_series(series);
    const std::size_t multistart = std::max<std::size_t>(cfg.multistart, 1);

    // Cells with identical regime paths have identical likelihoods; fit each path once.
    std::vector<std::size_t> representative(grid.size());
    std::vector<std::size_t> unique_cells;
    std::vector<RegimePath> unique_paths;
    {
        std::unordered_map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            RegimePath path = cell_regimes(series, kind, grid.cells[i], init);
            std::string key(path.begin(), path.end());
            auto [it, inserted] = seen.try_emplace(std::move(key), unique_cells.size());
            if (inserted) {
                unique_cells.push_back(i);
                unique_paths.push_back(std::move(path));
            }
            representative[i] = it->second;
        }
    }

    struct CellOutcome {
        KernelFit fit;
        std::string error;
    };
    std::vector<CellOutcome> outcomes(unique_cells.size());
    const bool screening = cfg.refine_top > 0 && multistart > 1;
    const std::size_t first_pass_starts = screening ? 1 : multistart;

    parallel_for(unique_cells.size(), cfg.threads, [&](std::size_t u) {
        try {
            const LikelihoodKernel kernel(series, unique_paths[u], lambda0);
            outcomes[u].fit = run_starts(kernel, series, kind, bounds, cfg, 0, first_pass_starts, {});
        } catch (const Error& e) {
            outcomes[u].error = e.what();
        }
    });

    if (screening) {
        std::vector<std::size_t> order(unique_cells.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return outcomes[a].fit.best.loglik > outcomes[b].fit.best.loglik;
        });
        order.resize(std::min(order.size(), cfg.refine_top));
        parallel_for(order.size(), cfg.threads, [&](std::size_t i) {
            const std::size_t u = order[i];
            if (!outcomes[u].fit.any_finite) return;
            const LikelihoodKernel kernel(series, unique_paths[u], lambda0);
            KernelFit more = run_starts(kernel, series, kind, bounds, cfg, 1, multistart, {});
            auto& cur = outcomes[u].fit;
            cur.best.starts_run += more.best.starts_run;
            cur.best.iterations += more.best.iterations;
            const bool better = more.any_finite && ((more.best.converged && !cur.best.converged) ||
                                                    (more.best.converged == cur.best.converged &&
                                                     more.best.loglik > cur.best.loglik));
            if (better) {
                more.best.starts_run = cur.best.starts_run;
                more.best.iterations = cur.best.iterations;
                cur.best = std::move(more.best);
            }
        });
    }

    FitResult result;
    result.terms = likelihood_terms(series);
    result.diagnostics.multistart = multistart;
    result.diagnostics.cells = grid.size();
    result.diagnostics.distinct_paths = unique_cells.size();
    result.profile.reserve(grid.size());

    std::optional<std::size_t> best_cell;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t u = representative[i];
        const auto& out = outcomes[u];
        ProfileEntry entry;
        entry.tau = grid.cells[i];
        if (unique_cells[u] != i) entry.same_path_as = unique_cells[u];
        if (!out.error.empty() || !out.fit.any_finite) {
            entry.loglik = -std::numeric_limits<double>::infinity();
            entry.error = out.error.empty() ? "all optimizer starts failed" : out.error;
            if (unique_cells[u] == i) ++result.diagnostics.failed_cells;
        } else {
            entry.loglik = out.fit.best.loglik;
            entry.converged = out.fit.best.converged;
            if (!entry.converged && unique_cells[u] == i) {
                ++result.diagnostics.failed_cells;
                entry.error = "did not converge";
            }
        }
        result.profile.push_back(entry);
        if (!entry.error.empty()) continue;
        if (!best_cell) {
            best_cell = i;
            continue;
        }
        const auto& cur = result.profile[*best_cell];
        if (entry.loglik > cur.loglik || (entry.loglik == cur.loglik && tie_key(entry.tau) < tie_key(cur.tau))) {
            best_cell = i;
        }
    }
    if (!best_cell) throw FitFailure("fit: every threshold cell failed");

    const auto& best = outcomes[representative[*best_cell]].fit.best;
    result.loglik = result.profile[*best_cell].loglik;
    result.spec_hat.kind = kind;
    result.spec_hat.coef = best.coef;
    if (kind == ModelKind::Par) {
        result.spec_hat.coef.omega2 = result.spec_hat.coef.alpha2 = result.spec_hat.coef.beta2 = 0.0;
    }
    result.spec_hat.tau = grid.cells[*best_cell];
    result.spec_hat.init.lambda0 = lambda0;
    result.diagnostics.converged = best.converged;
    result.diagnostics.at_boundary = best.at_boundary;

    // Identification check over distinct regime paths.
    std::vector<double> distinct;
    for (std::size_t u = 0; u < outcomes.size(); ++u) {
        if (outcomes[u].error.empty() && outcomes[u].fit.any_finite && outcomes[u].fit.best.converged) {
            distinct.push_back(outcomes[u].fit.best.loglik);
        }
    }
    if (distinct.size() >= 2) {
        std::partial_sort(distinct.begin(), distinct.begin() + 2, distinct.end(), std::greater<>());
        if (distinct[0] - distinct[1] < 1e-6 * static_cast<double>(result.terms)) {
            result.diagnostics.identification_suspect = true;
            result.diagnostics.notes.emplace_back("identification-suspect: flat threshold profile");
        }
    }
    if (!grid.skipped.empty()) {
        result.diagnostics.notes.push_back(std::to_string(grid.skipped.size()) +
                                           " grid cells skipped by the regime-share rule");
    }

    try {
        result.info = information_matrix(series, result.spec_hat);
        result.std_errors = standard_errors(result);
    } catch (const SingularInformation& e) {
        result.diagnostics.notes.push_back(std::string("standard errors unavailable: ") + e.what());
    } catch (const NumericalFailure& e) {
        result.diagnostics.notes.push_back(std::string("standard errors unavailable: ") + e.what());
    }

    // Wald check that the two regimes share one coefficient triple.
    if (kind != ModelKind::Par && result.info && !result.diagnostics.identification_suspect) {
        const Eigen::MatrixXd cov = result.info->covariance();
        const Coefficients& k = result.spec_hat.coef;
        const Eigen::Vector3d d(k.omega1 - k.omega2, k.alpha1 - k.alpha2, k.beta1 - k.beta2);
        const Eigen::Matrix3d v =
            cov.block<3, 3>(0, 0) + cov.block<3, 3>(3, 3) - cov.block<3, 3>(0, 3) - cov.block<3, 3>(3, 0);
        const Eigen::LDLT<Eigen::Matrix3d> ldlt(v);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            const double wald = d.dot(ldlt.solve(d));
            if (std::isfinite(wald) && chi_square_sf(wald, 3.0) > kIdentificationLevel) {
                result.diagnostics.identification_suspect = true;
                result.diagnostics.notes.emplace_back("identification-suspect: regime coefficients indistinguishable");
            }
        }
    }
    return result;
}

FitResult fit(const CountSeries& series, ModelKind kind, const GridOptions& grid_options, const OptimizerConfig& cfg) {
    check_fit_input(series);
    return fit(series, kind, make_grid(series, kind, grid_options), cfg);
}

std::vector<double> standard_errors(const FitResult& fit) {
    if (!fit.info) throw SingularInformation("fit has no information matrix");
    const Eigen::MatrixXd cov = fit.info->covariance();
    std::vector<double> se(static_cast<std::size_t>(cov.rows()));
    for (Eigen::Index j = 0; j < cov.rows(); ++j) se[static_cast<std::size_t>(j)] = std::sqrt(cov(j, j));
    return se;
}

FitResult evaluate_at(const CountSeries& series, const ModelSpec& spec) {
    FitResult result;
    result.spec_hat = spec;
    result.spec_hat.init.lambda0 = resolve_lambda0(series, spec);
    result.loglik = log_likelihood(series, result.spec_hat).value;
    result.terms = likelihood_terms(series);
    result.diagnostics.converged = true;
    result.profile.push_back({spec.tau, result.loglik, true, std::nullopt, {}});
    try {
        result.info = information_matrix(series, result.spec_hat);
        result.std_errors = standard_errors(result);
    } catch (const SingularInformation& e) {
        result.diagnostics.notes.push_back(std::string("standard errors unavailable: ") + e.what());
    }
    return result;
}

}  // namespace hpart
