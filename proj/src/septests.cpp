#include "hpart/septests.hpp"

#include "hpart/errors.hpp"
#include "hpart/filter.hpp"
#include "hpart/likelihood.hpp"
#include "hpart/parallel.hpp"
#include "hpart/rng.hpp"
#include "hpart/stats.hpp"

#include <algorithm>
#include <cmath>

namespace hpart {

namespace {

constexpr std::size_t kNullBlock = 4096;

// Both legs of the compound intensity at a shared (coef, r, s) and a common lambda_0.
struct Legs {
    ModelSpec bpart;
    ModelSpec hpart;
};

Legs make_legs(const CountSeries& series, const ModelSpec& spec, Count c) {
    Legs legs{spec, spec};
    legs.bpart.kind = ModelKind::Bpart;
    legs.hpart.kind = ModelKind::Hpart;
    legs.hpart.tau.c = c;
    const double lambda0 = resolve_lambda0(series, spec);
    legs.bpart.init.lambda0 = lambda0;
    legs.hpart.init.lambda0 = lambda0;
    return legs;
}

void require_two_regime(const ModelSpec& spec, const char* who) {
    if (spec.kind != ModelKind::Bpart && spec.kind != ModelKind::Hpart) {
        throw InvalidArgument(std::string(who) + ": spec must be BPART or HPART");
    }
    if (!(spec.tau.r < spec.tau.s)) throw InvalidArgument(std::string(who) + ": thresholds require r < s");
}

Eigen::VectorXd to_vector(const Gradient& g) { return Eigen::Map<const Eigen::Matrix<double, 6, 1>>(g.data()); }

// score^2 / (-curvature) for the compound weight at the null leg.
double delta_score_stat(const CountSeries& series, const std::vector<double>& null_leg,
                        const std::vector<double>& other_leg, bool null_is_bpart) {
    double score = 0.0;
    double curvature = 0.0;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        const double y = static_cast<double>(series[k + 1]);
        const double lam = null_leg[k];
        const double d = null_is_bpart ? other_leg[k] - lam : lam - other_leg[k];
        score += (y / lam - 1.0) * d;
        curvature += y * d * d / (lam * lam);
    }
    if (!(curvature > 0.0)) throw DegenerateTest("paths-identical: the two intensity paths coincide on the data");
    return score * score / curvature;
}

std::vector<LevelDecision> decide(const std::vector<double>& levels, double p_value,
                                  const std::function<double(double)>& critical) {
    std::vector<LevelDecision> out;
    for (const double level : levels) {
        if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("significance levels must lie in (0, 1)");
        out.push_back({level, critical(level), p_value < level});
    }
    return out;
}

}  // namespace

IntensityPath compound_intensity(const CountSeries& series, const ModelSpec& spec, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("compound_intensity: delta must lie in [0, 1]");
    require_two_regime(spec, "compound_intensity");
    const Legs legs = make_legs(series, spec, spec.tau.c);
    IntensityPath b = intensity_filter(series, legs.bpart);
    IntensityPath h = intensity_filter(series, legs.hpart);
    IntensityPath out;
    out.lambdas.resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) out.lambdas[k] = (1.0 - delta) * b.lambdas[k] + delta * h.lambdas[k];
    out.regimes = delta < 1.0 ? std::move(b.regimes) : std::move(h.regimes);
    return out;
}

double score_stat_bpart(const CountSeries& series, const ModelSpec& bpart_fit, Count c) {
    require_two_regime(bpart_fit, "score_stat_bpart");
    const Legs legs = make_legs(series, bpart_fit, c);
    const auto b = intensity_filter(series, legs.bpart).lambdas;
    const auto h = intensity_filter(series, legs.hpart).lambdas;
    return delta_score_stat(series, b, h, true);
}

SigmaEstimates estimate_sigma_bvh(const CountSeries& series, const ModelSpec& bpart_fit,
                                  const std::vector<Count>& candidates) {
    require_two_regime(bpart_fit, "estimate_sigma_bvh");
    if (candidates.empty()) throw InvalidArgument("estimate_sigma_bvh: no candidates");
    const Legs base = make_legs(series, bpart_fit, 0);
    const auto b = intensity_filter(series, base.bpart).lambdas;
    const GradientPath grad = intensity_gradient(series, base.bpart);
    const InformationMatrix info = information_matrix(series, base.bpart);
    const Eigen::MatrixXd info_inv = info.inverse();

    const auto k = static_cast<Eigen::Index>(candidates.size());
    const std::size_t terms = likelihood_terms(series);
    std::vector<std::vector<double>> diffs(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto h = intensity_filter(series, make_legs(series, bpart_fit, candidates[i]).hpart).lambdas;
        diffs[i].resize(terms);
        for (std::size_t t = 0; t < terms; ++t) diffs[i][t] = h[t] - b[t];
    }

    SigmaEstimates out;
    out.sigma1 = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(k, 6);
    for (std::size_t t = 0; t < terms; ++t) {
        const double inv = 1.0 / b[t];
        const Eigen::VectorXd g = to_vector(grad.steps[t]);
        for (Eigen::Index i = 0; i < k; ++i) {
            const double di = diffs[static_cast<std::size_t>(i)][t] * inv;
            cross.row(i) += di * g.transpose();
            for (Eigen::Index j = i; j < k; ++j) out.sigma1(i, j) += di * diffs[static_cast<std::size_t>(j)][t];
        }
    }
    const auto n = static_cast<double>(terms);
    out.sigma1 /= n;
    cross /= n;
    out.sigma1 = out.sigma1.selfadjointView<Eigen::Upper>();

    Eigen::MatrixXd sigma2 = out.sigma1 - cross * info_inv * cross.transpose();
    sigma2 = 0.5 * (sigma2 + sigma2.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma2);
    if (eig.info() != Eigen::Success) throw NumericalFailure("sigma2 eigendecomposition failed");
    if (eig.eigenvalues().minCoeff() < 0.0) {
        out.repaired = true;
        const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
        sigma2 = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    }
    out.sigma2 = sigma2;
    return out;
}

std::vector<Count> default_c_candidates(const CountSeries& series, std::size_t cap) {
    GridOptions opts;
    opts.max_c_candidates = cap;
    std::vector<Count> diffs;
    for (std::size_t k = 1; k < series.size(); ++k) diffs.push_back(series[k] - series[k - 1]);
    std::vector<Count> values = observed_between_quantiles(diffs, opts.lower_quantile, opts.upper_quantile);
    if (cap > 0 && values.size() > cap) {
        std::vector<Count> thinned;
        const double step = static_cast<double>(values.size() - 1) / static_cast<double>(cap - 1);
        for (std::size_t i = 0; i < cap; ++i) {
            thinned.push_back(values[static_cast<std::size_t>(std::lround(static_cast<double>(i) * step))]);
        }
        thinned.erase(std::unique(thinned.begin(), thinned.end()), thinned.end());
        values = std::move(thinned);
    }
    if (values.empty()) values.push_back(0);
    return values;
}

std::vector<double> simulate_sup_null(const Eigen::MatrixXd& sigma1, const Eigen::MatrixXd& sigma2,
                                      const NullSimConfig& cfg) {
    const Eigen::Index k = sigma2.rows();
    if (k == 0 || sigma1.rows() != k || sigma2.cols() != k) throw InvalidArgument("simulate_sup_null: bad shapes");
    if (cfg.sims == 0) throw InvalidArgument("simulate_sup_null: need at least one simulation");
    Eigen::VectorXd scale(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!(sigma1(i, i) > 0.0)) throw DegenerateTest("sigma1 has a non-positive diagonal entry");
        scale[i] = 1.0 / sigma1(i, i);
    }
    // Symmetric square root; tolerates the zero eigenvalues left by clipping.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (sigma2 + sigma2.transpose()));
    if (eig.info() != Eigen::Success) throw NumericalFailure("sigma2 factorization failed");
    const Eigen::MatrixXd root =
        eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    if (!root.allFinite()) throw NumericalFailure("sigma2 factorization is not finite");

    std::vector<double> out(cfg.sims);
    const std::size_t blocks = (cfg.sims + kNullBlock - 1) / kNullBlock;
    parallel_for(blocks, cfg.threads, [&](std::size_t block) {
        Rng rng = make_rng(cfg.seed, block);
        std::normal_distribution<double> normal;
        Eigen::VectorXd xi(k);
        const std::size_t begin = block * kNullBlock;
        const std::size_t end = std::min(cfg.sims, begin + kNullBlock);
        for (std::size_t s = begin; s < end; ++s) {
            for (Eigen::Index i = 0; i < k; ++i) xi[i] = normal(rng);
            const Eigen::VectorXd z = root * xi;
            double best = 0.0;
            for (Eigen::Index i = 0; i < k; ++i) best = std::max(best, z[i] * z[i] * scale[i]);
            out[s] = best;
        }
    });
    return out;
}

TestOutcome test_bpart_vs_hpart(const CountSeries& series, const ModelSpec& bpart_fit,
                                const std::vector<Count>& candidates, const NullSimConfig& null_cfg,
                                const std::vector<double>& levels) {
    require_two_regime(bpart_fit, "test_bpart_vs_hpart");
    if (candidates.empty()) throw InvalidArgument("test_bpart_vs_hpart: no candidates");
    TestOutcome out;
    out.test = "bpart-vs-hpart";
    for (const Count c : candidates) {
        try {
            const double stat = score_stat_bpart(series, bpart_fit, c);
            out.candidates.push_back(c);
            out.per_c_stats.push_back(stat);
        } catch (const DegenerateTest&) {
            out.dropped_candidates.push_back(c);
        }
    }
    if (out.candidates.empty()) throw DegenerateTest("paths-identical: every candidate c is degenerate");
    if (!out.dropped_candidates.empty()) {
        out.warnings.push_back(std::to_string(out.dropped_candidates.size()) +
                               " candidate(s) dropped: HPART path equals the BPART path");
    }
    out.statistic = *std::max_element(out.per_c_stats.begin(), out.per_c_stats.end());

    out.sigma = estimate_sigma_bvh(series, bpart_fit, out.candidates);
    if (out.sigma.repaired) out.warnings.emplace_back("sigma2 had negative eigenvalues; clipped at zero");

    std::vector<double> null = simulate_sup_null(out.sigma.sigma1, out.sigma.sigma2, null_cfg);
    out.null_sims = null.size();
    const auto exceed = std::count_if(null.begin(), null.end(), [&](double v) { return v >= out.statistic; });
    out.p_value = static_cast<double>(exceed) / static_cast<double>(null.size());
    std::sort(null.begin(), null.end());
    out.decisions = decide(levels, out.p_value, [&](double level) { return sample_quantile(null, 1.0 - level); });
    return out;
}

TestOutcome test_hpart_vs_bpart(const CountSeries& series, const ModelSpec& hpart_fit,
                                const std::vector<double>& levels) {
    require_two_regime(hpart_fit, "test_hpart_vs_bpart");
    TestOutcome out;
    out.test = "hpart-vs-bpart";
    out.candidates = {hpart_fit.tau.c};

    const Legs legs = make_legs(series, hpart_fit, hpart_fit.tau.c);
    const auto h = intensity_filter(series, legs.hpart).lambdas;
    const auto b = intensity_filter(series, legs.bpart).lambdas;
    out.raw_statistic = delta_score_stat(series, h, b, false);
    out.per_c_stats = {out.raw_statistic};

    const GradientPath grad = intensity_gradient(series, legs.hpart);
    const Eigen::MatrixXd info_inv = information_matrix(series, legs.hpart).inverse();
    const std::size_t terms = likelihood_terms(series);
    double s1 = 0.0;
    Eigen::VectorXd cross = Eigen::VectorXd::Zero(6);
    for (std::size_t t = 0; t < terms; ++t) {
        const double d = h[t] - b[t];
        s1 += d * d / h[t];
        cross += (d / h[t]) * to_vector(grad.steps[t]);
    }
    const auto n = static_cast<double>(terms);
    s1 /= n;
    cross /= n;
    double s2 = s1 - cross.dot(info_inv * cross);
    const double floor = 1e-8 * s1;
    if (!(s2 > floor)) {
        out.sigma.repaired = true;
        out.warnings.emplace_back("sigma2' was not positive after plug-in; clipped to 1e-8 * sigma1'");
        s2 = floor;
    }
    out.sigma.sigma1p = s1;
    out.sigma.sigma2p = s2;
    out.statistic = out.raw_statistic * s1 / s2;
    out.p_value = chi_square_sf(out.statistic, 1.0);
    out.decisions = decide(levels, out.p_value, [](double level) { return chi_square_quantile(1.0 - level, 1.0); });
    return out;
}

}  // namespace hpart
