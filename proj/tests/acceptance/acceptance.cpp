// Acceptance suite: one PASS/FAIL line per criterion. Criterion 11 runs only
// when real-data CSV paths are supplied through the environment and never
// affects the exit status.

#include "hpart/diagnostics.hpp"
#include "hpart/errors.hpp"
#include "hpart/estimation.hpp"
#include "hpart/filter.hpp"
#include "hpart/forecast.hpp"
#include "hpart/io.hpp"
#include "hpart/likelihood.hpp"
#include "hpart/montecarlo.hpp"
#include "hpart/regime.hpp"
#include "hpart/rng.hpp"
#include "hpart/septests.hpp"
#include "hpart/stats.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace hpart;

namespace {

// Tolerances and study sizes.
constexpr double kGradRelTol = 1e-6;
constexpr double kFdRelStep = 1e-6;
constexpr double kPmfTermTol = 1e-10;
constexpr double kRecoveryShare = 0.95;
constexpr double kSgEvFactor = 2.0;
constexpr double kSizeLo = 0.025;
constexpr double kSizeHi = 0.075;
constexpr double kKsMax = 0.08;
constexpr double kPowerGain = 0.25;
constexpr double kCritRelTol = 0.02;

constexpr std::size_t kGradCases = 50;
constexpr std::size_t kGradN = 200;
constexpr std::size_t kPmfCases = 100;
constexpr std::size_t kBpartReps = 200;
constexpr std::size_t kBpartN = 500;
constexpr std::size_t kHpartReps = 200;
constexpr std::size_t kHpartN = 2000;
constexpr std::size_t kSizeReps = 500;
constexpr std::size_t kSizeN = 2000;
constexpr std::size_t kPowerReps = 300;
constexpr std::size_t kCritCases = 3;
constexpr std::size_t kCritSims = 200000;
constexpr std::size_t kRealHoldout = 20;

const Coefficients kSet1{0.5, 0.6, 0.4, 0.2, 0.4, 0.5};
const Coefficients kSet2{0.6, 0.8, 0.7, 0.4, 0.2, 0.2};
// Empirical variances reported for HPART set 2 at n = 2000.
const std::array<double, 6> kSet2EvN2000{0.024, 0.002, 0.002, 0.031, 0.001, 0.001};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

StudyConfig study_config() {
    StudyConfig cfg;
    cfg.threads = 0;
    cfg.optimizer.refine_top = 5;
    return cfg;
}

ModelSpec random_spec(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Coefficients c;
    c.omega1 = 0.2 + 1.5 * u(rng);
    c.alpha1 = 0.05 + 0.6 * u(rng);
    c.beta1 = 0.05 + 0.5 * u(rng);
    c.omega2 = 0.2 + 1.5 * u(rng);
    c.beta2 = 0.05 + 0.5 * u(rng);
    c.alpha2 = 0.05 + (0.9 - c.beta2 - 0.05) * u(rng);
    std::uniform_int_distribution<Count> thr(1, 4);
    const Count r = thr(rng);
    const Count s = r + thr(rng);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<Count> cd(-2, 2);
    switch (pick(rng)) {
        case 0: return ModelSpec::par(c.omega1, c.alpha1, std::min(c.beta1, 0.9 - c.alpha1));
        case 1: return ModelSpec::setpar(c, r);
        case 2: return ModelSpec::bpart(c, r, s);
        default: return ModelSpec::hpart(c, r, s, cd(rng));
    }
}

Outcome gradient_check() {
    Rng rng = make_rng(20240101);
    double worst = 0.0;
    for (std::size_t rep = 0; rep < kGradCases; ++rep) {
        ModelSpec spec = random_spec(rng);
        const auto sim = simulate(spec, kGradN, kDefaultBurnIn, 7000 + rep);
        spec.init = sim.state;
        const Gradient analytic = score(sim.series, spec);
        const auto base = spec.coef.as_array();
        for (std::size_t j = 0; j < coefficient_count(spec.kind); ++j) {
            const double h = kFdRelStep * std::max(1.0, std::abs(base[j]));
            auto up = base, down = base;
            up[j] += h;
            down[j] -= h;
            ModelSpec su = spec, sd = spec;
            su.coef = Coefficients::from_array(up);
            sd.coef = Coefficients::from_array(down);
            const double fd = (log_likelihood(sim.series, su).value - log_likelihood(sim.series, sd).value) / (2.0 * h);
            worst = std::max(worst, std::abs(analytic[j] - fd) / std::max(1.0, std::abs(fd)));
        }
    }
    return {worst < kGradRelTol, fmt("max relative error %.3g over %zu specs", worst, kGradCases)};
}

Outcome likelihood_oracle() {
    Rng rng = make_rng(20240102);
    double worst = 0.0;
    for (std::size_t rep = 0; rep < kPmfCases; ++rep) {
        const ModelSpec spec = random_spec(rng);
        const auto sim = simulate(spec, 150, 100, 8000 + rep);
        const IntensityPath path = intensity_filter(sim.series, spec);
        double total = 0.0;
        for (std::size_t k = 1; k < sim.series.size(); ++k) {
            const double y = static_cast<double>(sim.series[k]);
            const double lam = path.lambdas[k - 1];
            const double term = -lam + y * std::log(lam) - std::lgamma(y + 1.0);
            worst = std::max(worst, std::abs(poisson_log_pmf(sim.series[k], lam) - term));
            total += term;
        }
        const double per_term = std::abs(log_likelihood(sim.series, spec).value - total) /
                                static_cast<double>(likelihood_terms(sim.series));
        worst = std::max(worst, per_term);
    }
    return {worst <= kPmfTermTol, fmt("max per-term deviation %.3g over %zu cases", worst, kPmfCases)};
}

Outcome regime_equivalences() {
    std::size_t mismatches = 0;
    std::size_t checked = 0;
    for (Count r = 0; r <= 8; ++r) {
        for (Count s = r; s <= 10; ++s) {
            for (Count c = -3; c <= 3; ++c) {
                for (Count y2 = 0; y2 <= 10; ++y2) {
                    for (Count y1 = 0; y1 <= 10; ++y1) {
                        const Count dy = y1 - y2;
                        const int rising = dy >= c ? 1 : 0;
                        const int branch = rising * (y1 <= s ? 1 : 0) + (1 - rising) * (y1 <= r ? 1 : 0);
                        mismatches += hysteresis_indicator(y1, dy, r, s, c) != branch;
                        ++checked;
                    }
                }
            }
        }
    }
    std::size_t path_checks = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto sim = simulate(ModelSpec::hpart(kSet1, 3, 6, 0), 500, 100, 9000 + seed);
        for (Count r = 0; r <= 10; ++r) {
            const RegimePath setpar = regime_path_setpar(sim.series, r);
            for (int regime0 = 0; regime0 <= 1; ++regime0) {
                mismatches += regime_path_bpart(sim.series, r, r, regime0) != setpar;
                ++path_checks;
            }
        }
    }
    return {mismatches == 0, fmt("%zu indicator cells and %zu paths, %zu mismatches", checked, path_checks, mismatches)};
}

struct HpartStudy {
    bool ok = false;
    std::string error;
    McSummary summary;
};

Outcome bpart_threshold_recovery() {
    const McSummary s = run_estimation_study(ModelSpec::bpart(kSet2, 4, 7), kBpartN, kBpartReps, 4, study_config());
    return {s.threshold_recovery >= kRecoveryShare,
            fmt("(r,s)=(4,7) in %.3f of %zu replicates (%zu failures)", s.threshold_recovery, s.replications,
                s.failures)};
}

Outcome hpart_coefficient_recovery(const HpartStudy& study) {
    if (!study.ok) return {false, "study failed: " + study.error};
    const McSummary& s = study.summary;
    bool pass = s.threshold_recovery >= kRecoveryShare;
    std::ostringstream detail;
    detail << fmt("thresholds exact in %.3f;", s.threshold_recovery);
    for (std::size_t j = 0; j < kCoefficientNames.size(); ++j) {
        const ParamSummary& p = s.param(kCoefficientNames[j]);
        const double bound = 2.0 * std::sqrt(kSet2EvN2000[j]);
        const double dev = std::abs(p.em - p.truth);
        pass = pass && dev <= bound;
        detail << fmt(" %s |%.4f|<=%.4f", std::string(kCoefficientNames[j]).c_str(), dev, bound);
    }
    return {pass, detail.str()};
}

Outcome sg_vs_ev(const HpartStudy& study) {
    if (!study.ok) return {false, "study failed: " + study.error};
    bool pass = true;
    std::ostringstream detail;
    for (const char* name : {"alpha1", "beta1", "alpha2", "beta2"}) {
        const ParamSummary& p = study.summary.param(name);
        if (!p.ev || !p.sg || *p.ev <= 0.0) {
            pass = false;
            detail << ' ' << name << " missing";
            continue;
        }
        const double ratio = *p.sg / *p.ev;
        pass = pass && ratio <= kSgEvFactor && ratio >= 1.0 / kSgEvFactor;
        detail << fmt(" %s SG/EV=%.3f", name, ratio);
    }
    return {pass, detail.str()};
}

Outcome size_h0_tilde() {
    const TestStudyResult r =
        run_test_study(ModelSpec::hpart(kSet1, 3, 6, 0), TestKind::H0Tilde, kSizeN, kSizeReps, {0.05}, 7, study_config());
    const double size = r.rejection_rate.at(0);
    const double ks = ks_distance(r.statistics, [](double x) { return chi_square_cdf(std::max(x, 0.0), 1.0); });
    return {size >= kSizeLo && size <= kSizeHi && ks < kKsMax,
            fmt("size %.3f at 0.05, KS %.4f over %zu replicates (%zu failures)", size, ks,
                r.replications - r.failures, r.failures)};
}

Outcome power_h0() {
    const auto gen = ModelSpec::hpart(kSet1, 3, 6, 0);
    const StudyConfig cfg = study_config();
    const TestStudyResult small = run_test_study(gen, TestKind::H0, 500, kPowerReps, {0.05}, 8, cfg);
    const TestStudyResult large = run_test_study(gen, TestKind::H0, 2000, kPowerReps, {0.05}, 8, cfg);
    const double gain = large.rejection_rate.at(0) - small.rejection_rate.at(0);
    return {gain >= kPowerGain, fmt("power %.3f (n=500) vs %.3f (n=2000), gain %.3f", small.rejection_rate[0],
                                    large.rejection_rate[0], gain)};
}

Outcome single_candidate_critical_value() {
    OptimizerConfig opt;
    opt.refine_top = 5;
    double worst = 0.0;
    for (std::size_t k = 0; k < kCritCases; ++k) {
        const auto sim = simulate(ModelSpec::bpart(kSet1, 3, 6), 1000, kDefaultBurnIn, 9100 + k);
        const FitResult f = fit(sim.series, ModelKind::Bpart, GridOptions{}, opt);
        const SigmaEstimates s = estimate_sigma_bvh(sim.series, f.spec_hat, {static_cast<Count>(k) - 1});
        NullSimConfig cfg;
        cfg.sims = kCritSims;
        cfg.seed = 9200 + k;
        const double crit = sample_quantile(simulate_sup_null(s.sigma1, s.sigma2, cfg), 0.95);
        const double expected = s.sigma2(0, 0) / s.sigma1(0, 0) * chi_square_quantile(0.95, 1.0);
        worst = std::max(worst, std::abs(crit / expected - 1.0));
    }
    return {worst <= kCritRelTol, fmt("max relative gap %.4f over %zu cases", worst, kCritCases)};
}

IdSequence table_sequence(std::size_t n11, std::size_t n10, std::size_t n01, std::size_t n00, bool first) {
    IdSequence s;
    s.insert(s.end(), n11, 1);
    s.insert(s.end(), n10, first ? 1 : 0);
    s.insert(s.end(), n01, first ? 0 : 1);
    s.insert(s.end(), n00, 0);
    return s;
}

Outcome diagnostics_oracles() {
    const double binom = exact_binomial_discordant({0, 6, 0, 0});
    Rng rng = make_rng(12);
    std::bernoulli_distribution coin(0.4);
    IdSequence ids(180);
    for (auto& v : ids) v = coin(rng) ? 1 : 0;
    const LrTestResult lr = lr_same_chain(ids, ids, 1);
    const ContingencyTable2x2 t =
        contingency(table_sequence(72, 14, 0, 94, true), table_sequence(72, 14, 0, 94, false));
    const bool pass = binom == 0.03125 && lr.statistic == 0.0 && lr.p_value == 1.0 &&
                      t == ContingencyTable2x2{72, 14, 0, 94};
    return {pass, fmt("binomial %.17g, LR stat %g p %g, table (%zu,%zu,%zu,%zu)", binom, lr.statistic, lr.p_value,
                      t.n11, t.n10, t.n01, t.n00)};
}

// Returns nullopt when no data were supplied.
std::optional<Outcome> real_data() {
    const char* escape = std::getenv("HPART_ESCAPE_CSV");
    const char* hepatitis = std::getenv("HPART_HEPATITIS_CSV");
    if (!escape || !hepatitis) return std::nullopt;
    OptimizerConfig opt;
    opt.refine_top = 5;
    bool pass = true;
    std::ostringstream detail;
    for (const char* path : {escape, hepatitis}) {
        const CountSeries y = ingest_csv_file(path);
        double best_other = std::numeric_limits<double>::infinity();
        double hpart_mse = 0.0;
        for (const ModelKind kind : {ModelKind::Par, ModelKind::Setpar, ModelKind::Bpart, ModelKind::Hpart}) {
            const double mse = rolling_forecast(y, kRealHoldout, kind, GridOptions{}, RefitPolicy::Fixed, opt).mse;
            detail << ' ' << to_string(kind) << '=' << fmt("%.2f", mse);
            if (kind == ModelKind::Hpart) {
                hpart_mse = mse;
            } else {
                best_other = std::min(best_other, mse);
            }
        }
        detail << ';';
        pass = pass && hpart_mse <= best_other;
    }
    return Outcome{pass, detail.str()};
}

bool report(int id, const char* name, const std::function<Outcome()>& run) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %-34s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main() {
    bool all = true;
    all &= report(1, "score vs finite differences", gradient_check);
    all &= report(2, "likelihood per-term oracle", likelihood_oracle);
    all &= report(3, "regime path equivalences", regime_equivalences);
    all &= report(4, "BPART threshold recovery", bpart_threshold_recovery);

    HpartStudy study;
    try {
        study.summary = run_estimation_study(ModelSpec::hpart(kSet2, 4, 7, -1), kHpartN, kHpartReps, 5, study_config());
        study.ok = true;
    } catch (const std::exception& e) {
        study.error = e.what();
    }
    all &= report(5, "HPART coefficient recovery", [&] { return hpart_coefficient_recovery(study); });
    all &= report(6, "SG vs EV agreement", [&] { return sg_vs_ev(study); });

    all &= report(7, "H0-tilde test size", size_h0_tilde);
    all &= report(8, "H0 test power growth", power_h0);
    all &= report(9, "single-candidate critical value", single_candidate_critical_value);
    all &= report(10, "diagnostics oracles", diagnostics_oracles);

    std::optional<Outcome> real;
    try {
        real = real_data();
    } catch (const std::exception& e) {
        real = Outcome{false, std::string("error: ") + e.what()};
    }
    if (real) {
        std::printf("%s 11 %-34s %s (not gating)\n", real->pass ? "PASS" : "FAIL", "real-data forecast ranking",
                    real->detail.c_str());
    } else {
        std::printf("SKIP 11 %-34s set HPART_ESCAPE_CSV and HPART_HEPATITIS_CSV to run\n",
                    "real-data forecast ranking");
    }
    return all ? 0 : 1;
}
