#include "hpart/montecarlo.hpp"

#include "hpart/errors.hpp"
#include "hpart/filter.hpp"
#include "hpart/parallel.hpp"
#include "hpart/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace hpart {

namespace {

constexpr std::uint64_t kNullStreamTag = 0x6e756c6cULL;

void check_failures(std::size_t failures, std::size_t reps, const std::vector<std::string>& messages) {
    if (static_cast<double>(failures) > kMaxFailureShare * static_cast<double>(reps)) {
        std::string msg = std::to_string(failures) + " of " + std::to_string(reps) +
                          " replicates failed; study looks misconfigured";
        if (!messages.empty()) msg += " (first: " + messages.front() + ")";
        throw FitFailure(msg);
    }
}

OptimizerConfig inner_config(const StudyConfig& cfg, std::uint64_t seed) {
    OptimizerConfig out = cfg.optimizer;
    out.threads = 1;
    out.seed = seed;
    return out;
}

ParamSummary summarize(std::string name, double truth, const std::vector<double>& xs,
                       const std::vector<double>& variances) {
    ParamSummary p;
    p.name = std::move(name);
    p.truth = truth;
    const auto m = static_cast<double>(xs.size());
    double sum = 0.0;
    for (const double x : xs) sum += x;
    p.em = sum / m;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (const double x : xs) ss += (x - p.em) * (x - p.em);
        p.ev = ss / (m - 1.0);
        if (p.em != 0.0) p.vm = *p.ev / p.em;
    }
    if (!variances.empty()) {
        double s = 0.0;
        for (const double v : variances) s += v;
        p.sg = s / static_cast<double>(variances.size());
    }
    return p;
}

}  // namespace

const ParamSummary& McSummary::param(std::string_view name) const {
    for (const auto& p : params) {
        if (p.name == name) return p;
    }
    throw InvalidArgument("no summary for parameter " + std::string(name));
}

std::uint64_t replicate_seed(std::uint64_t seed, std::size_t index) {
    Rng rng = make_rng(seed, index);
    return rng();
}

McSummary run_estimation_study(const ModelSpec& truth, std::size_t n, std::size_t reps, std::uint64_t seed,
                               const StudyConfig& cfg) {
    if (reps == 0) throw InvalidArgument("run_estimation_study: reps must be positive");
    truth.validate();

    struct Slot {
        std::optional<ReplicateEstimate> est;
        std::string error;
    };
    std::vector<Slot> slots(reps);
    parallel_for(reps, cfg.threads, [&](std::size_t i) {
        const std::uint64_t rs = replicate_seed(seed, i);
        try {
            const SimulationResult sim = simulate(truth, n, cfg.burn_in, rs);
            const FitResult f = fit(sim.series, truth.kind, cfg.grid, inner_config(cfg, rs));
            ReplicateEstimate est;
            est.index = i;
            est.coef = f.spec_hat.coef;
            est.tau = f.spec_hat.tau;
            est.loglik = f.loglik;
            if (!f.std_errors.empty()) {
                for (const double se : f.std_errors) est.variances.push_back(se * se);
            }
            slots[i].est = std::move(est);
        } catch (const Error& e) {
            slots[i].error = "replicate " + std::to_string(i) + ": " + e.what();
        }
    });

    McSummary out;
    out.truth = truth;
    out.n = n;
    for (auto& s : slots) {
        if (s.est) {
            out.replicates.push_back(std::move(*s.est));
        } else {
            ++out.failures;
            out.failure_messages.push_back(std::move(s.error));
        }
    }
    check_failures(out.failures, reps, out.failure_messages);
    out.replications = out.replicates.size();
    if (out.replicates.empty()) throw FitFailure("run_estimation_study: every replicate failed");

    const std::size_t dim = coefficient_count(truth.kind);
    const auto truth_coef = truth.coef.as_array();
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> xs;
        std::vector<double> vs;
        for (const auto& r : out.replicates) {
            xs.push_back(r.coef.as_array()[j]);
            if (!r.variances.empty()) vs.push_back(r.variances[j]);
        }
        std::string name(kCoefficientNames[j]);
        if (truth.kind == ModelKind::Par) name.pop_back();
        out.params.push_back(summarize(name, truth_coef[j], xs, vs));
    }

    auto threshold_summary = [&](const char* name, double t, auto get) {
        std::vector<double> xs;
        for (const auto& r : out.replicates) xs.push_back(static_cast<double>(get(r.tau)));
        out.params.push_back(summarize(name, t, xs, {}));
    };
    if (truth.kind != ModelKind::Par) {
        threshold_summary("r", static_cast<double>(truth.tau.r), [](const Thresholds& t) { return t.r; });
    }
    if (truth.kind == ModelKind::Bpart || truth.kind == ModelKind::Hpart) {
        threshold_summary("s", static_cast<double>(truth.tau.s), [](const Thresholds& t) { return t.s; });
    }
    if (truth.kind == ModelKind::Hpart) {
        threshold_summary("c", static_cast<double>(truth.tau.c), [](const Thresholds& t) { return t.c; });
    }

    std::size_t hits = 0;
    for (const auto& r : out.replicates) {
        bool ok = true;
        if (truth.kind != ModelKind::Par) ok = ok && r.tau.r == truth.tau.r;
        if (truth.kind == ModelKind::Bpart || truth.kind == ModelKind::Hpart) ok = ok && r.tau.s == truth.tau.s;
        if (truth.kind == ModelKind::Hpart) ok = ok && r.tau.c == truth.tau.c;
        hits += ok ? 1 : 0;
    }
    out.threshold_recovery = static_cast<double>(hits) / static_cast<double>(out.replications);
    return out;
}

std::string_view to_string(TestKind kind) noexcept { return kind == TestKind::H0 ? "H0" : "H0-tilde"; }

TestKind parse_test_kind(std::string_view name) {
    std::string lower(name);
    for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "h0" || lower == "bvh" || lower == "bpart") return TestKind::H0;
    if (lower == "h0-tilde" || lower == "h0tilde" || lower == "hvb" || lower == "hpart") return TestKind::H0Tilde;
    throw InvalidArgument("unknown test: " + std::string(name));
}

TestStudyResult run_test_study(const ModelSpec& generator, TestKind test, std::size_t n, std::size_t reps,
                               const std::vector<double>& levels, std::uint64_t seed, const StudyConfig& cfg) {
    if (reps == 0) throw InvalidArgument("run_test_study: reps must be positive");
    if (levels.empty()) throw InvalidArgument("run_test_study: no significance levels");
    generator.validate();

    struct Slot {
        bool ok = false;
        double statistic = 0.0;
        double p_value = 1.0;
        std::vector<bool> reject;
        std::string error;
    };
    std::vector<Slot> slots(reps);
    const ModelKind null_kind = test == TestKind::H0 ? ModelKind::Bpart : ModelKind::Hpart;

    parallel_for(reps, cfg.threads, [&](std::size_t i) {
        const std::uint64_t rs = replicate_seed(seed, i);
        try {
            const SimulationResult sim = simulate(generator, n, cfg.burn_in, rs);
            const FitResult f = fit(sim.series, null_kind, cfg.grid, inner_config(cfg, rs));
            TestOutcome outcome;
            if (test == TestKind::H0) {
                NullSimConfig ns;
                ns.sims = cfg.null_sims;
                ns.seed = replicate_seed(seed ^ kNullStreamTag, i);
                ns.threads = 1;
                outcome = test_bpart_vs_hpart(sim.series, f.spec_hat,
                                              default_c_candidates(sim.series, cfg.max_candidates), ns, levels);
            } else {
                outcome = test_hpart_vs_bpart(sim.series, f.spec_hat, levels);
            }
            slots[i].ok = true;
            slots[i].statistic = outcome.statistic;
            slots[i].p_value = outcome.p_value;
            for (const auto& d : outcome.decisions) slots[i].reject.push_back(d.reject);
        } catch (const Error& e) {
            slots[i].error = "replicate " + std::to_string(i) + ": " + e.what();
        }
    });

    TestStudyResult out;
    out.test = test;
    out.generator = generator;
    out.n = n;
    out.levels = levels;
    std::vector<std::size_t> rejections(levels.size(), 0);
    for (auto& s : slots) {
        if (!s.ok) {
            ++out.failures;
            out.failure_messages.push_back(std::move(s.error));
            continue;
        }
        out.statistics.push_back(s.statistic);
        out.p_values.push_back(s.p_value);
        for (std::size_t l = 0; l < levels.size(); ++l) rejections[l] += s.reject[l] ? 1 : 0;
    }
    check_failures(out.failures, reps, out.failure_messages);
    out.replications = out.statistics.size();
    if (out.replications == 0) throw FitFailure("run_test_study: every replicate failed");
    for (const std::size_t r : rejections) {
        out.rejection_rate.push_back(static_cast<double>(r) / static_cast<double>(out.replications));
    }
    return out;
}

}  // namespace hpart
