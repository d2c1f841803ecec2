// Command-line front end: simulation, fitting, score tests, forecasting,
// Monte Carlo studies and regime ID-card diagnostics.

#include "hpart/diagnostics.hpp"
#include "hpart/errors.hpp"
#include "hpart/estimation.hpp"
#include "hpart/filter.hpp"
#include "hpart/forecast.hpp"
#include "hpart/io.hpp"
#include "hpart/montecarlo.hpp"
#include "hpart/report.hpp"
#include "hpart/septests.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace hpart;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kFitFailed = 3,
    kDegenerate = 4,
    kNumerical = 5,
};

struct Options {
    std::string input = "-";
    std::string output = "-";
    std::string model = "hpart";
    std::vector<Count> r_grid;
    std::vector<Count> s_grid;
    std::vector<Count> c_grid;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::size_t multistart = 5;
    std::size_t refine_top = 0;
    std::size_t holdout = 20;
    std::string refit = "fixed";
    std::size_t reps = kDefaultReps;
    std::size_t n = 500;
    std::size_t burn_in = kDefaultBurnIn;
    std::vector<double> levels = kDefaultLevels;
    std::size_t null_sims = kDefaultNullSims;
    std::string preset;
    std::vector<double> coef;
    std::optional<Count> r;
    std::optional<Count> s;
    std::optional<Count> c;
    std::string test = "H0";
    std::string plot_data;
    std::string bands;
    std::string csv;
    int order = -1;
};

void add_grid_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--r-grid", o.r_grid, "Candidate r values")->delimiter(',');
    cmd->add_option("--s-grid", o.s_grid, "Candidate s values")->delimiter(',');
    cmd->add_option("--c-grid", o.c_grid, "Candidate c values")->delimiter(',');
    cmd->add_option("--multistart", o.multistart, "Optimizer starts per threshold cell");
    cmd->add_option("--refine-top", o.refine_top, "Spend extra starts only on the best N cells (0 = all)");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--seed", o.seed, "Random seed (default 0)");
}

void add_spec_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--model", o.model, "par | setpar | bpart | hpart");
    cmd->add_option("--preset", o.preset, "Simulation design: set1 | set2");
    cmd->add_option("--coef", o.coef, "omega1,alpha1,beta1[,omega2,alpha2,beta2]")->delimiter(',');
    cmd->add_option("--r", o.r, "Lower threshold");
    cmd->add_option("--s", o.s, "Upper threshold");
    cmd->add_option("--c", o.c, "Hysteresis threshold on the lagged difference");
}

GridOptions grid_options(const Options& o) {
    GridOptions g;
    if (!o.r_grid.empty()) g.r_values = o.r_grid;
    if (!o.s_grid.empty()) g.s_values = o.s_grid;
    if (!o.c_grid.empty()) g.c_values = o.c_grid;
    return g;
}

OptimizerConfig optimizer_config(const Options& o) {
    OptimizerConfig cfg;
    cfg.multistart = o.multistart;
    cfg.refine_top = o.refine_top;
    cfg.threads = o.threads;
    cfg.seed = o.seed;
    return cfg;
}

ModelSpec build_spec(const Options& o) {
    const ModelKind kind = parse_model_kind(o.model);
    Coefficients coef;
    Thresholds tau;
    if (!o.preset.empty()) {
        if (o.preset == "set1") {
            coef = {0.5, 0.6, 0.4, 0.2, 0.4, 0.5};
            tau = {3, 6, 0};
        } else if (o.preset == "set2") {
            coef = {0.6, 0.8, 0.7, 0.4, 0.2, 0.2};
            tau = {4, 7, -1};
        } else {
            throw InvalidArgument("unknown preset " + o.preset);
        }
    }
    if (!o.coef.empty()) {
        if (o.coef.size() != coefficient_count(kind)) {
            throw InvalidArgument("--coef needs " + std::to_string(coefficient_count(kind)) + " values");
        }
        std::array<double, 6> a{};
        std::copy(o.coef.begin(), o.coef.end(), a.begin());
        coef = Coefficients::from_array(a);
    } else if (o.preset.empty()) {
        throw InvalidArgument("give --coef or --preset");
    }
    if (o.r) tau.r = *o.r;
    if (o.s) tau.s = *o.s;
    if (o.c) tau.c = *o.c;
    ModelSpec spec;
    spec.kind = kind;
    spec.coef = coef;
    spec.tau = tau;
    spec.validate();
    return spec;
}

CountSeries read_series(const Options& o) {
    if (o.input == "-") return ingest_csv(std::cin);
    return ingest_csv_file(o.input);
}

void emit(const Options& o, const Json& j) {
    if (o.output == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw InvalidArgument("cannot write " + o.output);
    out << j.dump(2) << '\n';
}

template <typename Fn>
void with_file(const std::string& path, Fn&& fn) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    fn(out);
}

void write_fit_sidecars(const Options& o, const CountSeries& series, const FitResult& f) {
    with_file(o.plot_data, [&](std::ostream& out) { write_plot_data(out, series, f.spec_hat); });
    with_file(o.bands, [&](std::ostream& out) {
        Count y_max = 0;
        for (const Count v : series.values) y_max = std::max(y_max, v);
        write_regime_bands(out, f.spec_hat, y_max);
    });
}

int cmd_simulate(const Options& o) {
    const ModelSpec spec = build_spec(o);
    const SimulationResult sim = simulate(spec, o.n, o.burn_in, o.seed);
    auto write = [&](std::ostream& out) {
        out << "t,count\n";
        for (std::size_t t = 0; t < sim.series.size(); ++t) out << t << ',' << sim.series[t] << '\n';
    };
    if (o.output == "-") {
        write(std::cout);
    } else {
        with_file(o.output, write);
    }
    return kOk;
}

int cmd_fit(const Options& o) {
    const CountSeries series = read_series(o);
    const FitResult f = fit(series, parse_model_kind(o.model), grid_options(o), optimizer_config(o));
    write_fit_sidecars(o, series, f);
    emit(o, to_json(f));
    return kOk;
}

int cmd_test_bvh(const Options& o) {
    const CountSeries series = read_series(o);
    GridOptions g = grid_options(o);
    const std::vector<Count> candidates = o.c_grid.empty() ? default_c_candidates(series) : o.c_grid;
    g.c_values.reset();
    const FitResult f = fit(series, ModelKind::Bpart, g, optimizer_config(o));
    NullSimConfig ns;
    ns.sims = o.null_sims;
    ns.seed = o.seed;
    ns.threads = o.threads;
    const TestOutcome outcome = test_bpart_vs_hpart(series, f.spec_hat, candidates, ns, o.levels);
    emit(o, {{"fit", to_json(f)}, {"test", to_json(outcome)}});
    return kOk;
}

int cmd_test_hvb(const Options& o) {
    const CountSeries series = read_series(o);
    const FitResult f = fit(series, ModelKind::Hpart, grid_options(o), optimizer_config(o));
    const TestOutcome outcome = test_hpart_vs_bpart(series, f.spec_hat, o.levels);
    emit(o, {{"fit", to_json(f)}, {"test", to_json(outcome)}});
    return kOk;
}

int cmd_forecast(const Options& o) {
    const CountSeries series = read_series(o);
    const ForecastReport r = rolling_forecast(series, o.holdout, parse_model_kind(o.model), grid_options(o),
                                              parse_refit_policy(o.refit), optimizer_config(o));
    with_file(o.csv, [&](std::ostream& out) { write_csv(out, r); });
    emit(o, to_json(r));
    return kOk;
}

StudyConfig study_config(const Options& o) {
    StudyConfig cfg;
    cfg.burn_in = o.burn_in;
    cfg.threads = o.threads;
    cfg.optimizer = optimizer_config(o);
    cfg.grid = grid_options(o);
    cfg.null_sims = o.null_sims;
    return cfg;
}

int cmd_mc_estimate(const Options& o) {
    const McSummary s = run_estimation_study(build_spec(o), o.n, o.reps, o.seed, study_config(o));
    with_file(o.csv, [&](std::ostream& out) { write_csv(out, s); });
    emit(o, to_json(s));
    return kOk;
}

int cmd_mc_test(const Options& o) {
    const TestStudyResult s =
        run_test_study(build_spec(o), parse_test_kind(o.test), o.n, o.reps, o.levels, o.seed, study_config(o));
    with_file(o.csv, [&](std::ostream& out) { write_csv(out, s); });
    emit(o, to_json(s));
    return kOk;
}

int cmd_diagnose_ids(const Options& o) {
    const CountSeries series = read_series(o);
    const GridOptions g = grid_options(o);
    GridOptions gb = g;
    gb.c_values.reset();
    const FitResult fb = fit(series, ModelKind::Bpart, gb, optimizer_config(o));
    const FitResult fh = fit(series, ModelKind::Hpart, g, optimizer_config(o));
    const IdSequence ids_h = id_card_sequence(series, fh);
    const IdSequence ids_b = id_card_sequence(series, fb);
    const ContingencyTable2x2 table = contingency(ids_h, ids_b);

    Json j;
    j["bpart"] = to_json(fb.spec_hat);
    j["hpart"] = to_json(fh.spec_hat);
    j["contingency"] = to_json(table);
    j["rows"] = "hpart";
    j["columns"] = "bpart";
    const int order_h = markov_order_bic(ids_h);
    const int order_b = markov_order_bic(ids_b);
    j["markov_order"] = {{"hpart", order_h}, {"bpart", order_b}};
    const int order = o.order >= 0 ? o.order : std::max(order_h, order_b);
    const LrTestResult lr = lr_same_chain(ids_h, ids_b, order);
    j["lr_same_chain"] = {{"order", order}, {"statistic", lr.statistic}, {"df", lr.df}, {"p_value", lr.p_value}};
    if (table.n10 + table.n01 > 0) {
        j["exact_binomial_p"] = exact_binomial_discordant(table);
    } else {
        j["exact_binomial_p"] = nullptr;
    }
    with_file(o.csv, [&](std::ostream& out) {
        out << "t,y,id_hpart,id_bpart\n";
        for (std::size_t t = 0; t < ids_h.size(); ++t) {
            out << t << ',' << series[t] << ',' << int(ids_h[t]) << ',' << int(ids_b[t]) << '\n';
        }
    });
    emit(o, j);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hysteretic and buffered Poisson autoregressions"};
    app.require_subcommand(1);
    Options o;

    auto* sim = app.add_subcommand("simulate", "Simulate a count series as CSV");
    add_spec_flags(sim, o);
    sim->add_option("--n", o.n, "Series length");
    sim->add_option("--burn-in", o.burn_in, "Discarded warm-up steps");
    sim->add_option("--seed", o.seed, "Random seed (default 0)");
    sim->add_option("-o,--output", o.output, "Output CSV (default stdout)");

    auto* fit_cmd = app.add_subcommand("fit", "Profile maximum likelihood fit");
    fit_cmd->add_option("-i,--input", o.input, "Input CSV (default stdin)");
    fit_cmd->add_option("--model", o.model, "par | setpar | bpart | hpart");
    add_grid_flags(fit_cmd, o);
    fit_cmd->add_option("--plot-data", o.plot_data, "Write t,y,lambda,regime CSV");
    fit_cmd->add_option("--bands", o.bands, "Write the regime map over (y_{t-2}, y_{t-1})");
    fit_cmd->add_option("-o,--output", o.output, "Output JSON (default stdout)");

    auto* bvh = app.add_subcommand("test-bvh", "Test a fitted BPART model against HPART");
    bvh->add_option("-i,--input", o.input, "Input CSV (default stdin)");
    add_grid_flags(bvh, o);
    bvh->add_option("--levels", o.levels, "Significance levels")->delimiter(',');
    bvh->add_option("--null-sims", o.null_sims, "Draws from the limiting null");
    bvh->add_option("-o,--output", o.output, "Output JSON (default stdout)");

    auto* hvb = app.add_subcommand("test-hvb", "Test a fitted HPART model against BPART");
    hvb->add_option("-i,--input", o.input, "Input CSV (default stdin)");
    add_grid_flags(hvb, o);
    hvb->add_option("--levels", o.levels, "Significance levels")->delimiter(',');
    hvb->add_option("-o,--output", o.output, "Output JSON (default stdout)");

    auto* fc = app.add_subcommand("forecast", "Rolling one-step-ahead forecasts");
    fc->add_option("-i,--input", o.input, "Input CSV (default stdin)");
    fc->add_option("--model", o.model, "par | setpar | bpart | hpart");
    fc->add_option("--holdout", o.holdout, "Number of trailing values to forecast");
    fc->add_option("--refit", o.refit, "fixed | expanding");
    add_grid_flags(fc, o);
    fc->add_option("--csv", o.csv, "Write per-step predictions");
    fc->add_option("-o,--output", o.output, "Output JSON (default stdout)");

    auto* mce = app.add_subcommand("mc-estimate", "Monte Carlo study of the estimator");
    add_spec_flags(mce, o);
    add_grid_flags(mce, o);
    mce->add_option("--n", o.n, "Series length");
    mce->add_option("--reps", o.reps, "Replicates");
    mce->add_option("--burn-in", o.burn_in, "Discarded warm-up steps");
    mce->add_option("--csv", o.csv, "Write the EM/EV/SG/VM table");
    mce->add_option("-o,--output", o.output, "Output JSON (default stdout)");

    auto* mct = app.add_subcommand("mc-test", "Monte Carlo size/power of a score test");
    add_spec_flags(mct, o);
    add_grid_flags(mct, o);
    mct->add_option("--test", o.test, "H0 (BPART null) | H0-tilde (HPART null)");
    mct->add_option("--n", o.n, "Series length");
    mct->add_option("--reps", o.reps, "Replicates");
    mct->add_option("--levels", o.levels, "Significance levels")->delimiter(',');
    mct->add_option("--null-sims", o.null_sims, "Draws from the limiting null per replicate");
    mct->add_option("--burn-in", o.burn_in, "Discarded warm-up steps");
    mct->add_option("--csv", o.csv, "Write the rejection table");
    mct->add_option("-o,--output", o.output, "Output JSON (default stdout)");

    auto* ids = app.add_subcommand("diagnose-ids", "Compare BPART and HPART regime ID cards");
    ids->add_option("-i,--input", o.input, "Input CSV (default stdin)");
    add_grid_flags(ids, o);
    ids->add_option("--order", o.order, "Markov order for the LR test (default: larger BIC order)");
    ids->add_option("--csv", o.csv, "Write the ID sequences");
    ids->add_option("-o,--output", o.output, "Output JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sim) return cmd_simulate(o);
        if (*fit_cmd) return cmd_fit(o);
        if (*bvh) return cmd_test_bvh(o);
        if (*hvb) return cmd_test_hvb(o);
        if (*fc) return cmd_forecast(o);
        if (*mce) return cmd_mc_estimate(o);
        if (*mct) return cmd_mc_test(o);
        if (*ids) return cmd_diagnose_ids(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const FitFailure& e) {
        std::cerr << "fit failed: " << e.what() << '\n';
        return kFitFailed;
    } catch (const InsufficientData& e) {
        std::cerr << "fit failed: " << e.what() << '\n';
        return kFitFailed;
    } catch (const DegenerateTest& e) {
        std::cerr << "degenerate test: " << e.what() << '\n';
        return kDegenerate;
    } catch (const SingularInformation& e) {
        std::cerr << "singular information: " << e.what() << '\n';
        return kNumerical;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
