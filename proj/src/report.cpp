#include "hpart/report.hpp"

#include "hpart/errors.hpp"
#include "hpart/filter.hpp"
#include "hpart/regime.hpp"

#include <iomanip>
#include <ostream>

namespace hpart {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json coefficients_json(const Coefficients& c, ModelKind kind) {
    Json j = Json::object();
    const auto a = c.as_array();
    for (std::size_t i = 0; i < coefficient_count(kind); ++i) j[std::string(kCoefficientNames[i])] = a[i];
    return j;
}

Json thresholds_json(const Thresholds& t, ModelKind kind) {
    Json j = Json::object();
    if (kind != ModelKind::Par) j["r"] = t.r;
    if (kind == ModelKind::Bpart || kind == ModelKind::Hpart) j["s"] = t.s;
    if (kind == ModelKind::Hpart) j["c"] = t.c;
    return j;
}

void precise(std::ostream& out) { out << std::setprecision(17); }

}  // namespace

Json to_json(const ModelSpec& spec) {
    Json j;
    j["model"] = std::string(to_string(spec.kind));
    j["coefficients"] = coefficients_json(spec.coef, spec.kind);
    j["thresholds"] = thresholds_json(spec.tau, spec.kind);
    Json init = Json::object();
    if (spec.init.lambda0) init["lambda0"] = *spec.init.lambda0;
    if (spec.init.regime0) init["regime0"] = *spec.init.regime0;
    init["delta_y0"] = spec.init.delta_y0;
    j["init"] = init;
    return j;
}

ModelSpec spec_from_json(const Json& j) {
    try {
        ModelSpec spec;
        spec.kind = parse_model_kind(j.at("model").get<std::string>());
        std::array<double, 6> a{};
        const auto& coef = j.at("coefficients");
        for (std::size_t i = 0; i < coefficient_count(spec.kind); ++i) {
            a[i] = coef.at(std::string(kCoefficientNames[i])).get<double>();
        }
        spec.coef = Coefficients::from_array(a);
        const auto& tau = j.at("thresholds");
        spec.tau.r = tau.value("r", Count{0});
        spec.tau.s = tau.value("s", spec.tau.r);
        spec.tau.c = tau.value("c", Count{0});
        if (j.contains("init")) {
            const auto& init = j["init"];
            if (init.contains("lambda0")) spec.init.lambda0 = init["lambda0"].get<double>();
            if (init.contains("regime0")) spec.init.regime0 = init["regime0"].get<int>();
            spec.init.delta_y0 = init.value("delta_y0", Count{0});
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed model spec JSON: ") + e.what());
    }
}

Json to_json(const FitResult& fit) {
    Json j;
    j["spec"] = to_json(fit.spec_hat);
    j["loglik"] = fit.loglik;
    j["terms"] = fit.terms;
    if (fit.std_errors.empty()) {
        j["std_errors"] = nullptr;
    } else {
        Json se = Json::object();
        for (std::size_t i = 0; i < fit.std_errors.size(); ++i) se[std::string(kCoefficientNames[i])] = fit.std_errors[i];
        j["std_errors"] = se;
    }
    if (fit.info) {
        Json m = Json::array();
        for (Eigen::Index r = 0; r < fit.info->matrix().rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < fit.info->matrix().cols(); ++c) row.push_back(fit.info->matrix()(r, c));
            m.push_back(row);
        }
        j["information"] = m;
    }
    const auto& d = fit.diagnostics;
    j["diagnostics"] = {{"converged", d.converged},
                        {"multistart", d.multistart},
                        {"cells", d.cells},
                        {"distinct_paths", d.distinct_paths},
                        {"failed_cells", d.failed_cells},
                        {"identification_suspect", d.identification_suspect},
                        {"at_boundary", d.at_boundary},
                        {"notes", d.notes}};
    Json profile = Json::array();
    for (const auto& e : fit.profile) {
        Json row = thresholds_json(e.tau, fit.spec_hat.kind);
        row["loglik"] = e.error.empty() ? Json(e.loglik) : Json(nullptr);
        row["converged"] = e.converged;
        if (e.same_path_as) row["same_path_as"] = *e.same_path_as;
        if (!e.error.empty()) row["error"] = e.error;
        profile.push_back(row);
    }
    j["profile"] = profile;
    return j;
}

Json to_json(const TestOutcome& o) {
    Json j;
    j["test"] = o.test;
    j["statistic"] = o.statistic;
    if (o.test == "hpart-vs-bpart") {
        j["raw_statistic"] = o.raw_statistic;
        j["sigma1_prime"] = o.sigma.sigma1p;
        j["sigma2_prime"] = o.sigma.sigma2p;
    } else {
        j["null_sims"] = o.null_sims;
    }
    j["p_value"] = o.p_value;
    j["candidates"] = o.candidates;
    j["per_c_stats"] = o.per_c_stats;
    j["dropped_candidates"] = o.dropped_candidates;
    Json decisions = Json::array();
    for (const auto& d : o.decisions) {
        decisions.push_back({{"level", d.level},
                             {"critical_value", d.critical_value},
                             {"reject", d.reject},
                             {"decision", d.reject ? "rejected" : "not rejected"}});
    }
    j["decisions"] = decisions;
    j["sigma_repaired"] = o.sigma.repaired;
    j["warnings"] = o.warnings;
    return j;
}

Json to_json(const ForecastReport& r) {
    Json j;
    j["model"] = std::string(to_string(r.kind));
    j["refit_policy"] = std::string(to_string(r.refit_policy));
    j["origin"] = r.origin;
    j["holdout"] = r.predictions.size();
    j["mse"] = r.mse;
    j["mae"] = r.mae;
    j["refits"] = r.refits;
    Json steps = Json::array();
    for (std::size_t i = 0; i < r.predictions.size(); ++i) {
        steps.push_back({{"t", r.origin + i}, {"prediction", r.predictions[i]}, {"actual", r.actuals[i]}});
    }
    j["steps"] = steps;
    j["fit"] = to_json(r.fit);
    return j;
}

Json to_json(const McSummary& s) {
    Json j;
    j["truth"] = to_json(s.truth);
    j["n"] = s.n;
    j["replications"] = s.replications;
    j["failures"] = s.failures;
    j["failure_messages"] = s.failure_messages;
    j["threshold_recovery"] = s.threshold_recovery;
    Json params = Json::array();
    for (const auto& p : s.params) {
        params.push_back({{"name", p.name},
                          {"truth", p.truth},
                          {"EM", p.em},
                          {"EV", optional_number(p.ev)},
                          {"SG", optional_number(p.sg)},
                          {"VM", optional_number(p.vm)}});
    }
    j["params"] = params;
    return j;
}

Json to_json(const TestStudyResult& s) {
    Json j;
    j["test"] = std::string(to_string(s.test));
    j["generator"] = to_json(s.generator);
    j["n"] = s.n;
    j["replications"] = s.replications;
    j["failures"] = s.failures;
    j["failure_messages"] = s.failure_messages;
    Json rows = Json::array();
    for (std::size_t l = 0; l < s.levels.size(); ++l) {
        rows.push_back({{"level", s.levels[l]}, {"rejection_rate", s.rejection_rate[l]}});
    }
    j["rates"] = rows;
    return j;
}

Json to_json(const ContingencyTable2x2& t) {
    return {{"n11", t.n11}, {"n10", t.n10}, {"n01", t.n01}, {"n00", t.n00}, {"total", t.total()}};
}

void write_plot_data(std::ostream& out, const CountSeries& series, const ModelSpec& spec) {
    const IntensityPath path = intensity_filter(series, spec);
    precise(out);
    out << "t,y,lambda,regime\n";
    for (std::size_t t = 1; t < series.size(); ++t) {
        out << t << ',' << series[t] << ',' << path.lambdas[t - 1] << ',' << int(path.regimes[t - 1]) << '\n';
    }
}

void write_regime_bands(std::ostream& out, const ModelSpec& spec, Count y_max) {
    if (y_max < 0) throw InvalidArgument("write_regime_bands: y_max must be nonnegative");
    const Count r = spec.tau.r;
    const Count s = spec.kind == ModelKind::Setpar ? r : spec.tau.s;
    out << "y_tm2,y_tm1,zone,indicator\n";
    for (Count y2 = 0; y2 <= y_max; ++y2) {
        for (Count y1 = 0; y1 <= y_max; ++y1) {
            const char* zone = y1 <= r ? "lower" : (y1 <= s ? "band" : "upper");
            out << y2 << ',' << y1 << ',' << zone << ',';
            switch (spec.kind) {
                case ModelKind::Par:
                    out << 1;
                    break;
                case ModelKind::Setpar:
                    out << (y1 <= r ? 1 : 0);
                    break;
                case ModelKind::Bpart:
                    if (y1 > r && y1 <= s) {
                        out << "carry";
                    } else {
                        out << (y1 <= r ? 1 : 0);
                    }
                    break;
                case ModelKind::Hpart:
                    out << int(hysteresis_indicator(y1, y1 - y2, r, s, spec.tau.c));
                    break;
            }
            out << '\n';
        }
    }
}

void write_csv(std::ostream& out, const McSummary& s) {
    precise(out);
    out << "n,description";
    for (const auto& p : s.params) out << ',' << p.name;
    out << '\n';
    auto row = [&](const char* label, auto get) {
        out << s.n << ',' << label;
        for (const auto& p : s.params) {
            const std::optional<double> v = get(p);
            out << ',';
            if (v) out << *v;
        }
        out << '\n';
    };
    row("truth", [](const ParamSummary& p) { return std::optional<double>(p.truth); });
    row("EM", [](const ParamSummary& p) { return std::optional<double>(p.em); });
    row("EV", [](const ParamSummary& p) { return p.ev; });
    row("SG", [](const ParamSummary& p) { return p.sg; });
    row("VM", [](const ParamSummary& p) { return p.vm; });
}

void write_csv(std::ostream& out, const TestStudyResult& s) {
    precise(out);
    out << "test,data,c0,level,n,rejection_rate,replications,failures\n";
    for (std::size_t l = 0; l < s.levels.size(); ++l) {
        out << to_string(s.test) << ',' << to_string(s.generator.kind) << ',';
        if (s.generator.kind == ModelKind::Hpart) out << s.generator.tau.c;
        out << ',' << s.levels[l] << ',' << s.n << ',' << s.rejection_rate[l] << ',' << s.replications << ','
            << s.failures << '\n';
    }
}

void write_csv(std::ostream& out, const ForecastReport& r) {
    precise(out);
    out << "t,prediction,actual\n";
    for (std::size_t i = 0; i < r.predictions.size(); ++i) {
        out << r.origin + i << ',' << r.predictions[i] << ',' << r.actuals[i] << '\n';
    }
}

}  // namespace hpart
