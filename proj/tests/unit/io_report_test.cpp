#include "hpart/errors.hpp"
#include "hpart/filter.hpp"
#include "hpart/io.hpp"
#include "hpart/regime.hpp"
#include "hpart/report.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hpart;

namespace {

const Coefficients kSet1{0.5, 0.6, 0.4, 0.2, 0.4, 0.5};

std::size_t error_line(std::string_view text) {
    try {
        (void)ingest_csv_text(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST(Ingest, OneCountPerLine) { EXPECT_EQ(ingest_csv_text("3\n5\n7\n").values, (std::vector<Count>{3, 5, 7})); }

TEST(Ingest, HeaderAndTimestampColumn) {
    EXPECT_EQ(ingest_csv_text("date,count\n2020-01,4\n2020-02,0\n").values, (std::vector<Count>{4, 0}));
}

TEST(Ingest, TimestampWithoutHeader) {
    EXPECT_EQ(ingest_csv_text("2020-01,4\n2020-02,6\n").values, (std::vector<Count>{4, 6}));
}

TEST(Ingest, CrlfAndBlankLines) {
    EXPECT_EQ(ingest_csv_text("count\r\n1\r\n\r\n2\r\n").values, (std::vector<Count>{1, 2}));
}

TEST(Ingest, RejectsBadValuesWithLineNumber) {
    EXPECT_EQ(error_line("2\n-1\n"), 2u);
    EXPECT_EQ(error_line("2\n3\n2.5\n"), 3u);
    EXPECT_EQ(error_line("y\n1\nabc\n"), 3u);
    EXPECT_EQ(error_line("t,y\n1,\n"), 2u);
    EXPECT_THROW((void)ingest_csv_text(""), ParseError);
    EXPECT_THROW((void)ingest_csv_text("count\n"), ParseError);
}

TEST(Report, SpecRoundTripsExactly) {
    const auto sim = simulate(ModelSpec::hpart(kSet1, 3, 6, 0), 300, 100, 1);
    OptimizerConfig cfg;
    cfg.threads = 1;
    cfg.refine_top = 5;
    const FitResult f = fit(sim.series, ModelKind::Hpart, GridOptions{}, cfg);
    const Json j = Json::parse(to_json(f).dump());
    const ModelSpec back = spec_from_json(j.at("spec"));
    EXPECT_EQ(back.coef, f.spec_hat.coef);
    EXPECT_EQ(back.tau, f.spec_hat.tau);
    EXPECT_EQ(back.init.lambda0, f.spec_hat.init.lambda0);
    EXPECT_EQ(back.kind, ModelKind::Hpart);
    EXPECT_THROW((void)spec_from_json(Json::object()), InvalidArgument);
}

TEST(Report, TestOutcomeListsEveryLevel) {
    const auto sim = simulate(ModelSpec::hpart(kSet1, 3, 6, 0), 500, 100, 2);
    const TestOutcome o = test_hpart_vs_bpart(sim.series, ModelSpec::hpart(kSet1, 3, 6, 0));
    const Json j = to_json(o);
    ASSERT_EQ(j.at("decisions").size(), 3u);
    std::vector<double> levels;
    for (const auto& d : j["decisions"]) {
        levels.push_back(d.at("level").get<double>());
        EXPECT_TRUE(d.contains("decision"));
    }
    EXPECT_EQ(levels, (std::vector<double>{0.10, 0.05, 0.01}));
}

TEST(Report, RegimeBandsFollowIndicator) {
    const auto spec = ModelSpec::hpart(kSet1, 3, 6, 0);
    std::ostringstream out;
    write_regime_bands(out, spec, 10);
    const auto rows = lines_of(out.str());
    ASSERT_EQ(rows.size(), 1u + 11u * 11u);
    EXPECT_EQ(rows[0], "y_tm2,y_tm1,zone,indicator");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream row(rows[i]);
        std::string a, b, zone, ind;
        std::getline(row, a, ',');
        std::getline(row, b, ',');
        std::getline(row, zone, ',');
        std::getline(row, ind, ',');
        const Count y2 = std::stoll(a), y1 = std::stoll(b);
        EXPECT_EQ(std::stoi(ind), hysteresis_indicator(y1, y1 - y2, 3, 6, 0));
        EXPECT_EQ(zone, y1 <= 3 ? "lower" : (y1 <= 6 ? "band" : "upper"));
    }
}

TEST(Report, BpartBandCarriesState) {
    std::ostringstream out;
    write_regime_bands(out, ModelSpec::bpart(kSet1, 3, 6), 8);
    EXPECT_NE(out.str().find("0,5,band,carry"), std::string::npos);
    EXPECT_NE(out.str().find("0,7,upper,0"), std::string::npos);
}

TEST(Report, PlotDataRows) {
    auto spec = ModelSpec::bpart(kSet1, 3, 6);
    spec.init.lambda0 = 1.0;
    std::ostringstream out;
    write_plot_data(out, CountSeries({2, 5, 7, 4}), spec);
    const auto rows = lines_of(out.str());
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "t,y,lambda,regime");
    EXPECT_EQ(rows[1].substr(0, 7), "1,5,2.1");
}

TEST(Report, McSummaryCsvHasTableRows) {
    McSummary s;
    s.n = 500;
    s.params.push_back({"alpha1", 0.8, 0.79, 0.007, 0.007, 0.009});
    std::ostringstream out;
    write_csv(out, s);
    const auto rows = lines_of(out.str());
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], "n,description,alpha1");
    EXPECT_EQ(rows[2].substr(0, 7), "500,EM,");
}
