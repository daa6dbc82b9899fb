#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "svarkit/app/pipeline.hpp"
#include "svarkit/rng.hpp"
#include "svarkit/synth.hpp"

using namespace svarkit;
using app::Json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("svarkit_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// Cumulated draws, so one difference recovers the simulated series exactly.
void save_levels(const fs::path& path, const QuarterlySeries& s) {
    std::vector<double> level{100.0};
    for (double v : s.values()) level.push_back(level.back() + v);
    save_csv(path, QuarterlySeries(s.label(), s.start().advanced(-1), std::move(level)));
}

Json synthetic_config(const fs::path& dir, int countries = 4, int length = 160) {
    Json list = Json::array();
    for (int c = 0; c < countries; ++c) {
        const std::string tag = "c" + std::to_string(c);
        const Simulation sim = simulate(reference_dgp(split_seed(31, static_cast<std::uint64_t>(c))), length);
        save_levels(dir / (tag + "_gdp.csv"), sim.series[0]);
        save_levels(dir / (tag + "_defl.csv"), sim.series[1]);
        list.push_back({{"name", "Country " + tag},
                        {"gdp", {{"path", tag + "_gdp.csv"}, {"log", false}, {"difference", 1}}},
                        {"deflator", {{"path", tag + "_defl.csv"}, {"log", false}, {"difference", 1}}},
                        {"lags", 2}});
    }
    return {{"output_dir", "out"},
            {"horizon", 10},
            {"full_period", "all"},
            {"sub_periods", Json::array({{{"label", "first"}, {"start", "1997-Q1"}, {"end", "2016-Q4"}},
                                         {{"label", "second"}, {"start", "2017-Q1"}, {"end", "2036-Q4"}}})},
            {"countries", std::move(list)}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("pipeline on four synthetic countries") {
    TempDir tmp("four");
    const auto cfg = app::parse_config(synthetic_config(tmp.path), tmp.path);
    const auto r = app::run_pipeline(cfg);
    CHECK(r.exit_code == 0);
    REQUIRE(r.report["countries"].size() == 4);
    for (const auto& c : r.report["countries"]) {
        CHECK(c["status"] == "ok");
        CHECK(c["stability"]["stable"] == true);
        CHECK(c["lags"] == 2);
        CHECK(c["structural"]["F"][0][0].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    }
    const Json& periods = r.report["correlations"]["periods"];
    REQUIRE(periods.size() == 3);
    for (const auto& p : periods) {
        for (const char* kind : {"demand", "supply"}) {
            int off_diagonal = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    const double v = p[kind][i][j].get<double>();
                    CHECK(v == p[kind][j][i].get<double>());
                    CHECK(std::fabs(v) <= 1.0);
                    ++off_diagonal;
                }
            }
            CHECK(off_diagonal == 12);
        }
    }
    for (const char* f : {"report.json", "report.meta.json", "correlations.txt", "shocks/country_c0.csv",
                          "figures/country_c3_output.svg", "figures/country_c3_inflation.svg"}) {
        CHECK_MESSAGE(fs::exists(cfg.output_dir / f), f);
    }
    const std::string svg = slurp(cfg.output_dir / "figures/country_c0_output.svg");
    CHECK(svg.find("demand shock") != std::string::npos);
    CHECK(svg.find("supply shock") != std::string::npos);
}

TEST_CASE("pipeline reproduces the simulated shocks' structure") {
    TempDir tmp("recover");
    const auto cfg = app::parse_config(synthetic_config(tmp.path, 2, 2000), tmp.path);
    const auto r = app::run_pipeline(cfg, {0, false});
    REQUIRE(r.exit_code == 0);
    const Eigen::MatrixXd truth = reference_dgp(0).impact;
    for (const auto& c : r.report["countries"]) {
        const Json& b = c["structural"]["B"];
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(std::fabs(b[i][j].get<double>() - truth(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) <
                      0.15);
            }
        }
    }
}

TEST_CASE("horizon 10 gives 10 impulse-response entries per panel") {
    TempDir tmp("horizon");
    const auto cfg = app::parse_config(synthetic_config(tmp.path, 2), tmp.path);
    const auto r = app::run_pipeline(cfg, {0, false});
    for (const auto& c : r.report["countries"]) {
        CHECK(c["irf"]["horizon"] == 10);
        for (const auto& [key, path] : c["irf"]["responses"].items()) CHECK_MESSAGE(path.size() == 10, key);
        for (const auto& [key, path] : c["irf"]["cumulative"].items()) CHECK_MESSAGE(path.size() == 10, key);
    }
}

TEST_CASE("report.json is byte-identical across runs and job counts") {
    TempDir tmp("determinism");
    auto cfg = app::parse_config(synthetic_config(tmp.path), tmp.path);
    app::run_pipeline(cfg, {0, true});
    const std::string first = slurp(cfg.output_dir / "report.json");
    app::run_pipeline(cfg, {1, true});
    const std::string second = slurp(cfg.output_dir / "report.json");
    CHECK(first == second);
    CHECK(first.find("generated_at") == std::string::npos);
    CHECK(slurp(cfg.output_dir / "report.meta.json").find("generated_at") != std::string::npos);
}

TEST_CASE("a missing input fails that country, names the path, and the others continue") {
    TempDir tmp("missing");
    Json doc = synthetic_config(tmp.path);
    doc["countries"][1]["gdp"]["path"] = "nowhere/gdp.csv";
    const auto r = app::run_pipeline(app::parse_config(doc, tmp.path), {0, false});
    CHECK(r.exit_code == 2);
    const Json& bad = r.report["countries"][1];
    CHECK(bad["status"] == "data_error");
    CHECK(bad["error"].get<std::string>().find("nowhere/gdp.csv") != std::string::npos);
    CHECK(r.report["countries"][0]["status"] == "ok");
    CHECK(r.report["correlations"]["countries"].size() == 3);
}

TEST_CASE("an unstable model stops that country before impulse responses") {
    TempDir tmp("unstable");
    Json doc = synthetic_config(tmp.path, 3);
    // Explosive in levels and left undifferenced.
    Rng rng(5);
    std::vector<double> y{1.0};
    std::vector<double> z{1.0};
    for (int t = 1; t < 120; ++t) {
        y.push_back(1.04 * y.back() + rng.normal());
        z.push_back(0.5 * z.back() + rng.normal());
    }
    save_csv(tmp.path / "x_gdp.csv", QuarterlySeries("x", {1997, 1}, y));
    save_csv(tmp.path / "x_defl.csv", QuarterlySeries("x", {1997, 1}, z));
    doc["countries"][2]["gdp"] = {{"path", "x_gdp.csv"}, {"log", false}, {"difference", 0}};
    doc["countries"][2]["deflator"] = {{"path", "x_defl.csv"}, {"log", false}, {"difference", 0}};
    doc["countries"][2]["lags"] = 1;
    const auto r = app::run_pipeline(app::parse_config(doc, tmp.path), {0, false});
    CHECK(r.exit_code == 3);
    const Json& c = r.report["countries"][2];
    CHECK(c["status"] == "model_error");
    CHECK(c["failed_stage"] == "stability");
    CHECK(c["stability"]["stable"] == false);
    CHECK_FALSE(c.contains("irf"));
    CHECK_FALSE(c.contains("shocks"));
    CHECK(r.report["countries"][0]["status"] == "ok");
}

TEST_CASE("config validation") {
    TempDir tmp("config");
    const Json good = synthetic_config(tmp.path, 2);
    CHECK_NOTHROW(app::parse_config(good, tmp.path));

    Json dup = good;
    dup["countries"][1]["gdp"]["path"] = good["countries"][0]["gdp"]["path"];
    CHECK_THROWS_WITH_AS(app::parse_config(dup, tmp.path), doctest::Contains("more than once"), app::ConfigError);

    Json h0 = good;
    h0["horizon"] = 0;
    CHECK_THROWS_AS(app::parse_config(h0, tmp.path), app::ConfigError);

    Json d3 = good;
    d3["countries"][0]["gdp"]["difference"] = 3;
    CHECK_THROWS_AS(app::parse_config(d3, tmp.path), app::ConfigError);

    Json spec = good;
    spec["countries"][0]["gdp"]["adf"] = Json::array({"quadratic"});
    CHECK_THROWS_AS(app::parse_config(spec, tmp.path), app::ConfigError);

    Json none = good;
    none["countries"] = Json::array();
    CHECK_THROWS_AS(app::parse_config(none, tmp.path), app::ConfigError);

    Json auto_lags = good;
    auto_lags["countries"][0]["lags"] = "auto";
    auto_lags["max_lag"] = 6;
    const auto cfg = app::parse_config(auto_lags, tmp.path);
    CHECK_FALSE(cfg.countries[0].lags.has_value());
    CHECK(cfg.countries[0].max_lag == 6);
    CHECK(cfg.countries[0].gdp.resolved == tmp.path / "c0_gdp.csv");

    CHECK_THROWS_AS(app::load_config(tmp.path / "absent.json"), app::ConfigError);
    std::ofstream(tmp.path / "broken.json") << "{ \"countries\": [";
    CHECK_THROWS_AS(app::load_config(tmp.path / "broken.json"), app::ConfigError);
    CHECK(app::slug("Côte d'Ivoire 2") .find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_") == std::string::npos);
}

TEST_CASE("shipped example configs parse") {
    const fs::path dir = fs::path(SVARKIT_SOURCE_DIR) / "config";
    const auto periphery = app::load_config(dir / "euro_periphery.json");
    REQUIRE(periphery.countries.size() == 4);
    CHECK(*periphery.countries[0].lags == 4);
    CHECK(*periphery.countries[1].lags == 5);
    CHECK(*periphery.countries[2].lags == 2);
    CHECK(*periphery.countries[3].lags == 4);
    CHECK(periphery.countries[3].deflator.adf[0] == Deterministic::trend_and_constant);
    CHECK(periphery.sub_periods.size() == 2);
    CHECK_NOTHROW(app::load_config(dir / "synthetic.json"));
}
