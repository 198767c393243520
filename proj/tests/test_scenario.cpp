#include "invosc/errors.hpp"
#include "invosc/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace invosc;

namespace {

const std::filesystem::path kFixtures{INVOSC_FIXTURE_DIR};

std::string expect_config_error(const std::string& text) {
    try {
        (void)ScenarioConfig::parse(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

std::string csv_of(const ScenarioConfig& cfg) {
    std::ostringstream out;
    write_csv(out, run(cfg), cfg);
    return out.str();
}

std::vector<std::vector<double>> parse_csv(std::istream& in, std::string& header) {
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* kMinimal = R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": 0.01})";

} // namespace

TEST_CASE("parse a minimal scenario with defaults") {
    const auto cfg = ScenarioConfig::parse(kMinimal);
    CHECK(cfg.profile.family == ProfileFamily::constant);
    CHECK(cfg.t0 == 0.0);
    CHECK(cfg.t_end == 1.0);
    CHECK(cfg.step == 0.01);
    CHECK(cfg.sample_every == 1);
    CHECK(cfg.hbar == 1.0);
    CHECK(cfg.number_states == std::vector<unsigned>{0});
    CHECK_FALSE(cfg.oracle.enabled);
    CHECK_FALSE(cfg.csv_path.has_value());
}

TEST_CASE("parse every profile family") {
    const auto q = ScenarioConfig::load(kFixtures / "quench.json");
    CHECK(q.profile.family == ProfileFamily::quench);
    CHECK(q.profile.params.at("target.Z") == 4.0);
    CHECK(q.oracle.enabled);
    CHECK(q.oracle.dimension == 64);
    CHECK(q.number_states == std::vector<unsigned>{0, 1});

    const auto m = ScenarioConfig::load(kFixtures / "modulated.json");
    CHECK(m.profile.params.at("nu") == 2.0);
    CHECK(m.sample_every == 1000);

    const auto t = ScenarioConfig::parse(R"({
        "profile": {"family": "tabulated", "rows": [[0,1,0,1],[1,1,0,1.2],[2,1,0,1.1],[3,1,0,1]]},
        "t_end": 3, "step": 0.01})");
    CHECK(t.profile.rows.size() == 4);
    CHECK(t.profile.build().domain().end == 3.0);
}

TEST_CASE("invalid scenarios name the offending field") {
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": -0.001})") ==
          "step");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 0, "step": 0.01})") ==
          "t_end");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "step": 0.01})") == "t_end");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Z0": 1}, "t_end": 1, "step": 0.01})") ==
          "profile.Y0");
    CHECK(expect_config_error(R"({"profile": {"family": "sawtooth"}, "t_end": 1, "step": 0.01})") == "profile.family");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1, "W": 2}, "t_end": 1, "step": 0.01})") ==
          "profile.W");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": 0.01, "speed": 3})") ==
          "speed");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": 0.01,
                                  "oracle": {"enabled": true, "dimension": 1}})") == "oracle.dimension");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": 0.01,
                                  "oracle": {"enabled": true, "dimension": 4}, "number_states": [5]})") == "number_states");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": 0.01,
                                  "output": {"csv": "/nonexistent-dir/x.csv"}})") == "output.csv");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 1, "Z0": 1}, "t_end": 1, "step": 0.01})") ==
          "profile");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": -1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": 0.01})") ==
          "profile");
    CHECK(expect_config_error(R"({"profile": {"family": "tabulated", "rows": [[0,1,0,1],[1,1,0,1],[2,1,0,1],[3,1,0,1]]},
                                  "t_end": 5, "step": 0.01})") == "t_end");
    CHECK(expect_config_error(R"({"profile": {"family": "quench", "initial": {"X": 1, "Y": 0, "Z": 1}, "t_center": 1, "width": 1},
                                  "t_end": 5, "step": 0.01})") == "profile.target");
    CHECK(expect_config_error(R"({"profile": {"family": "constant", "X0": 1, "Y0": 0, "Z0": 1}, "t_end": 1, "step": 0.01,
                                  "sample_every": 0})") == "sample_every");
    CHECK(expect_config_error("{not json") == "document");
}

TEST_CASE("config error message carries the field") {
    try {
        (void)ScenarioConfig::load(kFixtures / "bad_step.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).rfind("step: ", 0) == 0);
    }
    CHECK_THROWS_AS(ScenarioConfig::load(kFixtures / "missing.json"), ConfigError);
}

TEST_CASE("constant scenario keeps its vacuum correlators") {
    auto cfg = ScenarioConfig::load(kFixtures / "constant.json");
    const auto result = run(cfg);
    CHECK(result.samples.size() == 101);
    for (const auto& rec : result.samples) {
        CHECK(rec.correlators[0].q2 == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(rec.correlators[1].p2 == doctest::Approx(1.5).epsilon(1e-10));
        REQUIRE(rec.squeeze.has_value());
        CHECK(rec.squeeze->r <= 1e-8);
    }
}

TEST_CASE("CSV layout and determinism") {
    const auto cfg = ScenarioConfig::load(kFixtures / "constant.json");
    const std::string a = csv_of(cfg);
    const std::string b = csv_of(cfg);
    CHECK(a == b);
    const auto header = a.substr(0, a.find('\n'));
    CHECK(header ==
          "t,re_u,im_u,re_udot,im_udot,wronskian_residual,re_alpha,im_alpha,re_beta,im_beta,unitarity_residual,"
          "theta,r,phi,q2_0,p2_0,cross_0,uncertainty_0,q2_1,p2_1,cross_1,uncertainty_1");
}

TEST_CASE("modulated scenario reproduces the frozen regression table") {
    const auto cfg = ScenarioConfig::load(kFixtures / "modulated.json");
    std::stringstream produced(csv_of(cfg));
    std::ifstream frozen(kFixtures / "modulated_regression.csv");
    REQUIRE(frozen);
    std::string h1, h2;
    const auto got = parse_csv(produced, h1);
    const auto want = parse_csv(frozen, h2);
    CHECK(h1 == h2);
    REQUIRE(got.size() == want.size());
    REQUIRE(got.size() == 51);
    for (std::size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].size() == want[i].size());
        for (std::size_t j = 0; j < got[i].size(); ++j) {
            // Residual columns sit at rounding level; everything else is compared to 1e-10.
            const bool residual = j == 5 || j == 10;
            const double tol = residual ? 1e-12 : 1e-10 * std::max(1.0, std::abs(want[i][j]));
            CHECK(std::abs(got[i][j] - want[i][j]) <= tol);
        }
    }
}

TEST_CASE("verify passes on clean scenarios with the oracle enabled") {
    const auto report = verify(ScenarioConfig::load(kFixtures / "constant.json"));
    CHECK(report.pass());
    for (const char* name : {"wronskian_conservation", "unitarity", "reference_identity", "picture_equality",
                             "commutator_invariant", "commutator_heisenberg", "uncertainty_n0", "uncertainty_n1",
                             "oracle_norm", "oracle_correlators_n0", "oracle_correlators_n1",
                             "oracle_mean_occupation_n0", "oracle_mean_occupation_n1"}) {
        CAPTURE(name);
        CHECK(report.find(name) != nullptr);
    }
    const auto doc = nlohmann::json::parse(report.to_json());
    CHECK(doc["status"] == "pass");
    CHECK(doc["entries"].size() == report.entries.size());
}

TEST_CASE("verify passes on the quench fixture with the oracle") {
    const auto report = verify(ScenarioConfig::load(kFixtures / "quench.json"));
    CHECK(report.pass());
    const auto* corr = report.find("oracle_correlators_n1");
    REQUIRE(corr != nullptr);
    CHECK(corr->tolerance == 1e-4);
    CHECK(corr->max_residual <= 1e-4);
}

TEST_CASE("verify flags a corrupted initial mode") {
    const auto report = verify(ScenarioConfig::load(kFixtures / "corrupted.json"));
    CHECK_FALSE(report.pass());
    const auto* w = report.find("wronskian_conservation");
    REQUIRE(w != nullptr);
    CHECK_FALSE(w->pass);
    CHECK(w->max_residual == doctest::Approx(0.21).epsilon(1e-12));
    CHECK(nlohmann::json::parse(report.to_json())["status"] == "fail");
    CHECK_THROWS_AS(run(ScenarioConfig::load(kFixtures / "corrupted.json")), ConsistencyError);
}

TEST_CASE("sweep") {
    auto cfg = ScenarioConfig::load(kFixtures / "modulated.json");
    cfg.t_end = 20.0;
    cfg.sample_every = 100;

    SUBCASE("zero modulation gives no squeezing") {
        const auto rows = sweep(cfg, "epsilon", {0.0});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].final_beta2 <= 1e-9);
    }
    SUBCASE("parametric resonance beats an off-resonant drive") {
        const auto rows = sweep(cfg, "nu", {2.0, 3.7});
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].value == 2.0);
        CHECK(rows[1].value == 3.7);
        CHECK(rows[0].final_beta2 > rows[1].final_beta2);
        CHECK(rows[0].max_wronskian_residual <= 1e-9);
    }
    SUBCASE("concurrent rows match serial runs") {
        const std::vector<double> values{1.6, 1.8, 2.0, 2.2, 2.4};
        const auto rows = sweep(cfg, "nu", values);
        for (std::size_t i = 0; i < values.size(); ++i) {
            auto single = cfg;
            single.profile.params["nu"] = values[i];
            const auto last = run(single).samples.back();
            CHECK(rows[i].final_beta2 == std::norm(last.pair.beta));
        }
    }
    SUBCASE("empty value list") {
        const auto rows = sweep(cfg, "nu", {});
        CHECK(rows.empty());
        std::ostringstream out;
        write_sweep_csv(out, rows);
        CHECK(out.str() == "value,final_beta2,final_r,max_wronskian_residual,max_unitarity_residual\n");
    }
    SUBCASE("unknown parameter") {
        CHECK_THROWS_AS(sweep(cfg, "width", {1.0}), ConfigError);
    }
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 2.6118273729993811, -1e-300}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
