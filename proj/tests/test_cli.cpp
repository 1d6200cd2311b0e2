#include <cmath>
#include <complex>

#include "cli_run.hpp"
#include "doctest.h"

using namespace clitest;
using nlohmann::json;

namespace {

std::complex<double> cj(const json& a) { return {a[0].get<double>(), a[1].get<double>()}; }

}  // namespace

TEST_CASE("charts-verify passes with 100 samples and writes a per-chart report") {
    const auto d = scratch("verify");
    REQUIRE(run("--seed 7 charts-verify --samples 100", d / "a") == 0);
    const json rep = read_json(d / "a" / "charts_verify.json");
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["charts"].size() == 21);
    const json meta = read_json(d / "a" / "run.json");
    CHECK(meta["config"]["seed"] == 7);
    CHECK(meta["config"]["samples"] == 100);
}

TEST_CASE("charts-verify with a tampered chart exits 1 and names it") {
    const auto d = scratch("tamper");
    CHECK(run("charts-verify --samples 10 --tamper C91", d) == 1);
    CHECK(slurp(d / "stderr.txt").find("C91") != std::string::npos);
    const json meta = read_json(d / "run.json");
    CHECK(meta["summary"]["failing_charts"][0] == "C91");
}

TEST_CASE("config errors exit 64") {
    const auto d = scratch("config_errors");
    CHECK(run("charts-verify --samples 0", d / "a") == 64);
    CHECK(run("no-such-command", d / "b") == 64);
    const auto unknown = write_config(d, "unknown.json", R"({"start": {"z": 6}, "path": [], "bogus": 1})");
    CHECK(run("--config " + unknown.string() + " integrate", d / "c") == 64);
    const auto empty_path = write_config(d, "empty.json", R"({"start": {"z": 6}, "path": []})");
    CHECK(run("--config " + empty_path.string() + " integrate", d / "d") == 64);
    const auto through0 = write_config(
        d, "zero.json", R"({"start": {"z": [-1, 0]}, "path": [{"type": "segment", "from": [-1, 0], "to": [1, 0]}]})");
    CHECK(run("--config " + through0.string() + " integrate", d / "e") == 64);
    const auto bad_json = write_config(d, "bad.json", "{not json");
    CHECK(run("--config " + bad_json.string() + " periods", d / "f") == 64);
    const auto singular = write_config(d, "sing.json", R"({"q": [[0, 0.5443310539518174]]})");
    CHECK(run("--config " + singular.string() + " periods", d / "g") == 64);
    CHECK(run("--tol -1 laurent", d / "h") == 64);
}

TEST_CASE("integrate: generic solution from (0,0) at z = 6 along the real axis") {
    const auto d = scratch("generic");
    REQUIRE(run("--config " + config_path("generic.json") + " integrate", d) == 0);
    const json meta = read_json(d / "run.json");
    CHECK(meta["status"] == "ok");
    CHECK(meta["summary"]["poles"].get<int>() >= 5);
    const json poles = read_json(d / "poles.json");
    CHECK(poles.size() == meta["summary"]["poles"].get<std::size_t>());
    const std::string csv = slurp(d / "trajectory.csv");
    CHECK(csv.rfind("s,re_z,im_z,chart,", 0) == 0);
    CHECK_FALSE(fs::exists(d / "INCOMPLETE"));
}

TEST_CASE("integrate: monodromy loop maps (u1, u2) to (-u1, i u2)") {
    const auto d = scratch("monodromy");
    REQUIRE(run("--config " + config_path("monodromy.json") + " integrate", d) == 0);
    const json s = read_json(d / "run.json")["summary"]["final_base"];
    const std::complex<double> u10(0.3, 0.1), u20(0.2, -0.1), I(0, 1);
    CHECK(std::abs(cj(s["u1"]) + u10) < 1e-6);
    CHECK(std::abs(cj(s["u2"]) - I * u20) < 1e-6);
}

TEST_CASE("integrate: near-infinity run recedes from the infinity set like |z|^(6/5)") {
    const auto d = scratch("repellor");
    REQUIRE(run("--config " + config_path("repellor.json") + " integrate", d) == 0);
    const json fit = read_json(d / "run.json")["summary"]["log_d_vs_log_z"];
    CHECK(fit["samples"].get<int>() > 100);
    CHECK(std::abs(fit["slope"].get<double>() - 1.2) < 0.25);
}

TEST_CASE("integrate: numeric failure keeps partial output and a marker file") {
    const auto d = scratch("partial");
    const auto cfg = write_config(d, "short.json", R"({
      "start": {"z": [6, 0], "u1": 0, "u2": 0},
      "path": [{"type": "segment", "from": [6, 0], "to": [60, 0]}],
      "step": {"max_steps": 50}})");
    CHECK(run("--config " + cfg.string() + " integrate", d / "out") == 2);
    CHECK(fs::exists(d / "out" / "INCOMPLETE"));
    CHECK(read_json(d / "out" / "run.json")["status"] == "partial");
    const std::string csv = slurp(d / "out" / "trajectory.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') > 10);

    // A later successful run into the same directory clears the marker.
    CHECK(run("--config " + config_path("generic.json") + " integrate", d / "out") == 0);
    CHECK_FALSE(fs::exists(d / "out" / "INCOMPLETE"));
}

TEST_CASE("--tol overrides the step tolerance and is echoed") {
    const auto d = scratch("tol");
    REQUIRE(run("--tol 1e-9 --config " + config_path("generic.json") + " integrate", d) == 0);
    const json step = read_json(d / "run.json")["config"]["step"];
    CHECK(step["rel_tol"].get<double>() == 1e-9);
    CHECK(step["abs_tol"].get<double>() == doctest::Approx(1e-11));
}

TEST_CASE("pole-field writes poles and the spacing histogram") {
    const auto d = scratch("field");
    REQUIRE(run("--threads 2 --config " + config_path("pole_field.json") + " pole-field", d) == 0);
    CHECK(slurp(d / "poles.csv").find('\n') != std::string::npos);
    const json h = read_json(d / "spacing_histogram.json");
    CHECK(h.is_object());
    const json meta = read_json(d / "run.json");
    CHECK(meta["config"]["threads"] == 2);
    CHECK(meta["summary"]["poles"].get<int>() >= 3);
}

TEST_CASE("tritronquee comparison converges") {
    const auto d = scratch("tri");
    REQUIRE(run("--config " + config_path("tritronquee.json") + " tritronquee", d) == 0);
    const json s = read_json(d / "run.json")["summary"];
    CHECK(s["located"].get<int>() >= 18);
    CHECK(s["decay_exponent"].get<double>() >= 1.5);
    const std::string csv = slurp(d / "tritronquee.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
}

TEST_CASE("tritronquee with an unattainable requirement exits 2 with partial rows") {
    const auto d = scratch("tri_partial");
    const auto cfg = write_config(d, "t.json", R"({"n_max": 5, "require_from": 1})");
    CHECK(run("--config " + cfg.string() + " tritronquee", d / "out") == 2);
    CHECK(fs::exists(d / "out" / "INCOMPLETE"));
    CHECK(read_json(d / "out" / "run.json")["summary"]["first_missing_n"] == 1);
}

TEST_CASE("periods: tables, asymptotic agreement, identity and the grid") {
    const auto d = scratch("periods");
    REQUIRE(run("--config " + config_path("periods.json") + " periods", d) == 0);
    const json s = read_json(d / "run.json")["summary"];
    CHECK(s["levels"] == 11);
    CHECK(s["max_relative_asymptotic_deviation"].get<double>() < 1e-3);
    CHECK(s["max_identity_residual"].get<double>() < 1e-8);
    const std::string grid = slurp(d / "wp_grid.csv");
    CHECK(grid.rfind("re_z,im_z,abs_wp\n", 0) == 0);
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 1 + 121 * 121);
}

TEST_CASE("laurent: coefficients and error table") {
    const auto d = scratch("laurent");
    REQUIRE(run("--config " + config_path("laurent.json") + " laurent", d) == 0);
    const json c = read_json(d / "laurent_coeffs.json");
    CHECK(c.size() == 7);
    CHECK(c[0]["n"] == -2);
    CHECK(cj(c[0]["c"]) == std::complex<double>(1, 0));
    const std::string csv = slurp(d / "laurent.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);
}

TEST_CASE("repeated runs with a fixed seed are byte-identical") {
    const auto d = scratch("determinism");
    for (const char* run_dir : {"a", "b"}) {
        REQUIRE(run("--seed 3 charts-verify --samples 20", d / run_dir / "verify") == 0);
        REQUIRE(run("--config " + config_path("generic.json") + " integrate", d / run_dir / "integrate") == 0);
        REQUIRE(run("--seed 3 --config " + config_path("periods.json") + " periods", d / run_dir / "periods") == 0);
        REQUIRE(run("--threads 3 --config " + config_path("pole_field.json") + " pole-field", d / run_dir / "field") ==
                0);
    }
    for (const auto& entry : fs::recursive_directory_iterator(d / "a")) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), d / "a");
        INFO(rel.string());
        CHECK(slurp(entry.path()) == slurp(d / "b" / rel));
    }
}
