#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hyperwave/harness.hpp"

using namespace hyperwave;
using namespace hyperwave::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("hyperwave_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error(const std::string& command, const std::string& text) {
  fs::path d = scratch("cfgerr");
  try {
    RunConfig cfg = load_config(command, write_config(d, text).string(), std::nullopt, 1);
    execute(cfg);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("unknown keys are rejected with their line") {
    std::string msg = config_error("evolve", "{\n  \"n\": 32,\n  \"s_mx\": 1.0\n}\n");
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("s_mx") != std::string::npos);
    msg = config_error("evolve", "{\n  \"n\": 32,\n  \"data\": {\n    \"f\": \"linear\",\n    \"h\": 1\n  }\n}\n");
    CHECK(msg.find("line 5") != std::string::npos);
    CHECK(msg.find("data.h") != std::string::npos);
  }

  TEST_CASE("syntax and type errors carry a line") {
    CHECK(config_error("evolve", "{\n  \"n\": 32,\n  \"s_max\" 1.0\n}\n").find("line 3") != std::string::npos);
    CHECK(config_error("evolve", "{\n  \"n\": \"many\"\n}\n").find("line 2") != std::string::npos);
    CHECK(config_error("evolve", "{\n  \"n\": 33\n}\n").find("even") != std::string::npos);
    CHECK(config_error("spectrum", "{\n  \"command\": \"evolve\"\n}\n").find("does not match") != std::string::npos);
    CHECK(config_error("spectrum", "{}").find("potential") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(exit_code(ErrorKind::config) == 2);
    CHECK(exit_code(ErrorKind::parity) == 2);
    CHECK(exit_code(ErrorKind::blowup_detected) == 3);
    CHECK(exit_code(ErrorKind::near_spectrum) == 3);
    CHECK(exit_code(ErrorKind::contraction_failure) == 3);
    CHECK(exit_code(ErrorKind::internal) == 4);
    fs::path d = scratch("exit");
    CHECK(run("evolve", (d / "missing.json").string(), d.string(), std::nullopt, 1) == 2);
    fs::path big = write_config(d, R"({"data": {"f": "linear", "energy": 1.0}, "picard": {"nodes": 20, "s_max": 1}})");
    CHECK(run("yangmills", big.string(), (d / "out").string(), std::nullopt, 1) == 2);
    fs::path even = write_config(d, R"({"n": 16, "data": {"f": {"type": "constant", "a": 1}}})");
    CHECK(run("evolve", even.string(), (d / "out").string(), std::nullopt, 1) == 2);
  }

  TEST_CASE("evolve writes all artifacts and matches the closed form") {
    fs::path d = scratch("evolve");
    fs::path cfg = write_config(d, R"({"n": 32, "potential": 0, "data": {"f": "linear"}, "s_max": 1.0})");
    REQUIRE(run("evolve", cfg.string(), (d / "out").string(), 7, 1) == 0);
    auto result = Json::parse(slurp(d / "out" / "result.json"));
    CHECK(result["result"]["max_closed_form_error"].get<double>() < 1e-9);
    auto manifest = Json::parse(slurp(d / "out" / "manifest.json"));
    CHECK(manifest["resolved_config"]["output_interval"].get<double>() == 0.05);
    CHECK(manifest["resolved_config"]["seed"].get<int>() == 7);
    CHECK(manifest.contains("timestamp"));
    std::string csv = slurp(d / "out" / "series.csv");
    CHECK(csv.rfind("s,l2,l6,linf,energy,closed_form_error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);
  }

  TEST_CASE("spectrum command") {
    fs::path d = scratch("spectrum");
    fs::path cfg = write_config(d, R"({"n": 32, "potential": {"type": "eigen", "lambda0": 1}, "window": {"im_max": 5}})");
    REQUIRE(run("spectrum", cfg.string(), d.string(), std::nullopt, 1) == 0);
    auto result = Json::parse(slurp(d / "result.json"));
    REQUIRE(result["result"]["count"].get<int>() == 1);
    auto root = result["result"]["roots"][0];
    CHECK(root["lambda"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(root["multiplicity"].get<int>() == 1);
    CHECK(root["riesz_rank"].get<int>() == 1);
  }

  TEST_CASE("csv formatting") {
    CHECK(format_csv({"s", "x"}, {{0.1, 1.0 / 3}}) == "s,x\n0.1,0.333333333333333\n");
  }

  TEST_CASE("seeded runs are byte-identical") {
    fs::path d = scratch("determinism");
    fs::path cfg = write_config(d, R"({"n": 16, "s_max": 1, "refine": false, "ensemble": {"count": 4},
                                       "exponents": [[2, 4], ["inf", 2]]})");
    REQUIRE(run("strichartz", cfg.string(), (d / "a").string(), 11, 1) == 0);
    REQUIRE(run("strichartz", cfg.string(), (d / "b").string(), 11, 2) == 0);
    REQUIRE(run("strichartz", cfg.string(), (d / "c").string(), 12, 1) == 0);
    CHECK(slurp(d / "a" / "series.csv") == slurp(d / "b" / "series.csv"));
    CHECK(slurp(d / "a" / "result.json") == slurp(d / "b" / "result.json"));
    CHECK(slurp(d / "a" / "series.csv") != slurp(d / "c" / "series.csv"));
  }
}
