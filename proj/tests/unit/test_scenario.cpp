#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"
#include "rotor/scenario.hpp"

using namespace rotor;
namespace fs = std::filesystem;

namespace {

const char* kBase = R"([generator g]
matrix = 1 0 0 1
x = 1/4 0 0 pi/2

[measure grid]
kind = grid
n = 8
)";

// Parses text and returns the (line, field) of the ConfigError it raises.
std::pair<int, std::string> config_error(const std::string& text) {
  try {
    Scenario::parse(text);
  } catch (const ConfigError& e) {
    return {e.line(), e.field()};
  }
  FAIL("no ConfigError for:\n" << text);
  return {};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rotor_test_scenario_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("sections, comments and literals") {
  const auto secs = parse_sections("# header\n[tolerances]\ndefect = 1e-8  # trailing\n\n[word w]\nletters = g g^-2\n");
  REQUIRE(secs.size() == 2);
  CHECK(secs[0].kind == "tolerances");
  CHECK(secs[1].name == "w");
  CHECK(secs[1].entries[0].line == 6);
  CHECK(secs[1].entries[0].value == "g g^-2");

  const Scenario s = Scenario::parse(std::string(kBase) + "[tolerances]\nhull = 1/100\n[word w]\nletters = g^-2\nlift = 1 -1\n");
  CHECK(s.tolerances().hull == doctest::Approx(0.01));
  CHECK(s.word("w").word.size() == 2);
  CHECK(s.word("w").translation == IntVec2{1, -1});
  CHECK(s.word("g").word.size() == 1);
  const Vec2 moved = s.group().apply_lift(s.word("g"), {0.0, 0.0});
  CHECK(moved.x == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(moved.y) < 1e-15);
  CHECK(s.measure("grid").size() == 64);
}

TEST_CASE("errors carry the line and field") {
  using P = std::pair<int, std::string>;
  CHECK(config_error("[generator g]\nmatrix = 1 1 1 1\n") == P{2, "matrix"});
  try {
    Scenario::parse("[generator shear]\nmatrix = 2 0 0 2\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'shear'") != std::string::npos);
    CHECK(std::string(e.what()).find("NotUnimodular") != std::string::npos);
  }
  CHECK(config_error("x = 1\n") == P{1, "x"});
  CHECK(config_error("[generator g\n") == P{1, "section"});
  CHECK(config_error("[shape g]\n") == P{1, "section"});
  CHECK(config_error(std::string(kBase) + "[generator g]\nmatrix = 1 0 0 1\n") == P{8, "section"});
  CHECK(config_error(std::string(kBase) + "[word g]\nletters = g\n") == P{0, "word"});
  CHECK(config_error("[generator g]\nmatrix = 1 0 0 1\ncolour = red\n") == P{3, "colour"});
  CHECK(config_error("[generator g]\nmatrix = 1 0 0 1\nx = 0.1 one 0\n") == P{3, "x"});
  CHECK(config_error("[generator g]\nmatrix = 1 0 0 1\nx = 2 1 0\n") == P{1, "inverse"});
  CHECK(config_error("[generator g]\nmatrix = 1 0 0 1\ninverse = closed nobody\n") == P{3, "inverse"});
  CHECK(config_error("[tolerances]\nhull = -1\n") == P{2, "hull"});
  CHECK(config_error("[word w]\nletters = nobody\n") == P{2, "letters"});
  CHECK(config_error(std::string(kBase) + "[measure m]\nkind = pushforward\nsource = later\nword = g\n") == P{10, "source"});
  CHECK(config_error(std::string(kBase) + "[measure m]\nkind = grid\nn = 0\n") == P{10, "n"});
  CHECK(config_error(std::string(kBase) + "[analysis a]\ntype = dance\n") == P{9, "type"});
  CHECK(config_error(std::string(kBase) + "[analysis a]\ntype = rotev\ng = g\nh = g\n") == P{8, "measure"});
  CHECK(config_error(std::string(kBase) + "[analysis a]\ntype = klein\nword = g\ngrid = fine\n") == P{11, "grid"});
  CHECK(config_error(std::string(kBase) + "[analysis a]\ntype = klein\nword = g\nexpect_rho_bar = 1\n") == P{11, "expect_rho_bar"});
  CHECK(config_error(std::string(kBase) + "[analysis a]\ntype = rotation-set\nword = g\nconvention = sideways\n") ==
        P{11, "convention"});
  CHECK(config_error(std::string(kBase) +
                     "[analysis a]\ntype = fixed-points\nwords = g g\nfranks = grid\n") == P{11, "franks"});
  CHECK(config_error(std::string(kBase) + "[analysis a]\ntype = invariant-measure\nmeasure = grid\nextension = g\n"
                                          "declared = 1 0 0\n") == P{12, "declared"});
}

TEST_CASE("expectations decide the status") {
  const fs::path out = scratch("status");
  const Scenario s = Scenario::parse(std::string(kBase) +
                                     "[analysis good]\ntype = rotation-set\nword = g\nmeasure = grid\nexpect_rotation = 1/4 0\n"
                                     "[analysis bad]\ntype = rotation-set\nword = g\nmeasure = grid\nexpect_rotation = 0 0\n"
                                     "[analysis broken]\ntype = rotation-set\nword = g\nexpect_rotation = 0 0\n");
  CHECK(run_analysis(s, s.analyses()[0], out).status == "ok");
  CHECK(run_analysis(s, s.analyses()[1], out).status == "failed");
  CHECK(run_analysis(s, s.analyses()[2], out).status == "error");
  const auto report = nlohmann::json::parse(slurp(out / "broken.json"));
  CHECK(report["error"]["kind"] == "InvalidArgument");

  std::ostringstream log;
  CHECK(run_scenario(s, "", out, log) == 1);
  CHECK_THROWS_AS(run_scenario(s, "klein", out, log), ConfigError);
  fs::remove_all(out);
}

TEST_CASE("example scenarios run cleanly") {
  for (const auto& e : example_scenarios()) {
    CAPTURE(e.file);
    const fs::path out = scratch("example");
    std::ostringstream log;
    CHECK(run_scenario(Scenario::parse(e.text), "", out, log) == 0);
    CHECK(log.str().find("FAILED") == std::string::npos);
    CHECK(log.str().find("ERROR") == std::string::npos);
    fs::remove_all(out);
  }
}

TEST_CASE("reports do not depend on the thread count") {
  const ExampleScenario& e = example_scenarios().front();
  const Scenario s = Scenario::parse(e.text);
  const unsigned saved = threads();
  std::vector<std::string> dumps;
  for (unsigned n : {1u, 4u}) {
    set_threads(n);
    const fs::path out = scratch("threads" + std::to_string(n));
    std::ostringstream log;
    run_scenario(s, "", out, log);
    std::string all;
    for (const auto& a : s.analyses()) all += slurp(out / (a.name + ".json"));
    all += slurp(out / "h_rotation_samples.csv") + slurp(out / "forced_measure.csv");
    dumps.push_back(all);
    fs::remove_all(out);
  }
  set_threads(saved);
  CHECK(dumps[0] == dumps[1]);
}
