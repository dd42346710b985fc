#include <doctest.h>

#include <algorithm>
#include <string>

#include "fixtures.hpp"
#include "rotcav/config.hpp"

using namespace rotcav;

namespace {

const char* const minimal = R"(
[particle]
kind = rod

[cavity]
wavelength = 1.56 um
linewidth = 0.78 MHz
detuning = -1.2 kappa
pump_power = 10 mW
waist = 25 um
coupling_ratio = 1.1
)";

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

ConfigError parse_error(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("");
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal file resolves with recorded defaults") {
  const RunConfig cfg = parse_config_string(minimal);
  CHECK(cfg.cavity.linewidth == doctest::Approx(two_pi * 0.78e6).epsilon(1e-15));
  CHECK(cfg.cavity.detuning == doctest::Approx(-1.2 * two_pi * 0.78e6).epsilon(1e-15));
  CHECK(cfg.cavity.pump_power == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(cfg.cavity.wavelength == doctest::Approx(1.56e-6).epsilon(1e-15));
  CHECK(cfg.cavity.waist == doctest::Approx(25e-6).epsilon(1e-15));
  CHECK(cfg.particle.length == doctest::Approx(800e-9).epsilon(1e-15));
  CHECK(cfg.particle.radius == doctest::Approx(25e-9).epsilon(1e-15));
  CHECK(cfg.ensemble.trajectories == 2000);
  CHECK(cfg.ensemble.velocities.size() == 9);
  CHECK(cfg.seed == 1);
  CHECK(has(cfg.defaulted, "particle.length"));
  CHECK(has(cfg.defaulted, "cavity.rate_convention"));
  CHECK(has(cfg.defaulted, "run.seed"));
  CHECK_FALSE(has(cfg.defaulted, "cavity.waist"));
  CHECK(cfg.resolved.count("cavity.linewidth") == 1);
  CHECK(cfg.resolved.count("ensemble.velocities") == 1);
}

TEST_CASE("reference config file matches the test fixture") {
  const RunConfig cfg = parse_config_file(std::string(ROTCAV_SOURCE_DIR) + "/configs/fig2_rod.cfg");
  const Model model = cfg.model();
  const Model ref = testing::fig2_rod_model();
  CHECK(testing::relative_error(model.kappa(), ref.kappa()) < 1e-15);
  CHECK(testing::relative_error(model.U0(), ref.U0()) < 1e-12);
  CHECK(testing::relative_error(model.cavity().mode_volume, 1.9526377305906948e-12) < 1e-12);
  CHECK(cfg.defaulted.size() > 10);
}

TEST_CASE("angular rate convention takes the value as rad/s") {
  const RunConfig cfg =
      parse_config_string(replace(minimal, "[cavity]", "[cavity]\nrate_convention = angular"));
  CHECK(cfg.cavity.linewidth == doctest::Approx(0.78e6).epsilon(1e-15));
  CHECK(cfg.cavity.detuning == doctest::Approx(-1.2 * 0.78e6).epsilon(1e-15));
  const RunConfig explicit_rad = parse_config_string(replace(minimal, "0.78 MHz", "0.78e6 rad/s"));
  CHECK(explicit_rad.cavity.linewidth == doctest::Approx(0.78e6).epsilon(1e-15));
}

TEST_CASE("misspelled key names the nearest valid key") {
  const ConfigError e = parse_error(replace(minimal, "waist =", "wasit ="));
  const std::string msg = e.what();
  CHECK(msg.find("'wasit'") != std::string::npos);
  CHECK(msg.find("'waist'") != std::string::npos);
  CHECK(e.line() == 10);
  CHECK(e.column() == 1);
}

TEST_CASE("missing required keys") {
  CHECK(std::string(parse_error(replace(minimal, "waist = 25 um", "")).what()).find("waist") !=
        std::string::npos);
  CHECK(std::string(parse_error(replace(minimal, "kind = rod", "")).what()).find("kind") !=
        std::string::npos);
  const ConfigError neither = parse_error(replace(minimal, "coupling_ratio = 1.1", ""));
  CHECK(std::string(neither.what()).find("coupling_ratio") != std::string::npos);
  const ConfigError both =
      parse_error(replace(minimal, "coupling_ratio = 1.1", "coupling_ratio = 1.1\nmode_volume = 2000 um3"));
  CHECK(std::string(both.what()).find("not both") != std::string::npos);
}

TEST_CASE("mode volume given directly") {
  const RunConfig cfg =
      parse_config_string(replace(minimal, "coupling_ratio = 1.1", "mode_volume = 1.9526377305906948e-12 m3"));
  CHECK(cfg.model().U0() / cfg.model().kappa() == doctest::Approx(-1.1).epsilon(1e-12));
}

TEST_CASE("unit errors") {
  SUBCASE("wrong dimension") {
    const ConfigError e = parse_error(replace(minimal, "25 um", "25 mW"));
    CHECK(std::string(e.what()).find("length") != std::string::npos);
    CHECK(e.line() == 10);
    CHECK(e.column() == 9);
  }
  SUBCASE("bare number") {
    const ConfigError e = parse_error(replace(minimal, "10 mW", "10"));
    CHECK(std::string(e.what()).find("unit") != std::string::npos);
    CHECK(e.line() == 9);
  }
  SUBCASE("malformed number") {
    CHECK_THROWS_AS(parse_config_string(replace(minimal, "1.56 um", "1..56 um")), ConfigError);
  }
  SUBCASE("unit on a dimensionless value") {
    CHECK_THROWS_AS(parse_config_string(replace(minimal, "1.1", "1.1 m")), ConfigError);
  }
}

TEST_CASE("compact unit spelling and exponents") {
  const RunConfig cfg = parse_config_string(replace(minimal, "1.56 um", "1.56e-6m"));
  CHECK(cfg.cavity.wavelength == doctest::Approx(1.56e-6).epsilon(1e-15));
}

TEST_CASE("structural errors") {
  const ConfigError dup = parse_error(replace(minimal, "waist = 25 um", "waist = 25 um\nwaist = 30 um"));
  CHECK(dup.line() == 11);
  CHECK(std::string(dup.what()).find("twice") != std::string::npos);

  const ConfigError section = parse_error(std::string(minimal) + "[cavty]\n");
  CHECK(std::string(section.what()).find("cavity") != std::string::npos);
  CHECK(section.line() == 12);

  CHECK_THROWS_AS(parse_config_string(std::string(minimal) + "[cavity]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string("kind = rod\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string(std::string(minimal) + "[run]\nseed\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string(std::string(minimal) + "[run]\nseed = -4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string(std::string(minimal) + "[cooling]\ndegree = 19\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string(replace(minimal, "rod", "cube")), ConfigError);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/rotcav.cfg"), ConfigError);
}

TEST_CASE("comments and lists") {
  const RunConfig cfg = parse_config_string(std::string("# header\n; other\n") + minimal +
                                            "[ensemble]\nvelocities = 0.1, 0.5 m/s  \n"
                                            "[cooling]\npowers = 1, 5 mW\ndetunings = -1, -2 kappa\n");
  REQUIRE(cfg.ensemble.velocities.size() == 2);
  CHECK(cfg.ensemble.velocities[1] == doctest::Approx(0.5));
  CHECK(cfg.cooling.powers[1] == doctest::Approx(5e-3));
  CHECK(cfg.cooling.detunings[0] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(parse_config_string(std::string(minimal) + "[cooling]\ndetunings = -1, -2 MHz\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_string(std::string(minimal) + "[ensemble]\nvelocities = 0.1,,0.2 m/s\n"),
                  ConfigError);
}

TEST_CASE("hash is stable and tracks resolved values") {
  const std::string h = parse_config_string(minimal).hash();
  CHECK(h.size() == 16);
  CHECK(parse_config_string(minimal).hash() == h);
  // layout and comments do not matter
  CHECK(parse_config_string(replace(minimal, "waist = 25 um", "waist   =   25um   # w0")).hash() == h);
  CHECK(parse_config_string(replace(minimal, "25 um", "26 um")).hash() != h);
  CHECK(parse_config_string(std::string(minimal) + "[run]\nseed = 2\n").hash() != h);
  // worker count does not change results
  CHECK(parse_config_string(std::string(minimal) + "[run]\nthreads = 3\n").hash() == h);
}

TEST_CASE("edit distance") {
  CHECK(edit_distance("waist", "waist") == 0);
  CHECK(edit_distance("wasit", "waist") == 2);
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("kitten", "sitting") == 3);
}

}
