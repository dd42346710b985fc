#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "rotcav/cli.hpp"

using nlohmann::json;

namespace {

const std::string rod_cfg = std::string(ROTCAV_SOURCE_DIR) + "/configs/fig2_rod.cfg";
const std::string sphere_cfg = std::string(ROTCAV_SOURCE_DIR) + "/configs/fig2_sphere.cfg";

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rotcav");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = rotcav::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json header(const std::string& csv) {
  const auto nl = csv.find('\n');
  REQUIRE(nl != std::string::npos);
  return json::parse(csv.substr(0, nl));
}

std::string second_line(const std::string& csv) {
  const auto a = csv.find('\n');
  const auto b = csv.find('\n', a + 1);
  return csv.substr(a + 1, b - a - 1);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rotcav_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version") {
  const Run plain = run({"--version"});
  CHECK(plain.code == 0);
  CHECK(plain.out.find("0.1.0") != std::string::npos);
  const Run j = run({"--version", "--json"});
  CHECK(j.code == 0);
  const json v = json::parse(j.out);
  CHECK(v["version"] == "0.1.0");
  CHECK(v.contains("compiler"));
}

TEST_CASE("validate") {
  const Run text = run({"--config", rod_cfg, "validate"});
  CHECK(text.code == 0);
  CHECK(text.out.find("hash") != std::string::npos);
  const Run j = run({"--json", "--config", rod_cfg, "validate"});
  REQUIRE(j.code == 0);
  const json v = json::parse(j.out);
  CHECK(v["derived"]["U0_rad_s"].get<double>() / v["derived"]["kappa_rad_s"].get<double>() ==
        doctest::Approx(-1.1).epsilon(1e-12));
  CHECK(v["config_hash"].get<std::string>().size() == 16);
}

TEST_CASE("usage and config errors map to exit codes") {
  CHECK(run({"validate"}).code == 2);
  CHECK(run({"--config", "/nonexistent.cfg", "validate"}).code != 0);

  const auto bad = temp_path("bad.cfg");
  std::ofstream(bad) << "[cavity]\nwasit = 25 um\n";
  const Run r = run({"--config", bad.string(), "validate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("'waist'") != std::string::npos);
  std::filesystem::remove(bad);

  CHECK(run({"--bogus"}).code != 0);
}

TEST_CASE("every CSV starts with a one-line metadata header") {
  for (const char* cmd : {"potential-map", "intensity-map", "cooling-limits", "trajectory"}) {
    CAPTURE(cmd);
    const Run r = run({"--config", rod_cfg, cmd});
    REQUIRE(r.code == 0);
    const json meta = header(r.out);
    CHECK(meta["format"] == "rotcav-csv");
    CHECK(meta["kind"] == cmd);
    CHECK(meta["config_hash"].get<std::string>().size() == 16);
    CHECK(meta.contains("derived"));
    CHECK(meta.contains("defaulted"));
    std::string cols;
    for (const auto& c : meta["columns"]) cols += (cols.empty() ? "" : ",") + c.get<std::string>();
    CHECK(second_line(r.out) == cols);
  }
}

TEST_CASE("cooling limits report temperatures and occupations") {
  const Run r = run({"--config", rod_cfg, "cooling-limits"});
  REQUIRE(r.code == 0);
  const json res = header(r.out)["result"];
  for (const char* key : {"T_z_K", "T_alpha_K", "T_beta_K", "n_z", "n_alpha", "n_beta"}) {
    CAPTURE(key);
    REQUIRE(res.contains(key));
    CHECK(res[key].get<double>() > 0.0);
  }
}

TEST_CASE("reference rod trajectory ends bound") {
  const Run r = run({"--config", rod_cfg, "trajectory"});
  REQUIRE(r.code == 0);
  const json meta = header(r.out);
  CHECK(meta["outcome"] == "captured");
  CHECK(meta["final_energy_J"].get<double>() < 0.0);
}

TEST_CASE("output is reproducible and the seed is recorded") {
  const Run a = run({"--config", rod_cfg, "--seed", "17", "potential-map"});
  const Run b = run({"--config", rod_cfg, "--seed", "17", "potential-map"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(header(a.out)["seed"] == 17);
  const Run c = run({"--config", rod_cfg, "potential-map"});
  CHECK(header(c.out)["config_hash"] != header(a.out)["config_hash"]);
}

TEST_CASE("small ensemble written to a file") {
  const auto cfg = temp_path("ens.cfg");
  {
    std::ifstream in(sphere_cfg);
    std::ofstream o(cfg);
    o << in.rdbuf() << "\n[ensemble]\nvelocities = 0.5, 2 m/s\ntrajectories = 6\n";
  }
  const auto out = temp_path("ens.csv");
  const auto detail = temp_path("ens_detail.csv");
  const Run r = run({"--config", cfg.string(), "--out", out.string(), "--threads", "2", "ensemble",
                     "--detail", detail.string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("coarse") != std::string::npos);
  CHECK(r.out.empty());
  const std::string csv = slurp(out);
  const json meta = header(csv);
  CHECK(meta["kind"] == "ensemble");
  CHECK(meta["trajectories_per_point"] == 6);
  CHECK_FALSE(meta.contains("threads"));
  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);

  const std::string d = slurp(detail);
  CHECK(header(d)["kind"] == "ensemble-trajectories");

  const auto out1 = temp_path("ens1.csv");
  CHECK(run({"--config", cfg.string(), "--out", out1.string(), "--threads", "1", "ensemble"}).code == 0);
  CHECK(slurp(out1) == csv);

  for (const auto& p : {cfg, out, detail, out1}) std::filesystem::remove(p);
}

TEST_CASE("unwritable output is reported") {
  const Run r = run({"--config", rod_cfg, "--out", "/nonexistent/dir/x.csv", "potential-map"});
  CHECK(r.code != 0);
  CHECK(r.err.find("/nonexistent/dir/x.csv") != std::string::npos);
}

}
