#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vifw/config.hpp"

namespace fs = std::filesystem;
using vifw::Json;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CommandResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "vifw_cli_out.txt";
  const std::string cmd = std::string(VIFW_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  return result;
}

fs::path scratch_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "vifw_cli_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path write_config(const fs::path& dir, const std::string& name, const Json& j) {
  const fs::path path = dir / name;
  std::ofstream(path) << j.dump(2);
  return path;
}

Json shipped(const std::string& name) {
  std::ifstream in(fs::path(VIFW_CONFIG_DIR) / (name + ".json"));
  REQUIRE(in);
  Json j;
  in >> j;
  return j;
}

}  // namespace

TEST_CASE("cli runs a config and prints the summary") {
  const auto dir = scratch_dir("run");
  Json j = shipped("identity_fp");
  j["max_iter"] = 500;
  j["outputs"]["trace_path"] = (dir / "trace.csv").string();
  j["outputs"]["summary_path"] = (dir / "summary.json").string();
  const auto cfg = write_config(dir, "cfg.json", j);

  const auto result = run_cli("run " + cfg.string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"min_gap\"") != std::string::npos);
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(fs::exists(dir / "summary.json"));
}

TEST_CASE("cli reports schema violations with the field name and exit 2") {
  const auto dir = scratch_dir("schema");
  Json j = shipped("identity_fp");
  j.erase("operator");
  const auto cfg = write_config(dir, "broken.json", j);

  const auto result = run_cli("run " + cfg.string());
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("operator") != std::string::npos);
}

TEST_CASE("cli exits nonzero on a missing config file") {
  const auto result = run_cli("run /nonexistent/config.json");
  CHECK(result.exit_code == 1);
}

TEST_CASE("cli option overrides take effect") {
  const auto dir = scratch_dir("override");
  Json j = shipped("identity_fp");
  j["outputs"] = Json::object();
  const auto cfg = write_config(dir, "cfg.json", j);

  const auto result = run_cli("run " + cfg.string() + " --max-iter 123");
  CHECK(result.exit_code == 0);
  const Json summary = Json::parse(result.output);
  CHECK(summary["iterations"] == 123);
}

TEST_CASE("repeated cli runs produce byte-identical traces") {
  const auto dir = scratch_dir("determinism");
  Json j = shipped("identity_fp");
  j["max_iter"] = 1000;
  j["outputs"]["summary_path"] = "";

  j["outputs"]["trace_path"] = (dir / "a.csv").string();
  const auto cfg_a = write_config(dir, "a.json", j);
  j["outputs"]["trace_path"] = (dir / "b.csv").string();
  const auto cfg_b = write_config(dir, "b.json", j);

  REQUIRE(run_cli("run " + cfg_a.string()).exit_code == 0);
  REQUIRE(run_cli("run " + cfg_b.string()).exit_code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("cli oracle subcommand caches and run picks the distance up") {
  const auto dir = scratch_dir("oracle");
  setenv("VIFW_CACHE_DIR", (dir / "cache").c_str(), 1);
  Json j = shipped("box_affine");
  j["outputs"]["trace_path"] = (dir / "trace.csv").string();
  j["outputs"]["summary_path"] = "";
  const auto cfg = write_config(dir, "cfg.json", j);

  const auto oracle = run_cli("oracle " + cfg.string());
  CHECK(oracle.exit_code == 0);
  CHECK(Json::parse(oracle.output)["residual"].get<double>() <= 1e-8);

  const auto solved = run_cli("run " + cfg.string());
  CHECK(solved.exit_code == 0);
  const Json summary = Json::parse(solved.output);
  CHECK(summary["oracle_cached"].get<bool>());
  CHECK(summary["final_dist"].get<double>() <= 1e-2);
  unsetenv("VIFW_CACHE_DIR");
}

TEST_CASE("cli compare subcommand forces compare mode") {
  const auto dir = scratch_dir("compare");
  Json j = shipped("compare_schedules");
  j["mode"] = "solve";  // the subcommand overrides this
  j["max_iter"] = 200;
  j["outputs"]["trace_path"] = (dir / "compare.csv").string();
  j["outputs"]["summary_path"] = "";
  const auto cfg = write_config(dir, "cfg.json", j);

  const auto result = run_cli("compare " + cfg.string());
  CHECK(result.exit_code == 0);
  CHECK(Json::parse(result.output)["mode"] == "compare");
  std::istringstream lines(slurp(dir / "compare.csv"));
  std::string header;
  std::getline(lines, header);
  CHECK(header == "k,harmonic,power_law_a0.7_c1");
}
