#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "vifw/experiment.hpp"

namespace {

struct Overrides {
  std::optional<std::int64_t> max_iter;
  std::optional<double> gap_tol;
  std::optional<std::uint64_t> seed;
};

void apply(const Overrides& overrides, vifw::ExperimentConfig& config) {
  if (overrides.max_iter) {
    if (*overrides.max_iter < 1) throw vifw::ConfigError("max_iter", "expected an integer >= 1");
    config.max_iter = *overrides.max_iter;
  }
  if (overrides.gap_tol) {
    if (*overrides.gap_tol < 0.0) throw vifw::ConfigError("gap_tol", "expected a number >= 0");
    config.gap_tol = *overrides.gap_tol;
  }
  if (overrides.seed) config.seed = *overrides.seed;
}

int execute(const std::string& config_path, const Overrides& overrides,
            std::optional<vifw::RunMode> forced_mode) {
  try {
    vifw::ExperimentConfig config = vifw::load_experiment(config_path);
    apply(overrides, config);
    if (forced_mode) config.mode = *forced_mode;
    const vifw::Json summary = vifw::run_experiment(config);
    std::cout << summary.dump(2) << '\n';
    return 0;
  } catch (const vifw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vifw - projection-free solver for monotone variational inequalities"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--max-iter", overrides.max_iter, "override max_iter");
    cmd->add_option("--gap-tol", overrides.gap_tol, "override gap_tol");
    cmd->add_option("--seed", overrides.seed, "override seed");
  };

  CLI::App* run = app.add_subcommand("run", "run the experiment in its configured mode");
  add_common(run);
  CLI::App* oracle = app.add_subcommand("oracle", "compute and cache the reference solution");
  add_common(oracle);
  CLI::App* compare =
      app.add_subcommand("compare", "run one instance under several step schedules");
  add_common(compare);

  CLI11_PARSE(app, argc, argv);

  std::optional<vifw::RunMode> forced_mode;
  if (oracle->parsed()) forced_mode = vifw::RunMode::Oracle;
  if (compare->parsed()) forced_mode = vifw::RunMode::Compare;
  return execute(config_path, overrides, forced_mode);
}
