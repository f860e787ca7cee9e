#include "vifw/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>

#include "vifw/csv.hpp"
#include "vifw/dynamics.hpp"
#include "vifw/solver.hpp"

namespace vifw {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Solve: return "solve";
    case RunMode::Dynamics: return "dynamics";
    case RunMode::Oracle: return "oracle";
    case RunMode::Compare: return "compare";
  }
  throw std::logic_error("unknown RunMode");
}

namespace {

RunMode parse_mode(const std::string& name, const std::string& field) {
  if (name == "solve") return RunMode::Solve;
  if (name == "dynamics") return RunMode::Dynamics;
  if (name == "oracle") return RunMode::Oracle;
  if (name == "compare") return RunMode::Compare;
  throw ConfigError(field, "unknown mode '" + name + "'");
}

Vector resolve_x0(const Json& j, const FeasibleSet& set) {
  if (j.is_string()) {
    const std::string spec = j.get<std::string>();
    if (spec == "centroid") return set.centroid();
    if (spec.rfind("vertex:", 0) == 0) {
      std::uint64_t index = 0;
      try {
        index = std::stoull(spec.substr(7));
      } catch (const std::exception&) {
        throw ConfigError("x0", "malformed vertex index in '" + spec + "'");
      }
      if (index >= set.vertex_count()) throw ConfigError("x0", "vertex index out of range");
      return set.vertex(index);
    }
    throw ConfigError("x0", "expected an array, \"centroid\" or \"vertex:<i>\"");
  }
  const Vector x0 = parse_vector(j, "x0");
  if (x0.size() != set.dimension()) throw ConfigError("x0", "dimension mismatch with the set");
  if (!set.contains(x0, 1e-9)) throw ConfigError("x0", "point is outside the feasible set");
  return x0;
}

double elapsed_seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void create_parent_dirs(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

void maybe_write_summary(const ExperimentConfig& config, const Json& summary) {
  if (config.summary_path.empty()) return;
  create_parent_dirs(config.summary_path);
  std::ofstream out(config.summary_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + config.summary_path);
  out << summary.dump(2) << '\n';
}

Json base_summary(const ExperimentConfig& config) {
  Json j;
  j["name"] = config.name;
  j["mode"] = to_string(config.mode);
  j["dimension"] = config.set.dimension();
  j["tie_rule"] = to_string(config.tie_rule);
  j["seed"] = config.seed;
  return j;
}

Json run_solve(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  SolveOptions options;
  options.max_iter = config.max_iter;
  options.gap_tol = config.gap_tol;
  options.tie_rule = config.tie_rule;
  options.gauss_seidel = config.gauss_seidel;
  bool oracle_cached = false;
  if (const auto cached = oracle_cache_load(config.set, config.op)) {
    options.oracle_solution = cached->x_star;
    oracle_cached = true;
  }

  const SolverTrace trace = solve(config.set, config.op, config.schedule, config.x0, options);
  if (!config.trace_path.empty()) write_trace_csv_file(config.trace_path, trace);

  Json summary = base_summary(config);
  summary["schedule"] = config.schedule.label();
  summary["iterations"] = trace.iterations;
  summary["final_gap"] = trace.rows.back().gap;
  summary["min_gap"] = trace.min_gap;
  summary["stopped_by_gap"] = trace.stopped_by_gap;
  summary["rows"] = trace.rows.size();
  summary["thinned"] = trace.thinned;
  summary["oracle_cached"] = oracle_cached;
  if (oracle_cached) {
    summary["final_dist"] = *trace.rows.back().dist;
  }
  if (!config.trace_path.empty()) summary["trace_path"] = config.trace_path;
  summary["wall_time_s"] = elapsed_seconds(started);
  return summary;
}

Json run_dynamics(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const Trajectory trajectory =
      integrate_br(config.set, config.op, config.x0, config.t_end, config.h, config.tie_rule);
  const DecayReport decay = decay_check(trajectory, config.set, config.op, config.tie_rule);
  if (!config.trace_path.empty())
    write_trajectory_csv_file(config.trace_path, trajectory, config.set, config.op,
                              config.tie_rule);

  Json summary = base_summary(config);
  summary["h"] = config.h;
  summary["t_end"] = config.t_end;
  summary["breakpoints"] = trajectory.size();
  summary["final_gap"] = decay.final_gap;
  summary["decay"] = Json{{"max_increase", decay.max_increase},
                          {"tolerance", decay.tolerance},
                          {"violation_fraction", decay.violation_fraction},
                          {"max_gap", decay.max_gap},
                          {"passed", decay.passed}};
  if (!config.trace_path.empty()) summary["trace_path"] = config.trace_path;
  summary["wall_time_s"] = elapsed_seconds(started);
  return summary;
}

Json run_oracle(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  bool cache_hit = false;
  OracleResult result;
  if (const auto cached = oracle_cache_load(config.set, config.op);
      cached && cached->residual <= config.oracle_options.tol) {
    result = *cached;
    cache_hit = true;
  } else {
    result = extragradient(config.set, config.op, config.x0, config.oracle_options);
  }
  const std::string cache_path = oracle_cache_store(config.set, config.op, result);

  Json summary = base_summary(config);
  summary["x_star"] = vector_to_json(result.x_star);
  summary["residual"] = result.residual;
  summary["iterations"] = result.iterations;
  summary["method"] = result.method;
  summary["cache_path"] = cache_path;
  summary["cache_hit"] = cache_hit;
  summary["wall_time_s"] = elapsed_seconds(started);
  return summary;
}

Json run_compare(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  std::vector<StepSchedule> schedules = config.compare_schedules;
  if (schedules.empty()) schedules.push_back(config.schedule);

  // Independent runs; each owns its trace. Forced to the full horizon so the
  // gap columns have equal row counts.
  std::vector<std::future<SolverTrace>> futures;
  futures.reserve(schedules.size());
  for (const auto& schedule : schedules) {
    futures.push_back(std::async(std::launch::async, [&config, schedule]() {
      SolveOptions options;
      options.max_iter = config.max_iter;
      options.gap_tol = 0.0;
      options.tie_rule = config.tie_rule;
      return solve(config.set, config.op, schedule, config.x0, options);
    }));
  }
  std::vector<SolverTrace> traces;
  traces.reserve(futures.size());
  for (auto& f : futures) traces.push_back(f.get());

  Json summary = base_summary(config);
  Json labels = Json::array();
  Json final_min_gaps = Json::array();

  if (!config.trace_path.empty()) {
    create_parent_dirs(config.trace_path);
    std::ofstream out(config.trace_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + config.trace_path);
    out << 'k';
    for (const auto& schedule : schedules) out << ',' << schedule.label();
    out << '\n';
    const std::size_t rows = traces.front().rows.size();
    std::vector<double> running(traces.size(), std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < rows; ++r) {
      out << traces.front().rows[r].k;
      for (std::size_t t = 0; t < traces.size(); ++t) {
        running[t] = std::min(running[t], traces[t].rows[r].gap);
        out << ',' << format_double(running[t]);
      }
      out << '\n';
    }
  }
  for (std::size_t t = 0; t < traces.size(); ++t) {
    labels.push_back(schedules[t].label());
    final_min_gaps.push_back(traces[t].min_gap);
  }
  summary["schedules"] = std::move(labels);
  summary["min_gaps"] = std::move(final_min_gaps);
  summary["iterations"] = config.max_iter;
  if (!config.trace_path.empty()) summary["trace_path"] = config.trace_path;
  summary["wall_time_s"] = elapsed_seconds(started);
  return summary;
}

}  // namespace

ExperimentConfig parse_experiment(const Json& j) try {
  if (!j.is_object()) throw ConfigError("", "experiment config must be a JSON object");
  if (!j.contains("set")) throw ConfigError("set", "missing required field");
  if (!j.contains("operator")) throw ConfigError("operator", "missing required field");

  FeasibleSet set = parse_set(j.at("set"));
  Operator op = parse_operator(j.at("operator"));
  if (set.dimension() != op.dimension())
    throw ConfigError("operator", "dimension " + std::to_string(op.dimension()) +
                                      " does not match set dimension " +
                                      std::to_string(set.dimension()));
  StepSchedule schedule =
      j.contains("schedule") ? parse_schedule(j.at("schedule")) : StepSchedule::harmonic();

  ExperimentConfig config(std::move(set), std::move(op), std::move(schedule));
  config.name = j.value("name", std::string("experiment"));
  if (j.contains("tie_rule")) config.tie_rule = parse_tie_rule(j.at("tie_rule"));
  config.x0 = j.contains("x0") ? resolve_x0(j.at("x0"), config.set) : config.set.centroid();

  if (j.contains("max_iter")) {
    if (!j["max_iter"].is_number_integer() || j["max_iter"].get<std::int64_t>() < 1)
      throw ConfigError("max_iter", "expected an integer >= 1");
    config.max_iter = j["max_iter"].get<std::int64_t>();
  }
  if (j.contains("gap_tol")) {
    if (!j["gap_tol"].is_number() || j["gap_tol"].get<double>() < 0.0)
      throw ConfigError("gap_tol", "expected a number >= 0");
    config.gap_tol = j["gap_tol"].get<double>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError("seed", "expected an integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  config.gauss_seidel = j.value("gauss_seidel", false);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ConfigError("mode", "expected a string");
    config.mode = parse_mode(j["mode"].get<std::string>(), "mode");
  }
  if (j.contains("outputs")) {
    const Json& outputs = j.at("outputs");
    if (!outputs.is_object()) throw ConfigError("outputs", "expected an object");
    config.trace_path = outputs.value("trace_path", std::string{});
    config.summary_path = outputs.value("summary_path", std::string{});
  }
  if (j.contains("dynamics")) {
    const Json& dyn = j.at("dynamics");
    if (!dyn.is_object()) throw ConfigError("dynamics", "expected an object");
    config.h = dyn.value("h", config.h);
    config.t_end = dyn.value("t_end", config.t_end);
    if (!(config.h > 0.0 && config.h <= 1.0))
      throw ConfigError("dynamics.h", "expected a number in (0, 1]");
    if (!(config.t_end > 0.0)) throw ConfigError("dynamics.t_end", "expected a number > 0");
  }
  if (j.contains("oracle")) {
    const Json& oracle = j.at("oracle");
    if (!oracle.is_object()) throw ConfigError("oracle", "expected an object");
    if (oracle.contains("eta")) config.oracle_options.eta = oracle["eta"].get<double>();
    config.oracle_options.tol = oracle.value("tol", config.oracle_options.tol);
    config.oracle_options.max_iter = oracle.value("max_iter", config.oracle_options.max_iter);
    if (!(config.oracle_options.tol > 0.0))
      throw ConfigError("oracle.tol", "expected a number > 0");
  }
  if (j.contains("schedules")) {
    const Json& schedules = j.at("schedules");
    if (!schedules.is_array() || schedules.empty())
      throw ConfigError("schedules", "expected a nonempty array");
    for (std::size_t i = 0; i < schedules.size(); ++i)
      config.compare_schedules.push_back(
          parse_schedule(schedules[i], "schedules[" + std::to_string(i) + "]"));
  }
  return config;
} catch (const Json::exception& e) {
  throw ConfigError("", std::string("malformed experiment config: ") + e.what());
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_experiment(j);
}

Json run_experiment(const ExperimentConfig& config) {
  Json summary;
  switch (config.mode) {
    case RunMode::Solve: summary = run_solve(config); break;
    case RunMode::Dynamics: summary = run_dynamics(config); break;
    case RunMode::Oracle: summary = run_oracle(config); break;
    case RunMode::Compare: summary = run_compare(config); break;
  }
  maybe_write_summary(config, summary);
  return summary;
}

}  // namespace vifw
