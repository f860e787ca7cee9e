#include "vifw/oracle.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "vifw/config.hpp"
#include "vifw/solver.hpp"

namespace vifw {

namespace {

constexpr std::int64_t kErgodicCheckEvery = 64;

double checked_gap(const FeasibleSet& set, const Operator& op, const Vector& x) {
  return fw_gap(set, op, x).gap;
}

}  // namespace

OracleResult extragradient(const FeasibleSet& set, const Operator& op, const Vector& x0,
                           const ExtragradientOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("extragradient: tol must be > 0");
  if (options.max_iter < 1) throw std::invalid_argument("extragradient: max_iter must be >= 1");
  if (set.dimension() != op.dimension())
    throw std::invalid_argument("extragradient: set and operator dimensions differ");
  if (!set.contains(x0, 1e-9))
    throw std::invalid_argument("extragradient: x0 is outside the feasible set");

  double eta;
  if (options.eta) {
    eta = *options.eta;
    if (!(eta > 0.0)) throw std::invalid_argument("extragradient: eta must be > 0");
  } else {
    const double lip = operator_norm_estimate(op.linear_part());
    eta = lip > 1e-12 ? 0.5 / lip : 1.0;
  }

  OracleResult result;
  result.method = "extragradient";

  Vector x = x0;
  double gap = checked_gap(set, op, x);
  if (gap <= options.tol) {
    result.x_star = std::move(x);
    result.residual = gap;
    result.iterations = 0;
    return result;
  }

  const bool merely_monotone = op.mu() == 0.0;
  Vector y_sum = Vector::Zero(set.dimension());

  for (std::int64_t k = 1; k <= options.max_iter; ++k) {
    const Vector y = set.project(x - eta * op(x));
    x = set.project(x - eta * op(y));
    y_sum += y;

    gap = checked_gap(set, op, x);
    if (gap <= options.tol) {
      result.x_star = std::move(x);
      result.residual = gap;
      result.iterations = k;
      return result;
    }
    if (merely_monotone && k % kErgodicCheckEvery == 0) {
      const Vector y_bar = y_sum / static_cast<double>(k);
      const double bar_gap = checked_gap(set, op, y_bar);
      if (bar_gap <= options.tol) {
        result.method = "extragradient_ergodic";
        result.x_star = y_bar;
        result.residual = bar_gap;
        result.iterations = k;
        return result;
      }
    }
  }
  std::ostringstream msg;
  msg << "extragradient: gap " << gap << " above tol " << options.tol << " after "
      << options.max_iter << " iterations (eta = " << eta
      << "); eta may be too large or the instance too degenerate";
  throw std::runtime_error(msg.str());
}

double brute_force_gap(const FeasibleSet& set, const Operator& op, const Vector& x) {
  if (set.dimension() != op.dimension())
    throw std::invalid_argument("brute_force_gap: set and operator dimensions differ");
  const std::uint64_t count = set.vertex_count();
  if (count > 1000000ull)
    throw std::invalid_argument("brute_force_gap: vertex enumeration too large (" +
                                std::to_string(count) + " > 1e6)");
  const Vector field = op(x);
  const double at_x = field.dot(x);
  double min_vertex = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < count; ++i)
    min_vertex = std::min(min_vertex, field.dot(set.vertex(i)));
  return at_x - min_vertex;
}

UniquenessReport uniqueness_check(const FeasibleSet& set, const Operator& op, int trials,
                                  std::uint64_t rng_seed, double tol) {
  if (!(op.mu() > 0.0))
    throw std::invalid_argument("uniqueness_check: operator must be strongly monotone (mu > 0)");
  if (trials < 1) throw std::invalid_argument("uniqueness_check: trials must be >= 1");

  std::mt19937_64 rng(rng_seed);
  ExtragradientOptions options;
  options.tol = tol;

  std::vector<Vector> solutions;
  solutions.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t)
    solutions.push_back(extragradient(set, op, set.sample(rng), options).x_star);

  UniquenessReport report;
  report.tol = tol;
  report.trials = trials;
  for (std::size_t i = 0; i < solutions.size(); ++i)
    for (std::size_t j = i + 1; j < solutions.size(); ++j)
      report.max_pairwise_distance =
          std::max(report.max_pairwise_distance, (solutions[i] - solutions[j]).norm());
  report.passed = report.max_pairwise_distance <= 10.0 * tol;
  return report;
}

std::string oracle_cache_dir() {
  if (const char* env = std::getenv("VIFW_CACHE_DIR"); env && *env) return env;
  return ".vifw_cache";
}

namespace {

std::filesystem::path cache_path_for(const std::string& key) {
  std::ostringstream name;
  name << std::hex << fnv1a64(key) << ".json";
  return std::filesystem::path(oracle_cache_dir()) / name.str();
}

}  // namespace

std::optional<OracleResult> oracle_cache_load(const FeasibleSet& set, const Operator& op) {
  const std::string key = instance_key(set, op);
  const auto path = cache_path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  Json j;
  try {
    in >> j;
  } catch (const Json::exception&) {
    return std::nullopt;
  }
  if (!j.is_object() || j.value("key", std::string{}) != key) return std::nullopt;
  try {
    OracleResult result;
    result.x_star = parse_vector(j.at("x_star"), "x_star");
    result.residual = j.at("residual").get<double>();
    result.iterations = j.at("iterations").get<std::int64_t>();
    result.method = j.at("method").get<std::string>();
    return result;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string oracle_cache_store(const FeasibleSet& set, const Operator& op,
                               const OracleResult& result) {
  const std::string key = instance_key(set, op);
  const auto path = cache_path_for(key);
  std::filesystem::create_directories(path.parent_path());
  Json j;
  j["key"] = key;
  j["x_star"] = vector_to_json(result.x_star);
  j["residual"] = result.residual;
  j["iterations"] = result.iterations;
  j["method"] = result.method;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("oracle cache: cannot write " + path.string());
  out << j.dump(2) << '\n';
  return path.string();
}

}  // namespace vifw
