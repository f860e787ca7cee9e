#include "vifw/config.hpp"

#include <cmath>

namespace vifw {

namespace {

const Json& expect_field(const Json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(field.empty() ? key : field + "." + key, "missing required field");
  return *it;
}

double expect_number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  return j.get<double>();
}

std::string expect_string(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

}  // namespace

Vector parse_vector(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Index>(i)] = expect_number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Matrix parse_matrix(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ConfigError(field + "[0]", "expected a nonempty row");
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols)
      throw ConfigError(row_field, "rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          expect_number(j[r][c], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

FeasibleSet parse_set(const Json& j, const std::string& field) {
  const std::string type = expect_string(expect_field(j, "type", field), field + ".type");
  try {
    if (type == "simplex") {
      const double n = expect_number(expect_field(j, "n", field), field + ".n");
      if (n < 1 || n != std::floor(n)) throw ConfigError(field + ".n", "expected a positive integer");
      return FeasibleSet::simplex(static_cast<Index>(n));
    }
    if (type == "box") {
      return FeasibleSet::box(parse_vector(expect_field(j, "lower", field), field + ".lower"),
                              parse_vector(expect_field(j, "upper", field), field + ".upper"));
    }
    if (type == "vertices") {
      const Json& pts = expect_field(j, "points", field);
      if (!pts.is_array() || pts.empty())
        throw ConfigError(field + ".points", "expected a nonempty array of points");
      std::vector<Vector> vertices;
      vertices.reserve(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        vertices.push_back(parse_vector(pts[i], field + ".points[" + std::to_string(i) + "]"));
      return FeasibleSet::vertex_polytope(std::move(vertices));
    }
    if (type == "product") {
      const Json& factors = expect_field(j, "factors", field);
      if (!factors.is_array() || factors.empty())
        throw ConfigError(field + ".factors", "expected a nonempty array of sets");
      std::vector<FeasibleSet> parsed;
      parsed.reserve(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i)
        parsed.push_back(parse_set(factors[i], field + ".factors[" + std::to_string(i) + "]"));
      return FeasibleSet::product(std::move(parsed));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field + ".type", "unknown set type '" + type + "'");
}

Json set_to_json(const FeasibleSet& set) {
  switch (set.kind()) {
    case FeasibleSet::Kind::Simplex:
      return Json{{"type", "simplex"}, {"n", set.dimension()}};
    case FeasibleSet::Kind::Box:
      return Json{{"type", "box"},
                  {"lower", vector_to_json(set.box_lower())},
                  {"upper", vector_to_json(set.box_upper())}};
    case FeasibleSet::Kind::VertexPolytope: {
      Json pts = Json::array();
      for (const auto& v : set.polytope_vertices()) pts.push_back(vector_to_json(v));
      return Json{{"type", "vertices"}, {"points", std::move(pts)}};
    }
    case FeasibleSet::Kind::Product: {
      Json factors = Json::array();
      for (const auto& f : set.factors()) factors.push_back(set_to_json(f));
      return Json{{"type", "product"}, {"factors", std::move(factors)}};
    }
  }
  throw std::logic_error("set_to_json: unknown kind");
}

Operator parse_operator(const Json& j, const std::string& field) {
  const std::string type = expect_string(expect_field(j, "type", field), field + ".type");
  std::optional<double> mu;
  if (j.contains("mu")) mu = expect_number(j["mu"], field + ".mu");
  try {
    if (type == "affine") {
      return Operator::affine(parse_matrix(expect_field(j, "M", field), field + ".M"),
                              parse_vector(expect_field(j, "q", field), field + ".q"), mu);
    }
    if (type == "fictitious_play") {
      return Operator::fictitious_play(parse_matrix(expect_field(j, "A", field), field + ".A"));
    }
    if (type == "lp_saddle") {
      return Operator::lp_saddle(parse_matrix(expect_field(j, "A", field), field + ".A"),
                                 parse_vector(expect_field(j, "b", field), field + ".b"),
                                 parse_vector(expect_field(j, "c", field), field + ".c"));
    }
    if (type == "saddle_quadratic") {
      return Operator::saddle_quadratic(
          parse_matrix(expect_field(j, "Qx", field), field + ".Qx"),
          parse_matrix(expect_field(j, "Qy", field), field + ".Qy"),
          parse_matrix(expect_field(j, "B", field), field + ".B"),
          parse_vector(expect_field(j, "q", field), field + ".q"), mu);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field + ".type", "unknown operator type '" + type + "'");
}

Json operator_to_json(const Operator& op) {
  switch (op.kind()) {
    case Operator::Kind::Affine:
      return Json{{"type", "affine"},
                  {"M", matrix_to_json(op.linear_part())},
                  {"q", vector_to_json(op.constant_part())},
                  {"mu", op.mu()}};
    case Operator::Kind::FictitiousPlay:
      return Json{{"type", "fictitious_play"}, {"A", matrix_to_json(op.payoff_matrix())}};
    case Operator::Kind::LpSaddle: {
      const Matrix& A = op.payoff_matrix();
      const Index m = A.rows();
      const Index n = A.cols();
      return Json{{"type", "lp_saddle"},
                  {"A", matrix_to_json(A)},
                  {"b", vector_to_json(-op.constant_part().tail(m))},
                  {"c", vector_to_json(op.constant_part().head(n))}};
    }
    case Operator::Kind::SaddleQuadratic: {
      const Matrix& M = op.linear_part();
      const Index n = op.first_block_size();
      const Index m = M.rows() - n;
      return Json{{"type", "saddle_quadratic"},
                  {"Qx", matrix_to_json(M.topLeftCorner(n, n))},
                  {"Qy", matrix_to_json(M.bottomRightCorner(m, m))},
                  {"B", matrix_to_json(M.topRightCorner(n, m))},
                  {"q", vector_to_json(op.constant_part())},
                  {"mu", op.mu()}};
    }
  }
  throw std::logic_error("operator_to_json: unknown kind");
}

StepSchedule parse_schedule(const Json& j, const std::string& field) {
  const std::string type = expect_string(expect_field(j, "type", field), field + ".type");
  try {
    if (type == "harmonic") return StepSchedule::harmonic();
    if (type == "power_law") {
      return StepSchedule::power_law(expect_number(expect_field(j, "a", field), field + ".a"),
                                     expect_number(expect_field(j, "c", field), field + ".c"));
    }
    if (type == "explicit") {
      const Vector g = parse_vector(expect_field(j, "gammas", field), field + ".gammas");
      return StepSchedule::explicit_list(std::vector<double>(g.data(), g.data() + g.size()));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field + ".type", "unknown schedule type '" + type + "'");
}

Json schedule_to_json(const StepSchedule& schedule) {
  switch (schedule.kind()) {
    case StepSchedule::Kind::Harmonic:
      return Json{{"type", "harmonic"}};
    case StepSchedule::Kind::PowerLaw:
      return Json{{"type", "power_law"}, {"a", schedule.exponent()}, {"c", schedule.coefficient()}};
    case StepSchedule::Kind::Explicit: {
      Json g = Json::array();
      for (const double v : schedule.gammas()) g.push_back(v);
      return Json{{"type", "explicit"}, {"gammas", std::move(g)}};
    }
  }
  throw std::logic_error("schedule_to_json: unknown kind");
}

TieRule parse_tie_rule(const Json& j, const std::string& field) {
  const std::string name = expect_string(j, field);
  if (name == "lexicographic_min") return TieRule::LexicographicMin;
  if (name == "first_vertex") return TieRule::FirstVertex;
  throw ConfigError(field, "unknown tie rule '" + name + "'");
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string instance_key(const FeasibleSet& set, const Operator& op) {
  Json key;
  key["set"] = set_to_json(set);
  key["operator"] = operator_to_json(op);
  return key.dump();
}

}  // namespace vifw
