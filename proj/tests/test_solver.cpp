#include <doctest.h>

#include <random>

#include "vifw/oracle.hpp"
#include "vifw/solver.hpp"

using vifw::FeasibleSet;
using vifw::Index;
using vifw::Matrix;
using vifw::Operator;
using vifw::SolveOptions;
using vifw::SolverTrace;
using vifw::StepSchedule;
using vifw::Vector;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

FeasibleSet two_simplices() {
  return FeasibleSet::product({FeasibleSet::simplex(2), FeasibleSet::simplex(2)});
}

Operator identity_game() { return Operator::fictitious_play(Matrix::Identity(2, 2)); }

Matrix random_payoff(Index n, Index m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix A(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) A(i, j) = unit(rng);
  return A;
}

}  // namespace

TEST_CASE("fw_gap agrees with brute-force enumeration at named points") {
  const auto set = two_simplices();
  const auto op = identity_game();

  // Uniform strategies solve the identity game.
  const Vector uniform = vec({0.5, 0.5, 0.5, 0.5});
  const auto at_uniform = vifw::fw_gap(set, op, uniform);
  CHECK(std::abs(at_uniform.gap) <= 1e-12);
  CHECK(std::abs(vifw::brute_force_gap(set, op, uniform)) <= 1e-12);

  // A pure vertex pair has gap 1 in the identity game.
  const Vector corner = vec({1, 0, 1, 0});
  CHECK(vifw::fw_gap(set, op, corner).gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vifw::brute_force_gap(set, op, corner) == doctest::Approx(1.0).epsilon(1e-12));

  // F(x*) = 0 at the interior solution of the box instance.
  const auto box = FeasibleSet::box(vec({0, 0}), vec({1, 1}));
  const auto aff = Operator::affine(Matrix::Identity(2, 2), vec({-0.5, -0.5}));
  CHECK(std::abs(vifw::fw_gap(box, aff, vec({0.5, 0.5})).gap) <= 1e-12);

  CHECK_THROWS_AS(vifw::fw_gap(set, op, vec({0.6, 0.6, 0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("fw_gap matches brute force on random feasible points") {
  std::mt19937_64 rng(2024);
  const auto set = two_simplices();
  const auto op = identity_game();
  for (int t = 0; t < 1000; ++t) {
    const Vector x = set.sample(rng);
    const auto res = vifw::fw_gap(set, op, x);
    CHECK(res.gap >= -1e-12);
    CHECK(res.gap == doctest::Approx(vifw::brute_force_gap(set, op, x)).epsilon(1e-12));
  }
}

TEST_CASE("fw_step applies the step-size indexing") {
  const auto set = two_simplices();
  const auto op = identity_game();
  const auto harmonic = StepSchedule::harmonic();

  // gamma_1 = 1 replaces the iterate by s_0 regardless of x_0.
  for (const Vector& x0 : {vec({1, 0, 1, 0}), vec({0.25, 0.75, 0.5, 0.5})}) {
    const auto [x1, s0] = vifw::fw_step(set, op, x0, 0, harmonic);
    CHECK(x1 == s0);
  }

  // gamma = 0.5 moves halfway toward the target vertex.
  const auto s2 = FeasibleSet::simplex(2);
  const auto pull = Operator::affine(Matrix::Identity(2, 2), vec({0, -2}));
  const auto half = StepSchedule::explicit_list({0.5});
  const auto [x1, s] = vifw::fw_step(s2, pull, vec({1, 0}), 0, half);
  CHECK(s == vec({0, 1}));
  CHECK(x1 == vec({0.5, 0.5}));

  CHECK_THROWS_AS(vifw::fw_step(s2, pull, vec({0.8, 0.8}), 0, half), std::invalid_argument);
}

TEST_CASE("harmonic iterates equal the running average of the targets") {
  std::mt19937_64 rng(31);
  const auto harmonic = StepSchedule::harmonic();
  for (int game = 0; game < 3; ++game) {
    const Matrix A = random_payoff(5, 5, rng);
    const auto set = FeasibleSet::product({FeasibleSet::simplex(5), FeasibleSet::simplex(5)});
    const auto op = Operator::fictitious_play(A);
    SolveOptions options;
    options.max_iter = 1000;
    const SolverTrace trace = vifw::solve(set, op, harmonic, set.vertex(0), options);
    Vector mean = Vector::Zero(10);
    for (std::size_t k = 1; k < trace.rows.size(); ++k) {
      mean += trace.rows[k - 1].s;
      CHECK((trace.rows[k].x - mean / static_cast<double>(k)).norm() <= 1e-10);
    }
  }
}

TEST_CASE("solve contract: row counts, accumulation, feasibility, nonnegative gaps") {
  const auto set = two_simplices();
  const auto op = identity_game();
  const auto harmonic = StepSchedule::harmonic();

  SolveOptions bad;
  bad.max_iter = 0;
  CHECK_THROWS_AS(vifw::solve(set, op, harmonic, set.vertex(0), bad), std::invalid_argument);

  SolveOptions one;
  one.max_iter = 1;
  const auto two_rows = vifw::solve(set, op, harmonic, set.vertex(0), one);
  REQUIRE(two_rows.rows.size() == 2);
  CHECK(two_rows.rows[0].k == 0);
  CHECK(two_rows.rows[1].k == 1);

  SolveOptions options;
  options.max_iter = 500;
  const auto trace = vifw::solve(set, op, harmonic, set.vertex(0), options);
  REQUIRE(trace.rows.size() == 501);
  double tau = 0.0;
  for (std::size_t k = 0; k < trace.rows.size(); ++k) {
    const auto& row = trace.rows[k];
    if (k > 0) tau += row.gamma;
    CHECK(row.tau == tau);  // accumulated exactly
    CHECK(row.gap >= -1e-12);
    CHECK(set.contains(row.x, 1e-9));
  }
  CHECK(trace.rows[0].gamma == 0.0);
  CHECK(trace.rows[1].gamma == 1.0);
}

TEST_CASE("solve stops on the running-min gap and reports the final point") {
  const auto box = FeasibleSet::box(vec({0, 0}), vec({1, 1}));
  const auto op = Operator::affine(Matrix::Identity(2, 2), vec({-0.5, -0.5}));
  SolveOptions options;
  options.max_iter = 100000;
  options.gap_tol = 1e-3;
  const auto trace = vifw::solve(box, op, StepSchedule::harmonic(), vec({0, 0}), options);
  CHECK(trace.stopped_by_gap);
  CHECK(trace.min_gap <= 1e-3);
  CHECK(trace.iterations < 100000);
  CHECK((trace.rows.back().x - vec({0.5, 0.5})).norm() <= 0.1);

  // gap_tol = 0 runs to the horizon even when the gap hits zero.
  SolveOptions full;
  full.max_iter = 50;
  full.gap_tol = 0.0;
  const auto full_trace = vifw::solve(box, op, StepSchedule::harmonic(), vec({0, 0}), full);
  CHECK(full_trace.iterations == 50);
  CHECK_FALSE(full_trace.stopped_by_gap);
}

TEST_CASE("solve is deterministic and scale-invariant in the operator") {
  const auto set = two_simplices();
  const auto harmonic = StepSchedule::harmonic();
  SolveOptions options;
  options.max_iter = 300;

  const auto a = vifw::solve(set, identity_game(), harmonic, set.vertex(0), options);
  const auto b = vifw::solve(set, identity_game(), harmonic, set.vertex(0), options);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].x == b.rows[k].x);
    CHECK(a.rows[k].gap == b.rows[k].gap);
  }

  // Doubling F leaves every target (hence every iterate) unchanged and
  // doubles the gap exactly.
  const auto doubled = Operator::fictitious_play(2.0 * Matrix::Identity(2, 2));
  const auto c = vifw::solve(set, doubled, harmonic, set.vertex(0), options);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].x == c.rows[k].x);
    CHECK(a.rows[k].s == c.rows[k].s);
    CHECK(2.0 * a.rows[k].gap == c.rows[k].gap);
  }
}

TEST_CASE("long traces are thinned but keep the final row") {
  const auto set = two_simplices();
  SolveOptions options;
  options.max_iter = 200000;
  const auto trace = vifw::solve(set, identity_game(), StepSchedule::harmonic(), set.vertex(0),
                                 options);
  CHECK(trace.thinned);
  CHECK(trace.rows.size() <= 100002);
  CHECK(trace.rows.back().k == 200000);
  CHECK(trace.rows[1].k == 2);  // stride ceil(2e5 / 1e5) = 2
}

TEST_CASE("non-finite quantities abort with a diagnostic") {
  const auto box = FeasibleSet::box(vec({0, 0}), vec({1, 1}));
  // Overflowing constant term: the gap becomes infinite on the first iterate.
  const auto huge = Operator::affine(Matrix::Identity(2, 2), vec({-1e308, -1e308}));
  SolveOptions options;
  options.max_iter = 10;
  CHECK_THROWS_WITH_AS(vifw::solve(box, huge, StepSchedule::harmonic(), vec({0, 0}), options),
                       doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("interleaved block updates stay feasible on product sets") {
  const auto set = two_simplices();
  SolveOptions options;
  options.max_iter = 200;
  options.gauss_seidel = true;
  const auto trace = vifw::solve(set, identity_game(), StepSchedule::harmonic(), set.vertex(0),
                                 options);
  for (const auto& row : trace.rows) CHECK(set.contains(row.x, 1e-9));
  CHECK(trace.min_gap < 1.0);

  const auto s2 = FeasibleSet::simplex(2);
  const auto pull = Operator::affine(Matrix::Identity(2, 2), vec({0, -2}));
  CHECK_THROWS_AS(vifw::solve(s2, pull, StepSchedule::harmonic(), vec({1, 0}), options),
                  std::invalid_argument);
}

TEST_CASE("oracle distances are recorded when a solution is supplied") {
  const auto box = FeasibleSet::box(vec({0, 0}), vec({1, 1}));
  const auto op = Operator::affine(Matrix::Identity(2, 2), vec({-0.5, -0.5}));
  SolveOptions options;
  options.max_iter = 100;
  options.oracle_solution = vec({0.5, 0.5});
  const auto trace = vifw::solve(box, op, StepSchedule::harmonic(), vec({0, 0}), options);
  REQUIRE(trace.rows[0].dist.has_value());
  CHECK(*trace.rows[0].dist == doctest::Approx(std::sqrt(0.5)));
  CHECK(*trace.rows.back().dist < 0.05);
}

TEST_CASE("the full stack runs on a vertex polytope") {
  const auto tri = FeasibleSet::vertex_polytope({vec({0, 0}), vec({1, 0}), vec({0, 1})});
  const auto op = Operator::affine(2.0 * Matrix::Identity(2, 2), vec({-0.5, -0.6}));
  SolveOptions options;
  options.max_iter = 2000;
  const auto trace = vifw::solve(tri, op, StepSchedule::harmonic(), vec({0, 0}), options);
  CHECK(trace.min_gap <= 1e-3);
  for (std::size_t k = 0; k < trace.rows.size(); k += 100)
    CHECK(tri.contains(trace.rows[k].x, 1e-9));

  const auto reference = vifw::extragradient(tri, op, vec({0, 0}));
  CHECK((trace.rows.back().x - reference.x_star).norm() <= 1e-2);
  CHECK(vifw::brute_force_gap(tri, op, reference.x_star) <= 1e-8);
}
