#include <benchmark/benchmark.h>

#include <random>

#include "vifw/vifw.hpp"

using namespace vifw;

namespace {

FeasibleSet game_set(Index n) {
  return FeasibleSet::product({FeasibleSet::simplex(n), FeasibleSet::simplex(n)});
}

Operator random_game(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = unit(rng);
  return Operator::fictitious_play(A);
}

void BM_lmo_simplex(benchmark::State& state) {
  const Index n = state.range(0);
  const auto set = FeasibleSet::simplex(n);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  Vector pi(n);
  for (Index i = 0; i < n; ++i) pi[i] = gauss(rng);
  for (auto _ : state) benchmark::DoNotOptimize(set.lmo(pi));
}
BENCHMARK(BM_lmo_simplex)->Arg(10)->Arg(100)->Arg(1000);

void BM_project_simplex(benchmark::State& state) {
  const Index n = state.range(0);
  const auto set = FeasibleSet::simplex(n);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss;
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = gauss(rng);
  for (auto _ : state) benchmark::DoNotOptimize(set.project(x));
}
BENCHMARK(BM_project_simplex)->Arg(10)->Arg(100)->Arg(1000);

void BM_project_polytope(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  std::vector<Vector> vertices;
  for (int v = 0; v < 12; ++v) {
    Vector p(6);
    for (Index i = 0; i < 6; ++i) p[i] = gauss(rng);
    vertices.push_back(p);
  }
  const auto set = FeasibleSet::vertex_polytope(vertices);
  Vector x(6);
  for (Index i = 0; i < 6; ++i) x[i] = gauss(rng);
  for (auto _ : state) benchmark::DoNotOptimize(set.project(x));
}
BENCHMARK(BM_project_polytope);

void BM_fw_solve(benchmark::State& state) {
  const Index n = state.range(0);
  const auto set = game_set(n);
  const auto op = random_game(n, 7);
  const auto harmonic = StepSchedule::harmonic();
  SolveOptions options;
  options.max_iter = 1000;
  for (auto _ : state)
    benchmark::DoNotOptimize(solve(set, op, harmonic, set.vertex(0), options));
}
BENCHMARK(BM_fw_solve)->Arg(5)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_extragradient(benchmark::State& state) {
  const auto set = FeasibleSet::box(Vector::Zero(10), Vector::Ones(10));
  const auto op = Operator::affine(2.0 * Matrix::Identity(10, 10),
                                   -Vector::LinSpaced(10, 0.1, 1.9));
  ExtragradientOptions options;
  options.tol = 1e-8;
  for (auto _ : state)
    benchmark::DoNotOptimize(extragradient(set, op, set.centroid(), options));
}
BENCHMARK(BM_extragradient);

void BM_integrate_br(benchmark::State& state) {
  const auto set = game_set(3);
  const auto op = random_game(3, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_br(set, op, set.vertex(0), 1.0, 1e-3));
}
BENCHMARK(BM_integrate_br)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
