#include <doctest.h>

#include <random>

#include "vifw/operators.hpp"

using vifw::FeasibleSet;
using vifw::Index;
using vifw::Matrix;
using vifw::Operator;
using vifw::Vector;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("evaluate follows the variant formulas") {
  const auto fp = Operator::fictitious_play(Matrix::Identity(2, 2));
  CHECK(fp(vec({1, 0, 0, 1})) == vec({0, -1, 1, 0}));

  const auto aff = Operator::affine(Matrix::Identity(2, 2), vec({-1, -1}));
  CHECK(aff(vec({1, 1})) == vec({0, 0}));

  Matrix a11(1, 1);
  a11 << 1.0;
  const auto lp = Operator::lp_saddle(a11, vec({1}), vec({1}));
  CHECK(lp(vec({0, 0})) == vec({1, -1}));

  CHECK_THROWS_AS(fp(vec({1, 0})), std::invalid_argument);
}

TEST_CASE("constructor verifies the declared monotonicity class") {
  // Skew linear part: monotone with mu = 0.
  const auto skew = Operator::affine(mat2(0, 1, -1, 0), Vector::Zero(2));
  CHECK(skew.mu() == 0.0);
  // 2I: strongly monotone, modulus 2 derived from the spectrum.
  const auto strong = Operator::affine(2.0 * Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(strong.mu() == doctest::Approx(2.0));
  CHECK_NOTHROW(Operator::affine(2.0 * Matrix::Identity(2, 2), Vector::Zero(2), 2.0));
  // Declared modulus above the spectrum is rejected.
  CHECK_THROWS_AS(Operator::affine(2.0 * Matrix::Identity(2, 2), Vector::Zero(2), 3.0),
                  std::invalid_argument);
  // Non-monotone linear part is rejected.
  CHECK_THROWS_AS(Operator::affine(-Matrix::Identity(2, 2), Vector::Zero(2)),
                  std::invalid_argument);

  CHECK(Operator::fictitious_play(mat2(1, 2, 3, 4)).mu() == 0.0);
  CHECK(Operator::lp_saddle(mat2(1, 2, 3, 4), vec({1, 2}), vec({0, 0})).mu() == 0.0);
}

TEST_CASE("saddle_quadratic structure checks") {
  const Matrix I2 = Matrix::Identity(2, 2);
  const Matrix B = mat2(0, 1, -1, 0);
  const auto sq = Operator::saddle_quadratic(I2, 3.0 * I2, B, Vector::Zero(4));
  CHECK(sq.mu() == doctest::Approx(1.0));
  CHECK(sq.first_block_size() == 2);

  CHECK_THROWS_AS(Operator::saddle_quadratic(mat2(1, 1, 0, 1), I2, B, Vector::Zero(4)),
                  std::invalid_argument);  // Qx not symmetric
  CHECK_THROWS_AS(Operator::saddle_quadratic(-I2, I2, B, Vector::Zero(4)),
                  std::invalid_argument);  // Qx not PSD
  CHECK_THROWS_AS(Operator::saddle_quadratic(I2, I2, B, Vector::Zero(3)),
                  std::invalid_argument);  // q dimension
}

TEST_CASE("check_monotone reports the worst pairwise ratio") {
  const auto fp = Operator::fictitious_play(mat2(2, -1, 0, 1));
  const auto skew_report = vifw::check_monotone(fp, 1000, 42);
  CHECK(std::abs(skew_report.min_ratio) <= 1e-10);
  CHECK(skew_report.passed);

  const auto strong = Operator::affine(2.0 * Matrix::Identity(3, 3), Vector::Zero(3));
  const auto strong_report = vifw::check_monotone(strong, 1000, 42);
  CHECK(strong_report.min_ratio >= 2.0 - 1e-10);
  CHECK(strong_report.passed);

  const auto rotation = Operator::affine(mat2(0, 1, -1, 0), Vector::Zero(2));
  CHECK(std::abs(vifw::check_monotone(rotation, 1000, 7).min_ratio) <= 1e-10);

  // Sampling region can come from a feasible set's bounding box.
  const auto set = FeasibleSet::box(vec({0, 0, 0, 0}), vec({1, 1, 1, 1}));
  const auto boxed = vifw::check_monotone(Operator::fictitious_play(Matrix::Identity(2, 2)), 100,
                                          3, &set);
  CHECK(boxed.passed);

  CHECK_THROWS_AS(vifw::check_monotone(fp, 0, 1), std::invalid_argument);
}

TEST_CASE("monotonicity holds for every shipped variant") {
  std::vector<Operator> ops;
  ops.push_back(Operator::fictitious_play(mat2(0, -1, 1, 0)));
  ops.push_back(Operator::lp_saddle(mat2(1, 0, 0, 1), vec({0.3, 0.7}), vec({0.1, 0.2})));
  ops.push_back(Operator::affine(2.0 * Matrix::Identity(2, 2), vec({-1, -0.5})));
  ops.push_back(Operator::saddle_quadratic(Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                                           mat2(0, 1, -1, 0), Vector::Zero(4)));
  for (const auto& op : ops) {
    const auto report = vifw::check_monotone(op, 10000, 123);
    CHECK(report.min_ratio >= op.mu() - 1e-9);
  }
}

TEST_CASE("skew variants have exactly zero monotonicity product") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto fp = Operator::fictitious_play(mat2(3, -2, 1, 0.5));
  const auto lp = Operator::lp_saddle(mat2(1, -1, 2, 0), vec({1, -1}), vec({0.5, 0.25}));
  for (int t = 0; t < 1000; ++t) {
    Vector x(4), y(4);
    for (Index i = 0; i < 4; ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
    }
    CHECK(std::abs((fp(x) - fp(y)).dot(x - y)) <= 1e-10);
    CHECK(std::abs((lp(x) - lp(y)).dot(x - y)) <= 1e-10);
  }
}

TEST_CASE("finite-difference Jacobian matches the analytic linear part") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_vec = [&](Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
    return v;
  };

  Matrix m = Matrix::Zero(3, 3);
  m << 2, 1, 0, -1, 3, 0.5, 0, -0.5, 1;
  const auto aff = Operator::affine(m, vec({1, 2, 3}));
  CHECK((vifw::jacobian_fd(aff, random_vec(3), 1e-5) - m).cwiseAbs().maxCoeff() <= 1e-9);

  const Matrix A = mat2(1, 2, -1, 0.5);
  const auto fp = Operator::fictitious_play(A);
  Matrix expected_fp = Matrix::Zero(4, 4);
  expected_fp.topRightCorner(2, 2) = -A;
  expected_fp.bottomLeftCorner(2, 2) = A.transpose();
  CHECK((vifw::jacobian_fd(fp, random_vec(4), 1e-5) - expected_fp).cwiseAbs().maxCoeff() <= 1e-9);

  // Saddle gradient of L(x,y) = x'Qx x/2 + x'By - y'Qy y/2 + <q,(x,-y)>,
  // differentiated by hand: [[Qx, B], [-B', Qy]].
  const Matrix Qx = mat2(2, 0.5, 0.5, 1);
  const Matrix Qy = mat2(1, -0.25, -0.25, 3);
  const Matrix B = mat2(0.5, 2, -1, 0);
  const auto sq = Operator::saddle_quadratic(Qx, Qy, B, vec({0.1, -0.2, 0.3, 0}));
  Matrix expected_sq(4, 4);
  expected_sq.topLeftCorner(2, 2) = Qx;
  expected_sq.topRightCorner(2, 2) = B;
  expected_sq.bottomLeftCorner(2, 2) = -B.transpose();
  expected_sq.bottomRightCorner(2, 2) = Qy;
  CHECK((vifw::jacobian_fd(sq, random_vec(4), 1e-5) - expected_sq).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((sq.linear_part() - expected_sq).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(vifw::jacobian_fd(aff, random_vec(3), 0.0), std::invalid_argument);
}

TEST_CASE("operator norm estimate tracks the spectral norm") {
  CHECK(vifw::operator_norm_estimate(3.0 * Matrix::Identity(4, 4)) == doctest::Approx(3.0));
  CHECK(vifw::operator_norm_estimate(mat2(0, 1, -1, 0)) == doctest::Approx(1.0));
  CHECK(vifw::operator_norm_estimate(Matrix::Zero(2, 2)) == 0.0);
}

TEST_CASE("rectangular payoff matrices wire the blocks correctly") {
  Matrix A(2, 3);
  A << 1, 2, 3, 4, 5, 6;
  const auto fp = Operator::fictitious_play(A);
  CHECK(fp.dimension() == 5);
  CHECK(fp.first_block_size() == 2);
  const Vector z = vec({1, 0, 0, 1, 0});          // x = e1, y = e2
  const Vector f = fp(z);
  CHECK(f.head(2) == -A.col(1));                  // -A y
  CHECK(f.tail(3) == A.row(0).transpose());       // A' x
}
