#include "vifw/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>
#include <utility>

namespace vifw {

namespace {

constexpr double kEigTol = 1e-10;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double min_symmetric_eigenvalue(const Matrix& M) {
  const Matrix sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace

struct Operator::Impl {
  Operator::Kind kind;
  Matrix M;       // linear part, dimension x dimension
  Vector q;       // constant part
  double mu;
  Index n_block = 0;  // first (x) block size for the saddle variants
  // Variant payloads used for direct evaluation.
  Matrix A;       // FictitiousPlay / LpSaddle
  Vector b, c;    // LpSaddle
  Matrix Qx, Qy, B;  // SaddleQuadratic
};

Operator::Operator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Operator Operator::affine(Matrix M, Vector q, std::optional<double> declared_mu) {
  require(M.rows() >= 1 && M.rows() == M.cols(), "affine: M must be square and nonempty");
  require(M.rows() == q.size(), "affine: q dimension must match M");
  require(M.allFinite() && q.allFinite(), "affine: entries must be finite");
  const double lam_min = min_symmetric_eigenvalue(M);
  double mu;
  if (declared_mu) {
    mu = *declared_mu;
    require(mu >= 0.0, "affine: mu must be >= 0");
    require(lam_min >= mu - kEigTol,
            "affine: declared mu exceeds lambda_min of the symmetric part");
  } else {
    require(lam_min >= -kEigTol, "affine: M + M^T is not positive semidefinite");
    mu = std::max(0.0, lam_min);
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Affine;
  impl->M = std::move(M);
  impl->q = std::move(q);
  impl->mu = mu;
  return Operator(impl);
}

Operator Operator::fictitious_play(Matrix A) {
  require(A.rows() >= 1 && A.cols() >= 1, "fictitious_play: A must be nonempty");
  require(A.allFinite(), "fictitious_play: A must be finite");
  const Index n = A.rows();
  const Index m = A.cols();
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::FictitiousPlay;
  impl->n_block = n;
  impl->A = std::move(A);
  impl->M = Matrix::Zero(n + m, n + m);
  impl->M.topRightCorner(n, m) = -impl->A;
  impl->M.bottomLeftCorner(m, n) = impl->A.transpose();
  impl->q = Vector::Zero(n + m);
  impl->mu = 0.0;
  return Operator(impl);
}

Operator Operator::lp_saddle(Matrix A, Vector b, Vector c) {
  require(A.rows() >= 1 && A.cols() >= 1, "lp_saddle: A must be nonempty");
  require(A.rows() == b.size(), "lp_saddle: b dimension must match rows of A");
  require(A.cols() == c.size(), "lp_saddle: c dimension must match cols of A");
  require(A.allFinite() && b.allFinite() && c.allFinite(), "lp_saddle: entries must be finite");
  const Index m = A.rows();
  const Index n = A.cols();
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::LpSaddle;
  impl->n_block = n;
  impl->A = std::move(A);
  impl->b = std::move(b);
  impl->c = std::move(c);
  impl->M = Matrix::Zero(n + m, n + m);
  impl->M.topRightCorner(n, m) = -impl->A.transpose();
  impl->M.bottomLeftCorner(m, n) = impl->A;
  impl->q = Vector::Zero(n + m);
  impl->q.head(n) = impl->c;
  impl->q.tail(m) = -impl->b;
  impl->mu = 0.0;
  return Operator(impl);
}

Operator Operator::saddle_quadratic(Matrix Qx, Matrix Qy, Matrix B, Vector q,
                                    std::optional<double> declared_mu) {
  const Index n = Qx.rows();
  const Index m = Qy.rows();
  require(n >= 1 && Qx.cols() == n, "saddle_quadratic: Qx must be square and nonempty");
  require(m >= 1 && Qy.cols() == m, "saddle_quadratic: Qy must be square and nonempty");
  require(B.rows() == n && B.cols() == m, "saddle_quadratic: B must be n-by-m");
  require(q.size() == n + m, "saddle_quadratic: q dimension must be n + m");
  require(Qx.allFinite() && Qy.allFinite() && B.allFinite() && q.allFinite(),
          "saddle_quadratic: entries must be finite");
  require((Qx - Qx.transpose()).cwiseAbs().maxCoeff() <= kEigTol,
          "saddle_quadratic: Qx must be symmetric");
  require((Qy - Qy.transpose()).cwiseAbs().maxCoeff() <= kEigTol,
          "saddle_quadratic: Qy must be symmetric");
  const double lam_x = min_symmetric_eigenvalue(Qx);
  const double lam_y = min_symmetric_eigenvalue(Qy);
  require(lam_x >= -kEigTol, "saddle_quadratic: Qx is not positive semidefinite");
  require(lam_y >= -kEigTol, "saddle_quadratic: Qy is not positive semidefinite");
  const double lam_min = std::min(lam_x, lam_y);
  double mu;
  if (declared_mu) {
    mu = *declared_mu;
    require(mu >= 0.0, "saddle_quadratic: mu must be >= 0");
    require(lam_min >= mu - kEigTol,
            "saddle_quadratic: declared mu exceeds min eigenvalue of Qx, Qy");
  } else {
    mu = std::max(0.0, lam_min);
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::SaddleQuadratic;
  impl->n_block = n;
  impl->Qx = std::move(Qx);
  impl->Qy = std::move(Qy);
  impl->B = std::move(B);
  impl->M = Matrix::Zero(n + m, n + m);
  impl->M.topLeftCorner(n, n) = impl->Qx;
  impl->M.topRightCorner(n, m) = impl->B;
  impl->M.bottomLeftCorner(m, n) = -impl->B.transpose();
  impl->M.bottomRightCorner(m, m) = impl->Qy;
  impl->q = std::move(q);
  impl->mu = mu;
  return Operator(impl);
}

Operator::Kind Operator::kind() const { return impl_->kind; }

Index Operator::dimension() const { return impl_->M.rows(); }

double Operator::mu() const { return impl_->mu; }

Vector Operator::evaluate(const Vector& x) const {
  if (x.size() != dimension()) {
    throw std::invalid_argument("evaluate: dimension mismatch (expected " +
                                std::to_string(dimension()) + ", got " +
                                std::to_string(x.size()) + ")");
  }
  require(x.allFinite(), "evaluate: point has non-finite entries");
  switch (impl_->kind) {
    case Kind::FictitiousPlay: {
      const Index n = impl_->A.rows();
      const Index m = impl_->A.cols();
      Vector out(n + m);
      out.head(n) = -impl_->A * x.tail(m);
      out.tail(m) = impl_->A.transpose() * x.head(n);
      return out;
    }
    case Kind::LpSaddle: {
      const Index m = impl_->A.rows();
      const Index n = impl_->A.cols();
      Vector out(n + m);
      out.head(n) = impl_->c - impl_->A.transpose() * x.tail(m);
      out.tail(m) = impl_->A * x.head(n) - impl_->b;
      return out;
    }
    case Kind::SaddleQuadratic: {
      const Index n = impl_->Qx.rows();
      const Index m = impl_->Qy.rows();
      Vector out(n + m);
      out.head(n) = impl_->Qx * x.head(n) + impl_->B * x.tail(m) + impl_->q.head(n);
      out.tail(m) = -impl_->B.transpose() * x.head(n) + impl_->Qy * x.tail(m) + impl_->q.tail(m);
      return out;
    }
    case Kind::Affine:
    default:
      return impl_->M * x + impl_->q;
  }
}

const Matrix& Operator::linear_part() const { return impl_->M; }

const Vector& Operator::constant_part() const { return impl_->q; }

Index Operator::first_block_size() const {
  if (impl_->kind == Kind::Affine)
    throw std::logic_error("first_block_size: affine operators have no block structure");
  return impl_->n_block;
}

const Matrix& Operator::payoff_matrix() const {
  if (impl_->kind != Kind::FictitiousPlay && impl_->kind != Kind::LpSaddle)
    throw std::logic_error("payoff_matrix: operator has no matrix A");
  return impl_->A;
}

MonotonicityReport check_monotone(const Operator& op, int trials, std::uint64_t rng_seed,
                                  const FeasibleSet* sample_region) {
  require(trials >= 1, "check_monotone: trials must be >= 1");
  const Index n = op.dimension();
  Vector lo = Vector::Constant(n, -1.0);
  Vector hi = Vector::Constant(n, 1.0);
  if (sample_region) {
    if (sample_region->dimension() != n)
      throw std::invalid_argument("check_monotone: sample region dimension mismatch");
    std::tie(lo, hi) = sample_region->bounding_box();
  }
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&]() {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = lo[i] + unit(rng) * (hi[i] - lo[i]);
    return v;
  };

  MonotonicityReport report;
  report.declared_mu = op.mu();
  report.trials = trials;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Vector x = draw();
    const Vector y = draw();
    const double sq = (x - y).squaredNorm();
    if (sq == 0.0) continue;
    const double ratio = (op(x) - op(y)).dot(x - y) / sq;
    report.min_ratio = std::min(report.min_ratio, ratio);
  }
  report.passed = report.min_ratio >= op.mu() - 1e-10;
  return report;
}

Matrix jacobian_fd(const Operator& op, const Vector& x, double h) {
  require(h > 0.0, "jacobian_fd: h must be > 0");
  if (x.size() != op.dimension()) throw std::invalid_argument("jacobian_fd: dimension mismatch");
  const Index n = op.dimension();
  Matrix J(n, n);
  Vector xp = x, xm = x;
  for (Index j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    J.col(j) = (op(xp) - op(xm)) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return J;
}

double operator_norm_estimate(const Matrix& M, int iterations) {
  if (M.rows() == 0) return 0.0;
  Vector v = Vector::Ones(M.cols());
  v.normalize();
  double sigma_sq = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = M.transpose() * (M * v);
    sigma_sq = w.dot(v);
    const double norm = w.norm();
    if (norm <= 0.0) return 0.0;
    v = w / norm;
  }
  return std::sqrt(std::max(0.0, sigma_sq));
}

}  // namespace vifw
