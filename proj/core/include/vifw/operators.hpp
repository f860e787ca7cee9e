#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "vifw/feasible_set.hpp"
#include "vifw/types.hpp"

namespace vifw {

/// A monotone affine map F with a declared strong-monotonicity modulus mu
/// (mu = 0 means merely monotone). The declared class is verified at
/// construction by an eigenvalue check on the symmetric part of the linear
/// term, so callers can dispatch on "monotone" vs "strongly monotone"
/// without re-estimating.
class Operator {
 public:
  enum class Kind { Affine, FictitiousPlay, LpSaddle, SaddleQuadratic };

  /// F(x) = M x + q. Monotone iff M + M^T is positive semidefinite.
  /// When `declared_mu` is omitted the modulus is max(0, lambda_min(sym(M))).
  static Operator affine(Matrix M, Vector q, std::optional<double> declared_mu = std::nullopt);

  /// Zero-sum game map F(x, y) = (-A y, A^T x) on dimension rows(A) + cols(A).
  /// Skew, hence monotone with mu = 0.
  static Operator fictitious_play(Matrix A);

  /// Linear-programming saddle map F(x, y) = (c - A^T y, A x - b) with
  /// A m-by-n, x in R^n, y in R^m. Skew plus a constant, mu = 0.
  static Operator lp_saddle(Matrix A, Vector b, Vector c);

  /// Saddle gradient (grad_x L, -grad_y L) of
  ///   L(x, y) = x^T Qx x / 2 + x^T B y - y^T Qy y / 2 + <q, (x, -y)>,
  /// i.e. F(x, y) = (Qx x + B y + q_x, -B^T x + Qy y + q_y).
  /// Qx, Qy must be symmetric PSD; mu = min(lambda_min(Qx), lambda_min(Qy)).
  static Operator saddle_quadratic(Matrix Qx, Matrix Qy, Matrix B, Vector q,
                                   std::optional<double> declared_mu = std::nullopt);

  Kind kind() const;
  Index dimension() const;
  double mu() const;

  Vector evaluate(const Vector& x) const;
  Vector operator()(const Vector& x) const { return evaluate(x); }

  /// Exact Jacobian (constant: every variant is affine).
  const Matrix& linear_part() const;
  /// Constant term, i.e. F(0).
  const Vector& constant_part() const;

  // Variant payloads (throw on kind mismatch).
  const Matrix& payoff_matrix() const;
  /// Size of the first (x) block for the two-block saddle variants.
  Index first_block_size() const;

 private:
  struct Impl;
  explicit Operator(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Sampled check of <F(x) - F(y), x - y> >= mu ||x - y||^2.
struct MonotonicityReport {
  double min_ratio = 0.0;    // smallest observed <F(x)-F(y), x-y> / ||x-y||^2
  double declared_mu = 0.0;
  int trials = 0;
  bool passed = false;       // min_ratio >= mu - 1e-10
};

/// Samples `trials` random pairs and reports the worst monotonicity ratio.
/// Pairs are drawn from the bounding box of `sample_region` when given,
/// otherwise from [-1, 1]^n.
MonotonicityReport check_monotone(const Operator& op, int trials, std::uint64_t rng_seed,
                                  const FeasibleSet* sample_region = nullptr);

/// Central-difference Jacobian with stencil width h > 0.
Matrix jacobian_fd(const Operator& op, const Vector& x, double h);

/// Power-iteration estimate of ||linear_part||_2 (deterministic start).
double operator_norm_estimate(const Matrix& M, int iterations = 100);

}  // namespace vifw
