#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "vifw/types.hpp"

namespace vifw {

/// A nonempty compact convex feasible set with a finite canonical vertex set.
///
/// Four variants are supported: the standard (probability) simplex, an
/// axis-aligned box, the convex hull of an explicit vertex list, and a
/// Cartesian product of feasible sets. Values are immutable after
/// construction and cheap to copy; every operation is a pure function.
class FeasibleSet {
 public:
  enum class Kind { Simplex, Box, VertexPolytope, Product };

  /// Probability simplex {x >= 0, sum x = 1} in R^n, n >= 1.
  static FeasibleSet simplex(Index n);
  /// Axis-aligned box [lower, upper]; requires lower <= upper componentwise.
  static FeasibleSet box(Vector lower, Vector upper);
  /// Convex hull of the given vertices (>= 1, equal dimensions).
  static FeasibleSet vertex_polytope(std::vector<Vector> vertices);
  /// Cartesian product of factors; dimension is the sum of factor dimensions.
  static FeasibleSet product(std::vector<FeasibleSet> factors);

  Kind kind() const;
  Index dimension() const;

  /// Exact Euclidean diameter (max pairwise distance over the set).
  double diameter() const;

  /// A vertex minimizing <pi, s> over the set; ties resolved by `rule`.
  Vector lmo(const Vector& pi, TieRule rule = TieRule::LexicographicMin) const;

  /// Euclidean projection onto the set. Exact (up to floating point) for
  /// simplex/box/product; vertex polytopes use Wolfe's nearest-point
  /// algorithm run to a dual-gap residual of 1e-10.
  Vector project(const Vector& x) const;

  /// True iff x satisfies the defining constraints within tol (infinity
  /// norm on constraint residuals; projection distance for vertex
  /// polytopes).
  bool contains(const Vector& x, double tol) const;

  /// Number of canonical vertices (corners for boxes); saturates at 2^63 for
  /// boxes in very high dimension.
  std::uint64_t vertex_count() const;
  /// Canonical vertex by enumeration index. For products, factor 0 is the
  /// most significant digit; for boxes, bit order makes the enumeration
  /// coincide with coordinate-lexicographic corner order.
  Vector vertex(std::uint64_t index) const;

  /// Barycenter of the canonical vertex set.
  Vector centroid() const;

  /// Componentwise bounds [lo, hi] containing the set.
  std::pair<Vector, Vector> bounding_box() const;

  /// Random point of the set: uniform for boxes, flat Dirichlet weights over
  /// vertices otherwise, factorwise for products.
  Vector sample(std::mt19937_64& rng) const;

  // Accessors for the underlying variant data (throw on kind mismatch).
  const Vector& box_lower() const;
  const Vector& box_upper() const;
  const std::vector<Vector>& polytope_vertices() const;
  const std::vector<FeasibleSet>& factors() const;

 private:
  struct Impl;
  explicit FeasibleSet(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Free-function spellings mirroring the member operations.
inline Vector lmo(const FeasibleSet& set, const Vector& pi,
                  TieRule rule = TieRule::LexicographicMin) {
  return set.lmo(pi, rule);
}
inline Vector project(const FeasibleSet& set, const Vector& x) { return set.project(x); }
inline double diameter(const FeasibleSet& set) { return set.diameter(); }
inline bool contains(const FeasibleSet& set, const Vector& x, double tol) {
  return set.contains(x, tol);
}

}  // namespace vifw
