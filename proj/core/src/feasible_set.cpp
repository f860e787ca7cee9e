#include "vifw/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <variant>

namespace vifw {

namespace {

struct SimplexData {
  Index n;
};

struct BoxData {
  Vector lower;
  Vector upper;
};

struct PolytopeData {
  std::vector<Vector> vertices;
  double diameter;
};

struct ProductData {
  std::vector<FeasibleSet> factors;
  Index dimension;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_dimension(Index expected, Index got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " +
                                std::to_string(expected) + ", got " + std::to_string(got) + ")");
  }
}

// Lexicographic coordinate comparison, exact.
bool lex_less(const Vector& a, const Vector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Projection onto the probability simplex by sort and threshold.
Vector project_simplex(const Vector& x) {
  const Index n = x.size();
  std::vector<double> u(x.data(), x.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  Index rho = 0;
  for (Index j = 0; j < n; ++j) {
    cumsum += u[static_cast<std::size_t>(j)];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - candidate > 0.0) {
      rho = j + 1;
      tau = candidate;
    }
  }
  (void)rho;
  Vector p(n);
  for (Index i = 0; i < n; ++i) p[i] = std::max(x[i] - tau, 0.0);
  return p;
}

// Wolfe's nearest-point algorithm: min-norm point of conv(points).
// Returns the optimal point once the dual gap <w, w - p_j> drops below
// `residual_tol` or the corral stops changing.
Vector min_norm_point(const std::vector<Vector>& points, double residual_tol) {
  const std::size_t m = points.size();
  const Index n = points[0].size();

  // Start from the point of smallest norm (first such index).
  std::size_t start = 0;
  double best = points[0].squaredNorm();
  for (std::size_t i = 1; i < m; ++i) {
    const double sq = points[i].squaredNorm();
    if (sq < best) {
      best = sq;
      start = i;
    }
  }

  std::vector<std::size_t> corral{start};
  std::vector<double> weights{1.0};
  Vector w = points[start];

  const int max_major = static_cast<int>(16 * m + 64);
  for (int major = 0; major < max_major; ++major) {
    // Most improving vertex for the objective <w, p>.
    std::size_t j = 0;
    double val = w.dot(points[0]);
    for (std::size_t i = 1; i < m; ++i) {
      const double v = w.dot(points[i]);
      if (v < val) {
        val = v;
        j = i;
      }
    }
    if (w.squaredNorm() - val <= residual_tol) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    weights.push_back(0.0);

    // Minor cycle: move to the affine minimizer, dropping vertices whose
    // barycentric weight would become nonpositive.
    for (;;) {
      const std::size_t k = corral.size();
      Matrix gram(k + 1, k + 1);
      Vector rhs = Vector::Zero(static_cast<Index>(k + 1));
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
          const double g = points[corral[a]].dot(points[corral[b]]);
          gram(static_cast<Index>(a), static_cast<Index>(b)) = g;
          gram(static_cast<Index>(b), static_cast<Index>(a)) = g;
        }
        gram(static_cast<Index>(a), static_cast<Index>(k)) = 1.0;
        gram(static_cast<Index>(k), static_cast<Index>(a)) = 1.0;
      }
      gram(static_cast<Index>(k), static_cast<Index>(k)) = 0.0;
      rhs[static_cast<Index>(k)] = 1.0;
      Vector sol = gram.fullPivLu().solve(rhs);

      bool interior = true;
      for (std::size_t a = 0; a < k; ++a) {
        if (sol[static_cast<Index>(a)] <= 1e-14) {
          interior = false;
          break;
        }
      }
      if (interior) {
        weights.assign(sol.data(), sol.data() + k);
        break;
      }

      // Step from `weights` toward `sol` until the first weight vanishes.
      double theta = 1.0;
      for (std::size_t a = 0; a < k; ++a) {
        const double lam = weights[a];
        const double tgt = sol[static_cast<Index>(a)];
        if (tgt <= 1e-14 && lam - tgt > 0.0) theta = std::min(theta, lam / (lam - tgt));
      }
      std::vector<std::size_t> next_corral;
      std::vector<double> next_weights;
      for (std::size_t a = 0; a < k; ++a) {
        const double lam = (1.0 - theta) * weights[a] + theta * sol[static_cast<Index>(a)];
        if (lam > 1e-14) {
          next_corral.push_back(corral[a]);
          next_weights.push_back(lam);
        }
      }
      if (next_corral.empty()) {
        // Numerical breakdown; keep the single best vertex of the corral.
        next_corral.push_back(corral[0]);
        next_weights.push_back(1.0);
      }
      corral = std::move(next_corral);
      weights = std::move(next_weights);
      if (corral.size() == 1) {
        weights[0] = 1.0;
        break;
      }
    }

    // Renormalize and rebuild w from the corral combination.
    double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    w = Vector::Zero(n);
    for (std::size_t a = 0; a < corral.size(); ++a) w += (weights[a] / wsum) * points[corral[a]];
  }
  return w;
}

std::uint64_t saturating_shl1(Index bits) {
  if (bits >= 63) return std::uint64_t{1} << 63;
  return std::uint64_t{1} << bits;
}

}  // namespace

struct FeasibleSet::Impl {
  std::variant<SimplexData, BoxData, PolytopeData, ProductData> data;
};

FeasibleSet::FeasibleSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

FeasibleSet FeasibleSet::simplex(Index n) {
  require(n >= 1, "simplex: dimension must be >= 1");
  return FeasibleSet(std::make_shared<Impl>(Impl{SimplexData{n}}));
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  require(lower.size() >= 1, "box: dimension must be >= 1");
  check_dimension(lower.size(), upper.size(), "box");
  require(lower.allFinite() && upper.allFinite(), "box: bounds must be finite");
  for (Index i = 0; i < lower.size(); ++i)
    require(lower[i] <= upper[i], "box: lower > upper at coordinate " + std::to_string(i));
  return FeasibleSet(std::make_shared<Impl>(Impl{BoxData{std::move(lower), std::move(upper)}}));
}

FeasibleSet FeasibleSet::vertex_polytope(std::vector<Vector> vertices) {
  require(!vertices.empty(), "vertex_polytope: needs at least one vertex");
  const Index n = vertices[0].size();
  require(n >= 1, "vertex_polytope: dimension must be >= 1");
  for (const auto& v : vertices) {
    check_dimension(n, v.size(), "vertex_polytope");
    require(v.allFinite(), "vertex_polytope: vertices must be finite");
  }
  double diam = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      diam = std::max(diam, (vertices[i] - vertices[j]).norm());
  return FeasibleSet(std::make_shared<Impl>(Impl{PolytopeData{std::move(vertices), diam}}));
}

FeasibleSet FeasibleSet::product(std::vector<FeasibleSet> factors) {
  require(!factors.empty(), "product: needs at least one factor");
  Index dim = 0;
  for (const auto& f : factors) dim += f.dimension();
  return FeasibleSet(std::make_shared<Impl>(Impl{ProductData{std::move(factors), dim}}));
}

FeasibleSet::Kind FeasibleSet::kind() const {
  switch (impl_->data.index()) {
    case 0: return Kind::Simplex;
    case 1: return Kind::Box;
    case 2: return Kind::VertexPolytope;
    default: return Kind::Product;
  }
}

Index FeasibleSet::dimension() const {
  if (const auto* s = std::get_if<SimplexData>(&impl_->data)) return s->n;
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) return b->lower.size();
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) return p->vertices[0].size();
  return std::get<ProductData>(impl_->data).dimension;
}

double FeasibleSet::diameter() const {
  if (const auto* s = std::get_if<SimplexData>(&impl_->data))
    return s->n >= 2 ? std::sqrt(2.0) : 0.0;
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) return (b->upper - b->lower).norm();
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) return p->diameter;
  const auto& prod = std::get<ProductData>(impl_->data);
  double sq = 0.0;
  for (const auto& f : prod.factors) {
    const double d = f.diameter();
    sq += d * d;
  }
  return std::sqrt(sq);
}

Vector FeasibleSet::lmo(const Vector& pi, TieRule rule) const {
  check_dimension(dimension(), pi.size(), "lmo");
  require(pi.allFinite(), "lmo: objective has non-finite entries");

  if (const auto* s = std::get_if<SimplexData>(&impl_->data)) {
    // Both rules keep the smallest minimizing coordinate index.
    Index best = 0;
    for (Index i = 1; i < s->n; ++i)
      if (pi[i] < pi[best]) best = i;
    Vector out = Vector::Zero(s->n);
    out[best] = 1.0;
    return out;
  }
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) {
    // Componentwise; ties (pi_i == 0) take the lower bound, which is both
    // the first corner in enumeration order and the lexicographic minimum.
    Vector out(b->lower.size());
    for (Index i = 0; i < out.size(); ++i) out[i] = pi[i] < 0.0 ? b->upper[i] : b->lower[i];
    return out;
  }
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) {
    const auto& verts = p->vertices;
    std::size_t best = 0;
    double val = pi.dot(verts[0]);
    for (std::size_t i = 1; i < verts.size(); ++i) {
      const double v = pi.dot(verts[i]);
      if (v < val) {
        val = v;
        best = i;
      } else if (v == val && rule == TieRule::LexicographicMin &&
                 lex_less(verts[i], verts[best])) {
        best = i;
      }
    }
    return verts[best];
  }
  const auto& prod = std::get<ProductData>(impl_->data);
  Vector out(prod.dimension);
  Index offset = 0;
  for (const auto& f : prod.factors) {
    const Index d = f.dimension();
    out.segment(offset, d) = f.lmo(pi.segment(offset, d), rule);
    offset += d;
  }
  return out;
}

Vector FeasibleSet::project(const Vector& x) const {
  check_dimension(dimension(), x.size(), "project");
  if (std::get_if<SimplexData>(&impl_->data)) return project_simplex(x);
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) {
    return x.cwiseMax(b->lower).cwiseMin(b->upper);
  }
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) {
    std::vector<Vector> shifted;
    shifted.reserve(p->vertices.size());
    for (const auto& v : p->vertices) shifted.push_back(v - x);
    return min_norm_point(shifted, 1e-10) + x;
  }
  const auto& prod = std::get<ProductData>(impl_->data);
  Vector out(prod.dimension);
  Index offset = 0;
  for (const auto& f : prod.factors) {
    const Index d = f.dimension();
    out.segment(offset, d) = f.project(x.segment(offset, d));
    offset += d;
  }
  return out;
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  check_dimension(dimension(), x.size(), "contains");
  require(tol >= 0.0, "contains: tol must be >= 0");
  if (!x.allFinite()) return false;
  if (const auto* s = std::get_if<SimplexData>(&impl_->data)) {
    if (std::abs(x.sum() - 1.0) > tol) return false;
    return x.minCoeff() >= -tol;
  }
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) {
    for (Index i = 0; i < x.size(); ++i)
      if (x[i] < b->lower[i] - tol || x[i] > b->upper[i] + tol) return false;
    return true;
  }
  if (std::get_if<PolytopeData>(&impl_->data)) {
    return (x - project(x)).norm() <= tol;
  }
  const auto& prod = std::get<ProductData>(impl_->data);
  Index offset = 0;
  for (const auto& f : prod.factors) {
    const Index d = f.dimension();
    if (!f.contains(x.segment(offset, d), tol)) return false;
    offset += d;
  }
  return true;
}

std::uint64_t FeasibleSet::vertex_count() const {
  if (const auto* s = std::get_if<SimplexData>(&impl_->data))
    return static_cast<std::uint64_t>(s->n);
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) return saturating_shl1(b->lower.size());
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data))
    return static_cast<std::uint64_t>(p->vertices.size());
  const auto& prod = std::get<ProductData>(impl_->data);
  std::uint64_t count = 1;
  for (const auto& f : prod.factors) {
    const std::uint64_t c = f.vertex_count();
    if (count > std::numeric_limits<std::uint64_t>::max() / c) return std::uint64_t{1} << 63;
    count *= c;
  }
  return count;
}

Vector FeasibleSet::vertex(std::uint64_t index) const {
  if (index >= vertex_count()) throw std::out_of_range("vertex: index out of range");
  if (const auto* s = std::get_if<SimplexData>(&impl_->data)) {
    Vector out = Vector::Zero(s->n);
    out[static_cast<Index>(index)] = 1.0;
    return out;
  }
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) {
    const Index n = b->lower.size();
    Vector out(n);
    // Coordinate 0 is the most significant bit so that enumeration order is
    // lexicographic corner order.
    for (Index i = 0; i < n; ++i) {
      const bool hi = (index >> (n - 1 - i)) & 1u;
      out[i] = hi ? b->upper[i] : b->lower[i];
    }
    return out;
  }
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data))
    return p->vertices[static_cast<std::size_t>(index)];
  const auto& prod = std::get<ProductData>(impl_->data);
  // Mixed-radix decomposition, factor 0 most significant.
  std::vector<std::uint64_t> digits(prod.factors.size());
  std::uint64_t rem = index;
  for (std::size_t i = prod.factors.size(); i-- > 0;) {
    const std::uint64_t c = prod.factors[i].vertex_count();
    digits[i] = rem % c;
    rem /= c;
  }
  Vector out(prod.dimension);
  Index offset = 0;
  for (std::size_t i = 0; i < prod.factors.size(); ++i) {
    const Index d = prod.factors[i].dimension();
    out.segment(offset, d) = prod.factors[i].vertex(digits[i]);
    offset += d;
  }
  return out;
}

Vector FeasibleSet::centroid() const {
  if (const auto* s = std::get_if<SimplexData>(&impl_->data))
    return Vector::Constant(s->n, 1.0 / static_cast<double>(s->n));
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) return 0.5 * (b->lower + b->upper);
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) {
    Vector out = Vector::Zero(p->vertices[0].size());
    for (const auto& v : p->vertices) out += v;
    return out / static_cast<double>(p->vertices.size());
  }
  const auto& prod = std::get<ProductData>(impl_->data);
  Vector out(prod.dimension);
  Index offset = 0;
  for (const auto& f : prod.factors) {
    const Index d = f.dimension();
    out.segment(offset, d) = f.centroid();
    offset += d;
  }
  return out;
}

std::pair<Vector, Vector> FeasibleSet::bounding_box() const {
  if (const auto* s = std::get_if<SimplexData>(&impl_->data))
    return {Vector::Zero(s->n), Vector::Ones(s->n)};
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) return {b->lower, b->upper};
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) {
    Vector lo = p->vertices[0];
    Vector hi = p->vertices[0];
    for (const auto& v : p->vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    return {lo, hi};
  }
  const auto& prod = std::get<ProductData>(impl_->data);
  Vector lo(prod.dimension), hi(prod.dimension);
  Index offset = 0;
  for (const auto& f : prod.factors) {
    const Index d = f.dimension();
    auto [flo, fhi] = f.bounding_box();
    lo.segment(offset, d) = flo;
    hi.segment(offset, d) = fhi;
    offset += d;
  }
  return {lo, hi};
}

Vector FeasibleSet::sample(std::mt19937_64& rng) const {
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector out(b->lower.size());
    for (Index i = 0; i < out.size(); ++i)
      out[i] = b->lower[i] + unit(rng) * (b->upper[i] - b->lower[i]);
    return out;
  }
  if (const auto* s = std::get_if<SimplexData>(&impl_->data)) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector out(s->n);
    double sum = 0.0;
    for (Index i = 0; i < s->n; ++i) {
      out[i] = -std::log(1.0 - unit(rng));
      sum += out[i];
    }
    return out / sum;
  }
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> w(p->vertices.size());
    double sum = 0.0;
    for (auto& wi : w) {
      wi = -std::log(1.0 - unit(rng));
      sum += wi;
    }
    Vector out = Vector::Zero(p->vertices[0].size());
    for (std::size_t i = 0; i < w.size(); ++i) out += (w[i] / sum) * p->vertices[i];
    return out;
  }
  const auto& prod = std::get<ProductData>(impl_->data);
  Vector out(prod.dimension);
  Index offset = 0;
  for (const auto& f : prod.factors) {
    const Index d = f.dimension();
    out.segment(offset, d) = f.sample(rng);
    offset += d;
  }
  return out;
}

const Vector& FeasibleSet::box_lower() const {
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) return b->lower;
  throw std::logic_error("box_lower: not a box");
}

const Vector& FeasibleSet::box_upper() const {
  if (const auto* b = std::get_if<BoxData>(&impl_->data)) return b->upper;
  throw std::logic_error("box_upper: not a box");
}

const std::vector<Vector>& FeasibleSet::polytope_vertices() const {
  if (const auto* p = std::get_if<PolytopeData>(&impl_->data)) return p->vertices;
  throw std::logic_error("polytope_vertices: not a vertex polytope");
}

const std::vector<FeasibleSet>& FeasibleSet::factors() const {
  if (const auto* p = std::get_if<ProductData>(&impl_->data)) return p->factors;
  throw std::logic_error("factors: not a product set");
}

}  // namespace vifw
