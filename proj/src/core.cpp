#include "regdepth/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace regdepth {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::zero_scale: return "zero_scale";
    case ErrorCode::degenerate_direction: return "degenerate_direction";
    case ErrorCode::all_directions_degenerate: return "all_directions_degenerate";
    case ErrorCode::wrong_shape: return "wrong_shape";
    case ErrorCode::rank_deficient: return "rank_deficient";
    case ErrorCode::unsupported_dimension: return "unsupported_dimension";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

Dataset Dataset::create(Matrix X, Vector y, bool has_intercept) {
  if (X.rows() < 1 || X.cols() < 1) {
    throw Error(ErrorCode::invalid_argument, "dataset needs n >= 1 and p >= 1");
  }
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "design has " + std::to_string(X.rows()) + " rows but response has " +
                    std::to_string(y.size()) + " entries");
  }
  if (!X.allFinite() || !y.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "dataset entries must be finite");
  }
  if (has_intercept && (X.col(0).array() != 1.0).any()) {
    throw Error(ErrorCode::invalid_argument, "intercept column must be identically 1");
  }
  return Dataset(std::move(X), std::move(y), has_intercept);
}

Vector Dataset::carrier() const {
  if (!has_intercept_ || p() != 2) {
    throw Error(ErrorCode::wrong_shape, "carrier() needs p = 2 with an intercept column");
  }
  return X_.col(1);
}

DepthValue DepthValue::ratio(Index k, Index n) {
  DepthValue d;
  d.count = k;
  d.total = n;
  d.value = n > 0 ? static_cast<double>(k) / static_cast<double>(n) : 0.0;
  return d;
}

DepthValue DepthValue::real(double v) {
  DepthValue d;
  d.value = v;
  return d;
}

bool ZeroTolerance::is_zero(double r, double y) const noexcept {
  return std::abs(r) <= abs * (1.0 + std::abs(y));
}

int ZeroTolerance::sign(double r, double y) const noexcept {
  if (is_zero(r, y)) return 0;
  return r > 0 ? 1 : -1;
}

Vector residuals(const Dataset& ds, const Coef& b) {
  if (b.size() != ds.p()) {
    throw Error(ErrorCode::dimension_mismatch,
                "coefficient has dimension " + std::to_string(b.size()) + ", expected p = " +
                    std::to_string(ds.p()));
  }
  const Matrix& X = ds.X();
  Vector r(ds.n());
  for (Index i = 0; i < ds.n(); ++i) {
    double fit = 0.0;
    for (Index j = 0; j < ds.p(); ++j) fit += X(i, j) * b(j);
    r(i) = ds.y()(i) - fit;
  }
  return r;
}

namespace {

void require_nonempty(std::span<const double> v, const char* what) {
  if (v.empty()) throw Error(ErrorCode::invalid_argument, std::string(what) + " of an empty sample");
}

// k-th order statistic (0-based) of a scratch copy.
double order_stat(std::vector<double>& w, std::size_t k) {
  std::nth_element(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  return w[k];
}

}  // namespace

double median(std::span<const double> v) {
  require_nonempty(v, "median");
  std::vector<double> w(v.begin(), v.end());
  const std::size_t n = w.size();
  const double upper = order_stat(w, n / 2);
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n / 2));
  return lower + (upper - lower) / 2.0;
}

double mad(std::span<const double> v) {
  require_nonempty(v, "mad");
  const double m = median(v);
  std::vector<double> dev(v.size());
  std::transform(v.begin(), v.end(), dev.begin(), [m](double x) { return std::abs(x - m); });
  return median(dev);
}

double quantile(std::span<const double> v, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "quantile level must lie in (0,1)");
  }
  require_nonempty(v, "quantile");
  if (tau == 0.5) return median(v);
  const double n = static_cast<double>(v.size());
  auto k = static_cast<std::size_t>(std::ceil(n * tau - 1e-9));
  k = std::clamp<std::size_t>(k, 1, v.size());
  std::vector<double> w(v.begin(), v.end());
  return order_stat(w, k - 1);
}

double scale_of(const Dataset& ds, const Vector& r, ScaleKind kind) {
  const double s = kind == ScaleKind::response ? mad(ds.y()) : mad(r);
  if (!(s > 0.0)) {
    throw Error(ErrorCode::zero_scale,
                kind == ScaleKind::response ? "MAD of the response is zero; depth undefined"
                                            : "MAD of the residuals is zero; depth undefined");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Rng

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (spare_) {
    const double s = *spare_;
    spare_.reset();
    return s;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  return u * f;
}

double Rng::cauchy() {
  const double u = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  return std::tan(std::numbers::pi * (u - 0.5));
}

std::size_t Rng::below(std::size_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

Vector Rng::unit_vector(Index p) {
  Vector v(p);
  double norm = 0.0;
  do {
    for (Index j = 0; j < p; ++j) v(j) = normal();
    norm = v.norm();
  } while (norm < 1e-8);
  return v / norm;
}

// ---------------------------------------------------------------------------
// Subsets and elemental geometry

std::size_t choose(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t c = 1;
  for (Index i = 1; i <= k; ++i) {
    const auto num = static_cast<std::size_t>(n - k + i);
    if (c > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
    c = c * num / static_cast<std::size_t>(i);
  }
  return c;
}

std::vector<std::vector<Index>> index_subsets(Index n, Index k, std::size_t cap, std::uint64_t seed) {
  std::vector<std::vector<Index>> out;
  if (k < 1 || k > n || cap == 0) return out;
  if (choose(n, k) <= cap) {
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index j = 0; j < k; ++j) idx[static_cast<std::size_t>(j)] = j;
    while (true) {
      out.push_back(idx);
      Index j = k - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] == n - k + j) --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (Index m = j + 1; m < k; ++m) idx[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(m - 1)] + 1;
    }
    return out;
  }
  Rng rng(seed);
  std::set<std::vector<Index>> seen;
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (std::size_t guard = 0; out.size() < cap && guard < cap * 50; ++guard) {
    for (Index j = 0; j < n; ++j) pool[static_cast<std::size_t>(j)] = j;
    for (Index j = 0; j < k; ++j) {
      const auto pick = static_cast<std::size_t>(j) + rng.below(static_cast<std::size_t>(n - j));
      std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
    }
    std::vector<Index> s(pool.begin(), pool.begin() + k);
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

std::optional<Vector> orthogonal_direction(const Matrix& rows) {
  const Index p = rows.cols();
  if (rows.rows() != p - 1) return std::nullopt;
  if (p == 1) return Vector::Ones(1);
  Eigen::FullPivLU<Matrix> lu(rows);
  if (lu.rank() < p - 1) return std::nullopt;
  Matrix ker = lu.kernel();
  if (ker.cols() != 1) return std::nullopt;
  Vector v = ker.col(0);
  const double norm = v.norm();
  if (!(norm > 0.0)) return std::nullopt;
  return Vector(v / norm);
}

std::optional<Coef> elemental_fit(const Dataset& ds, std::span<const Index> rows) {
  const Index p = ds.p();
  if (static_cast<Index>(rows.size()) != p) return std::nullopt;
  Matrix A(p, p);
  Vector rhs(p);
  for (Index k = 0; k < p; ++k) {
    A.row(k) = ds.X().row(rows[static_cast<std::size_t>(k)]);
    rhs(k) = ds.y()(rows[static_cast<std::size_t>(k)]);
  }
  Eigen::FullPivLU<Matrix> lu(A);
  if (!lu.isInvertible()) return std::nullopt;
  Coef b = lu.solve(rhs);
  if (!b.allFinite()) return std::nullopt;
  return b;
}

// ---------------------------------------------------------------------------
// Directions

namespace {

void push_pair(DirectionSet& out, const Vector& v) {
  out.push_back(v);
  out.push_back(-v);
}

// p = 2: every cell and vertex of the arrangement {v : w_i'v = 0} on the
// unit circle, one representative per antipodal pair.
void arrangement_directions_2d(const Dataset& ds, DirectionSet& out) {
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(ds.n()));
  for (Index i = 0; i < ds.n(); ++i) {
    const double w1 = ds.X()(i, 0), w2 = ds.X()(i, 1);
    if (w1 == 0.0 && w2 == 0.0) continue;
    double ux = -w2, uy = w1;
    if (uy < 0.0 || (uy == 0.0 && ux < 0.0)) {
      ux = -ux;
      uy = -uy;
    }
    double a = std::atan2(uy, ux);
    if (a >= std::numbers::pi) a = 0.0;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  if (angles.empty()) {
    push_pair(out, Vector::Unit(2, 0));
    push_pair(out, Vector::Unit(2, 1));
    return;
  }
  auto at = [](double a) {
    Vector v(2);
    v << std::cos(a), std::sin(a);
    return v;
  };
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double next = k + 1 < angles.size() ? angles[k + 1] : angles.front() + std::numbers::pi;
    push_pair(out, at(angles[k]));
    push_pair(out, at(0.5 * (angles[k] + next)));
  }
}

// p >= 3: vertices orthogonal to (p-1)-subsets of rows, plus a point in each
// adjacent cell obtained by stepping along the dual basis of the subset.
void vertex_directions(const DirectionPlan& plan, const Dataset& ds, DirectionSet& out) {
  const Index p = ds.p();
  const auto subsets = index_subsets(ds.n(), p - 1, plan.data_cap, plan.seed ^ 0x9e3779b97f4a7c15ULL);
  const bool neighbours = p <= 6;
  const int n_sign = neighbours ? (1 << (p - 1)) : 0;
  for (const auto& s : subsets) {
    Matrix rows(p - 1, p);
    for (Index k = 0; k < p - 1; ++k) rows.row(k) = ds.X().row(s[static_cast<std::size_t>(k)]);
    const auto v0 = orthogonal_direction(rows);
    if (!v0) continue;
    push_pair(out, *v0);
    if (!neighbours) continue;
    // dual basis: rows * dual.col(j) = e_j, dual columns orthogonal to v0
    Matrix dual = rows.completeOrthogonalDecomposition().pseudoInverse();
    for (Index j = 0; j < p - 1; ++j) {
      const double nj = dual.col(j).norm();
      if (nj > 0.0) dual.col(j) /= nj;
    }
    for (int mask = 0; mask < n_sign; ++mask) {
      Vector step = Vector::Zero(p);
      for (Index j = 0; j < p - 1; ++j) step += ((mask >> j) & 1 ? 1.0 : -1.0) * dual.col(j);
      Vector v = *v0 + 1e-6 * step;
      push_pair(out, v / v.norm());
    }
  }
}

}  // namespace

DirectionSet sample_directions(const DirectionPlan& plan, Index p, const Dataset* ds) {
  if (p < 1) throw Error(ErrorCode::invalid_argument, "direction dimension must be >= 1");
  DirectionSet out;
  if (p == 1) {
    out.push_back(Vector::Constant(1, 1.0));
    out.push_back(Vector::Constant(1, -1.0));
    return out;
  }
  Rng rng(plan.seed);
  out.reserve(2 * plan.n_random);
  for (std::size_t k = 0; k < plan.n_random; ++k) push_pair(out, rng.unit_vector(p));
  if (plan.include_data_directions && ds != nullptr) {
    if (ds->p() != p) throw Error(ErrorCode::dimension_mismatch, "dataset dimension differs from plan dimension");
    if (p == 2) {
      arrangement_directions_2d(*ds, out);
    } else {
      vertex_directions(plan, *ds, out);
    }
  }
  return out;
}

}  // namespace regdepth
