#include "regdepth/depth_dc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "regdepth/parallel.hpp"

namespace regdepth {

namespace {

constexpr Index kNone = std::numeric_limits<Index>::max();

Index min_fold(Index a, Index b) { return std::min(a, b); }

void require_location_dim(const Matrix& sample, const Vector& x) {
  if (sample.cols() != 1 && sample.cols() != 2) {
    throw Error(ErrorCode::unsupported_dimension, "location depth supports dimension 1 or 2 only");
  }
  if (x.size() != sample.cols()) throw Error(ErrorCode::dimension_mismatch, "point dimension differs from sample");
  if (sample.rows() < 1) throw Error(ErrorCode::invalid_argument, "empty sample");
}

}  // namespace

DepthValue dc_exact(const Dataset& ds, const Coef& b, ZeroTolerance tol) {
  if (!ds.has_intercept()) throw Error(ErrorCode::wrong_shape, "Carrizosa depth needs an intercept column");
  const Vector r = residuals(ds, b);
  Index k = 0;
  for (Index i = 0; i < ds.n(); ++i) k += tol.is_zero(r(i), ds.y()(i));
  return DepthValue::ratio(k, ds.n());
}

DepthValue dc_sampled(const Dataset& ds, const Coef& b, std::size_t n_competitors, std::uint64_t seed,
                      ZeroTolerance tol) {
  if (!ds.has_intercept()) throw Error(ErrorCode::wrong_shape, "Carrizosa depth needs an intercept column");
  if (n_competitors == 0) throw Error(ErrorCode::invalid_argument, "need at least one competitor");
  const Index n = ds.n(), p = ds.p();
  const Vector r = residuals(ds, b);
  const double rscale = 1.0 + median(Vector(r.cwiseAbs()));

  // Kinds cycle through parallel offsets, tilts about a data hyperline,
  // elemental fits and tilts about a random hyperline.
  // Every competitor is stored as the change of fitted values alpha - b
  // along the rows, delta_i = w_i'(alpha - b), so r_i(alpha) = r_i - delta_i.
  std::vector<Vector> shifts;
  shifts.reserve(n_competitors);
  Rng rng(seed);
  for (int k = 0; k <= 8 && shifts.size() < n_competitors; ++k) {
    for (double sign : {-1.0, 1.0}) {
      if (shifts.size() < n_competitors) shifts.push_back(Vector::Constant(n, sign * rscale * std::pow(10.0, -k)));
    }
  }
  while (shifts.size() < n_competitors) {
    const std::size_t kind = shifts.size() % 4;
    Vector delta;
    if (kind == 3) {
      const double t = rng.cauchy() * std::pow(10.0, -6.0 * rng.uniform()) * rscale;
      delta = t * (ds.X() * rng.unit_vector(p));
    } else if (kind == 0) {
      const double off = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rscale * std::pow(10.0, -8.0 * rng.uniform());
      delta = Vector::Constant(n, off);
    } else if (kind == 1 && p > 1 && p - 1 <= n) {
      std::vector<Index> pick;
      while (static_cast<Index>(pick.size()) < p - 1) {
        const auto c = static_cast<Index>(rng.below(static_cast<std::size_t>(n)));
        if (std::find(pick.begin(), pick.end(), c) == pick.end()) pick.push_back(c);
      }
      Matrix rows(p - 1, p);
      for (Index j = 0; j < p - 1; ++j) rows.row(j) = ds.X().row(pick[static_cast<std::size_t>(j)]);
      const auto u = orthogonal_direction(rows);
      const Vector dir = u ? *u : rng.unit_vector(p);
      const double t = rng.cauchy() * std::pow(10.0, -6.0 * rng.uniform()) * rscale;
      delta = t * (ds.X() * dir);
      for (Index j = 0; j < p - 1 && u; ++j) delta(pick[static_cast<std::size_t>(j)]) = 0.0;
    } else if (p <= n) {
      std::vector<Index> pick;
      while (static_cast<Index>(pick.size()) < p) {
        const auto c = static_cast<Index>(rng.below(static_cast<std::size_t>(n)));
        if (std::find(pick.begin(), pick.end(), c) == pick.end()) pick.push_back(c);
      }
      const auto alpha = elemental_fit(ds, pick);
      if (!alpha) {
        delta = Vector::Constant(n, rscale * rng.normal());
      } else {
        delta = r - residuals(ds, *alpha);
      }
    } else {
      delta = Vector::Constant(n, rscale * rng.normal());
    }
    shifts.push_back(std::move(delta));
  }

  const Index best = parallel_reduce(
      shifts.size(), kNone,
      [&](std::size_t begin, std::size_t end) {
        Index local = kNone;
        for (std::size_t k = begin; k < end; ++k) {
          Index count = 0;
          for (Index i = 0; i < n; ++i) {
            if (tol.is_zero(r(i), ds.y()(i)) || std::abs(r(i)) <= std::abs(r(i) - shifts[k](i))) ++count;
          }
          local = std::min(local, count);
        }
        return local;
      },
      min_fold);
  return DepthValue::ratio(best, n);
}

DepthValue hd_location(const Matrix& sample, const Vector& x) {
  require_location_dim(sample, x);
  const Index n = sample.rows();
  if (sample.cols() == 1) {
    Index le = 0, ge = 0;
    for (Index i = 0; i < n; ++i) {
      le += sample(i, 0) <= x(0);
      ge += sample(i, 0) >= x(0);
    }
    return DepthValue::ratio(std::min(le, ge), n);
  }
  // Closed halfplanes {a : u'(a - x) >= 0}; the count only changes when the
  // boundary sweeps a point, i.e. at u orthogonal to a_i - x.
  std::vector<double> crit;
  for (Index i = 0; i < n; ++i) {
    const double dx = sample(i, 0) - x(0), dy = sample(i, 1) - x(1);
    if (dx == 0.0 && dy == 0.0) continue;
    const double a = std::atan2(dy, dx);
    for (double c : {a + std::numbers::pi / 2, a - std::numbers::pi / 2}) {
      double m = std::fmod(c, 2 * std::numbers::pi);
      if (m < 0) m += 2 * std::numbers::pi;
      crit.push_back(m);
    }
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  std::vector<double> cand = {0.0, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2};
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const double next = k + 1 < crit.size() ? crit[k + 1] : crit.front() + 2 * std::numbers::pi;
    cand.push_back(crit[k]);
    cand.push_back(0.5 * (crit[k] + next));
  }
  Index best = n;
  for (double a : cand) {
    const double ux = std::cos(a), uy = std::sin(a);
    Index count = 0;
    for (Index i = 0; i < n; ++i) {
      const double dx = sample(i, 0) - x(0), dy = sample(i, 1) - x(1);
      const double proj = ux * dx + uy * dy;
      count += proj >= -1e-12 * std::hypot(dx, dy);
    }
    best = std::min(best, count);
  }
  return DepthValue::ratio(best, n);
}

DepthValue nd_location_sampled(const Matrix& sample, const Vector& x, std::size_t n_competitors,
                               std::uint64_t seed) {
  require_location_dim(sample, x);
  if (n_competitors == 0) throw Error(ErrorCode::invalid_argument, "need at least one competitor");
  const Index n = sample.rows(), d = sample.cols();
  Vector lo = sample.colwise().minCoeff().transpose().cwiseMin(x);
  Vector hi = sample.colwise().maxCoeff().transpose().cwiseMax(x);
  const double span = std::max(1e-12, (hi - lo).maxCoeff());
  lo.array() -= 0.1 * span;
  hi.array() += 0.1 * span;

  std::vector<Vector> comps;
  comps.reserve(n_competitors);
  Rng rng(seed);
  for (std::size_t k = 0; k < n_competitors; ++k) {
    Vector y(d);
    if (k % 2 == 0) {
      for (Index j = 0; j < d; ++j) y(j) = rng.uniform(lo(j), hi(j));
    } else {
      y = x + span * std::pow(10.0, -6.0 * rng.uniform()) * rng.unit_vector(d);
    }
    comps.push_back(std::move(y));
  }
  const Index best = parallel_reduce(
      comps.size(), kNone,
      [&](std::size_t begin, std::size_t end) {
        Index local = kNone;
        for (std::size_t k = begin; k < end; ++k) {
          Index count = 0;
          for (Index i = 0; i < n; ++i) {
            const Vector a = sample.row(i).transpose();
            count += (comps[k] - a).squaredNorm() >= (x - a).squaredNorm();
          }
          local = std::min(local, count);
        }
        return local;
      },
      min_fold);
  return DepthValue::ratio(best, n);
}

}  // namespace regdepth
