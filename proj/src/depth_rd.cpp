#include "regdepth/depth_rd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "regdepth/parallel.hpp"
#include "sweep.hpp"

namespace regdepth {

namespace {

constexpr Index kNone = std::numeric_limits<Index>::max();

Index min_fold(Index a, Index b) { return std::min(a, b); }

std::vector<int> residual_signs(const Dataset& ds, const Vector& r, ZeroTolerance tol) {
  std::vector<int> s(static_cast<std::size_t>(r.size()));
  for (Index i = 0; i < r.size(); ++i) s[static_cast<std::size_t>(i)] = tol.sign(r(i), ds.y()(i));
  return s;
}

// sign of w_i'd with the projection gate |w'd| <= 1e-12 (1 + |w|) |d|
int projection_sign(const Dataset& ds, Index i, const Vector& d, double dnorm) {
  double z = 0.0;
  for (Index j = 0; j < ds.p(); ++j) z += ds.X()(i, j) * d(j);
  if (std::abs(z) <= 1e-12 * (1.0 + ds.X().row(i).norm()) * dnorm) return 0;
  return z > 0 ? 1 : -1;
}

void require_intercept(const Dataset& ds, const char* who) {
  if (!ds.has_intercept()) throw Error(ErrorCode::wrong_shape, std::string(who) + " needs an intercept column");
}

}  // namespace

DepthValue rd_exact_simple(const Dataset& ds, const Coef& b, ZeroTolerance tol) {
  if (!ds.has_intercept() || ds.p() != 2) {
    throw Error(ErrorCode::wrong_shape, "exact regression depth needs p = 2 with an intercept column");
  }
  const Vector r = residuals(ds, b);
  const auto s = residual_signs(ds, r, tol);
  const auto groups = detail::group_by_position(ds.carrier(), s);
  return DepthValue::ratio(detail::closed_sweep_min(groups), ds.n());
}

DepthValue rd_directions(const Dataset& ds, const Coef& b, const DirectionSet& dirs, ZeroTolerance tol) {
  if (dirs.empty()) throw Error(ErrorCode::invalid_argument, "empty direction set");
  const Vector r = residuals(ds, b);
  const auto s = residual_signs(ds, r, tol);
  const Index best = parallel_reduce(
      dirs.size(), kNone,
      [&](std::size_t begin, std::size_t end) {
        Index local = kNone;
        for (std::size_t k = begin; k < end; ++k) {
          const Vector& d = dirs[k];
          if (d.size() != ds.p()) throw Error(ErrorCode::dimension_mismatch, "direction dimension differs from p");
          const double dn = d.norm();
          Index count = 0;
          for (Index i = 0; i < ds.n(); ++i) {
            const int si = s[static_cast<std::size_t>(i)];
            if (si == 0 || si * projection_sign(ds, i, d, dn) >= 0) ++count;
          }
          local = std::min(local, count);
        }
        return local;
      },
      min_fold);
  return DepthValue::ratio(best, ds.n());
}

DepthValue rd_sampled(const Dataset& ds, const Coef& b, const DirectionPlan& plan, ZeroTolerance tol) {
  return rd_directions(ds, b, sample_directions(plan, ds.p(), &ds), tol);
}

DepthValue rd_bai_he_on(const Dataset& ds, const Coef& b, const DirectionSet& dirs, ZeroTolerance tol) {
  require_intercept(ds, "Bai-He depth");
  if (dirs.empty()) throw Error(ErrorCode::invalid_argument, "empty direction set");
  const Vector r = residuals(ds, b);
  const auto s = residual_signs(ds, r, tol);
  const Index best = parallel_reduce(
      dirs.size(), kNone,
      [&](std::size_t begin, std::size_t end) {
        Index local = kNone;
        for (std::size_t k = begin; k < end; ++k) {
          const Vector& d = dirs[k];
          if (d.size() != ds.p()) throw Error(ErrorCode::dimension_mismatch, "direction dimension differs from p");
          const double dn = d.norm();
          Index pos = 0, neg = 0;
          for (Index i = 0; i < ds.n(); ++i) {
            const int prod = s[static_cast<std::size_t>(i)] * projection_sign(ds, i, d, dn);
            pos += prod > 0;
            neg += prod < 0;
          }
          local = std::min(local, std::min(pos, neg));
        }
        return local;
      },
      min_fold);
  return DepthValue::ratio(best, ds.n());
}

DepthValue rd_bai_he(const Dataset& ds, const Coef& b, const DirectionPlan& plan, ZeroTolerance tol) {
  require_intercept(ds, "Bai-He depth");
  const Index p = ds.p();
  const Vector r = residuals(ds, b);
  const auto s = residual_signs(ds, r, tol);
  if (p == 1) {
    // no carriers: the projection is constant, every v gives the full split
    Index pos = 0, neg = 0;
    for (int si : s) {
      pos += si > 0;
      neg += si < 0;
    }
    return DepthValue::ratio(std::min(pos, neg), ds.n());
  }
  // carrier directions u, deduplicated after normalization
  std::vector<Vector> us;
  for (const Vector& d : sample_directions(plan, p, &ds)) {
    Vector u = d.tail(p - 1);
    const double un = u.norm();
    if (!(un > 0.0)) continue;
    u /= un;
    us.push_back(u);
  }
  std::sort(us.begin(), us.end(), [](const Vector& a, const Vector& c) {
    return std::lexicographical_compare(a.begin(), a.end(), c.begin(), c.end());
  });
  us.erase(std::unique(us.begin(), us.end()), us.end());
  if (us.empty()) throw Error(ErrorCode::invalid_argument, "no usable carrier direction");

  const Matrix carriers = ds.X().rightCols(p - 1);
  const Index best = parallel_reduce(
      us.size(), kNone,
      [&](std::size_t begin, std::size_t end) {
        Index local = kNone;
        for (std::size_t k = begin; k < end; ++k) {
          const Vector z = carriers * us[k];
          local = std::min(local, detail::strict_sweep_min(detail::group_by_position(z, s)));
        }
        return local;
      },
      min_fold);
  return DepthValue::ratio(best, ds.n());
}

DepthValue rd_competitor_bound(const Dataset& ds, const Coef& b, std::size_t n_competitors, std::uint64_t seed,
                               ZeroTolerance tol) {
  const Index n = ds.n(), p = ds.p();
  const Vector r = residuals(ds, b);
  if (n_competitors == 0) throw Error(ErrorCode::invalid_argument, "need at least one competitor");

  struct Tilt {
    Vector u;
    double t;
  };
  std::vector<Tilt> tilts;
  tilts.reserve(n_competitors);
  Rng rng(seed);
  Vector absr = r.cwiseAbs();
  const double rscale = 1e-300 + median(absr);
  for (std::size_t k = 0; k < n_competitors; ++k) {
    Vector u;
    if (p == 1) {
      u = Vector::Ones(1);
    } else if (p - 1 > n || k % 2 == 1) {
      u = rng.unit_vector(p);
    } else {
      std::vector<Index> pick;
      while (static_cast<Index>(pick.size()) < p - 1) {
        const auto c = static_cast<Index>(rng.below(static_cast<std::size_t>(n)));
        if (std::find(pick.begin(), pick.end(), c) == pick.end()) pick.push_back(c);
      }
      Matrix rows(p - 1, p);
      for (Index j = 0; j < p - 1; ++j) rows.row(j) = ds.X().row(pick[static_cast<std::size_t>(j)]);
      const auto o = orthogonal_direction(rows);
      u = o ? *o : rng.unit_vector(p);
    }
    const Vector proj = (ds.X() * u).cwiseAbs();
    const double pscale = 1e-300 + median(proj);
    const double t = rng.cauchy() * std::pow(10.0, -6.0 * rng.uniform()) * rscale / pscale;
    tilts.push_back({std::move(u), t});
  }

  const Index best = parallel_reduce(
      tilts.size(), kNone,
      [&](std::size_t begin, std::size_t end) {
        Index local = kNone;
        for (std::size_t k = begin; k < end; ++k) {
          const Tilt& tl = tilts[k];
          Index count = 0;
          for (Index i = 0; i < n; ++i) {
            double z = 0.0;
            for (Index j = 0; j < p; ++j) z += ds.X()(i, j) * tl.u(j);
            const bool on_hyperline = std::abs(z) <= 1e-12 * (1.0 + ds.X().row(i).norm());
            if (tol.is_zero(r(i), ds.y()(i)) || on_hyperline || std::abs(r(i)) <= std::abs(r(i) - tl.t * z)) ++count;
          }
          local = std::min(local, count);
        }
        return local;
      },
      min_fold);
  return DepthValue::ratio(best, n);
}

}  // namespace regdepth
