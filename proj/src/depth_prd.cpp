#include "regdepth/depth_prd.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "regdepth/parallel.hpp"

namespace regdepth {

namespace {

// -1 marks a degenerate direction in the max-reduction.
constexpr double kSkipped = -1.0;

double max_fold(double a, double b) { return std::max(a, b); }

void check_dims(const Dataset& ds, const Vector& v) {
  if (v.size() != ds.p()) throw Error(ErrorCode::dimension_mismatch, "direction length differs from p");
}

template <class PerDirection>
double sup_over(const DirectionSet& dirs, PerDirection f) {
  if (dirs.empty()) throw Error(ErrorCode::invalid_argument, "empty direction set");
  const double best = parallel_reduce(
      dirs.size(), kSkipped,
      [&](std::size_t begin, std::size_t end) {
        double local = kSkipped;
        for (std::size_t k = begin; k < end; ++k) {
          try {
            local = std::max(local, f(dirs[k]));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate_direction) throw;
          }
        }
        return local;
      },
      max_fold);
  if (best < 0.0) throw Error(ErrorCode::all_directions_degenerate, "every direction has degenerate projections");
  return best;
}

}  // namespace

TSpec TSpec::quantile(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorCode::invalid_argument, "quantile level must lie in (0,1)");
  return {Kind::quantile, tau};
}

std::string TSpec::name() const {
  switch (kind) {
    case Kind::median: return "median";
    case Kind::quantile: return "quantile";
    case Kind::mean: return "mean";
  }
  return "?";
}

Vector projection_ratios(const Dataset& ds, const Coef& b, const Vector& v) {
  check_dims(ds, v);
  const Vector r = residuals(ds, b);
  const Vector proj = ds.X() * v;
  const double vn = v.norm();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(ds.n()));
  for (Index i = 0; i < ds.n(); ++i) {
    const double gate = 1e-12 * (1.0 + ds.X().row(i).norm()) * vn;
    if (std::abs(proj(i)) > gate) out.push_back(r(i) / proj(i));
  }
  if (out.empty()) throw Error(ErrorCode::degenerate_direction, "all projections x_i'v vanish");
  return Eigen::Map<const Vector>(out.data(), static_cast<Index>(out.size()));
}

double apply_t(const Vector& sample, const TSpec& t) {
  switch (t.kind) {
    case TSpec::Kind::median: return median(sample);
    case TSpec::Kind::quantile: return quantile(sample, t.tau);
    case TSpec::Kind::mean:
      return std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
  }
  return 0.0;
}

double uf_direction(const Dataset& ds, const Coef& b, const Vector& v, const PrdSpec& spec) {
  const double s = scale_of(ds, residuals(ds, b), spec.scale);
  return std::abs(apply_t(projection_ratios(ds, b, v), spec.t)) / s;
}

double uf(const Dataset& ds, const Coef& b, const DirectionSet& dirs, const PrdSpec& spec) {
  const double s = scale_of(ds, residuals(ds, b), spec.scale);
  return sup_over(dirs, [&](const Vector& v) { return std::abs(apply_t(projection_ratios(ds, b, v), spec.t)) / s; });
}

double uf(const Dataset& ds, const Coef& b, const DirectionPlan& plan, const PrdSpec& spec) {
  return uf(ds, b, sample_directions(plan, ds.p(), &ds), spec);
}

DepthValue prd(const Dataset& ds, const Coef& b, const DirectionSet& dirs, const PrdSpec& spec) {
  return DepthValue::real(1.0 / (1.0 + uf(ds, b, dirs, spec)));
}

DepthValue prd(const Dataset& ds, const Coef& b, const DirectionPlan& plan, const PrdSpec& spec) {
  return DepthValue::real(1.0 / (1.0 + uf(ds, b, plan, spec)));
}

DepthValue prd_median_closed_form(const Dataset& ds, const Coef& b, const DirectionSet& dirs, ScaleKind scale) {
  const double s = scale_of(ds, residuals(ds, b), scale);
  double best = 2.0;
  bool any = false;
  for (const auto& v : dirs) {
    try {
      const double m = std::abs(median(projection_ratios(ds, b, v)));
      best = std::min(best, s / (s + m));
      any = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::degenerate_direction) throw;
    }
  }
  if (!any) throw Error(ErrorCode::all_directions_degenerate, "every direction has degenerate projections");
  return DepthValue::real(best);
}

double my93_a(const Dataset& ds, const Coef& b, const Vector& v, const TSpec& t) {
  const Vector ratios = projection_ratios(ds, b, v);
  const double sx = mad(Vector(ds.X() * v));
  if (!(sx > 0.0)) throw Error(ErrorCode::zero_scale, "MAD of the projected carriers is zero");
  return std::abs(apply_t(ratios, t)) * sx;
}

double my93_sup(const Dataset& ds, const Coef& b, const DirectionSet& dirs, const TSpec& t) {
  return sup_over(dirs, [&](const Vector& v) { return my93_a(ds, b, v, t); });
}

}  // namespace regdepth
