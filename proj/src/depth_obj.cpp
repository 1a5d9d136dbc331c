#include "regdepth/depth_obj.hpp"

#include <cmath>
#include <numeric>

namespace regdepth {

Loss Loss::check(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorCode::invalid_argument, "check loss tau must lie in (0,1)");
  return {Kind::check, tau};
}

Loss Loss::huber(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::invalid_argument, "huber k must be positive");
  return {Kind::huber, k};
}

double Loss::operator()(double x) const noexcept {
  switch (kind) {
    case Kind::square: return x * x;
    case Kind::abs: return std::abs(x);
    case Kind::check: return x * (param - (x < 0.0 ? 1.0 : 0.0));
    case Kind::huber: {
      const double a = std::abs(x);
      return a <= param ? 0.5 * x * x : param * (a - 0.5 * param);
    }
  }
  return 0.0;
}

std::string Loss::name() const {
  switch (kind) {
    case Kind::square: return "square";
    case Kind::abs: return "abs";
    case Kind::check: return "check";
    case Kind::huber: return "huber";
  }
  return "?";
}

Aggregator Aggregator::quantile(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorCode::invalid_argument, "aggregator tau must lie in (0,1)");
  return {Kind::quantile, tau};
}

std::string Aggregator::name() const { return kind == Kind::mean ? "mean" : "quantile"; }

double obj_unfitness(const Dataset& ds, const Coef& b, const ObjSpec& spec) {
  const Vector r = residuals(ds, b);
  const double s = scale_of(ds, r, spec.scale);
  Vector R(r.size());
  for (Index i = 0; i < r.size(); ++i) R(i) = spec.loss(r(i) / s);
  if (spec.agg.kind == Aggregator::Kind::mean) {
    return std::accumulate(R.begin(), R.end(), 0.0) / static_cast<double>(R.size());
  }
  return quantile(R, spec.agg.tau);
}

DepthValue obj_depth(const Dataset& ds, const Coef& b, const ObjSpec& spec) {
  return DepthValue::real(1.0 / (1.0 + obj_unfitness(ds, b, spec)));
}

}  // namespace regdepth
