#pragma once

// Objective-function depth: D = 1 / (1 + phi(F_R)), R = f(r(beta) / S).

#include <string>

#include "regdepth/core.hpp"

namespace regdepth {

struct Loss {
  enum class Kind { square, abs, check, huber };
  Kind kind = Kind::square;
  double param = 0.0;  ///< tau for check, k for huber

  static Loss square() { return {Kind::square, 0.0}; }
  static Loss absolute() { return {Kind::abs, 0.0}; }
  static Loss check(double tau);
  static Loss huber(double k = 1.345);

  double operator()(double x) const noexcept;
  /// Losses that are even in x; only these give response-scale invariance for s < 0.
  bool even() const noexcept { return kind != Kind::check; }
  std::string name() const;
};

struct Aggregator {
  enum class Kind { mean, quantile };
  Kind kind = Kind::mean;
  double tau = 0.5;

  static Aggregator mean() { return {Kind::mean, 0.5}; }
  static Aggregator quantile(double tau);
  std::string name() const;
};

struct ObjSpec {
  Loss loss = Loss::square();
  Aggregator agg = Aggregator::mean();
  ScaleKind scale = ScaleKind::response;
};

/// phi applied to the empirical law of f(r_i / S). Throws zero_scale when S = 0.
double obj_unfitness(const Dataset& ds, const Coef& b, const ObjSpec& spec);

DepthValue obj_depth(const Dataset& ds, const Coef& b, const ObjSpec& spec);

}  // namespace regdepth
