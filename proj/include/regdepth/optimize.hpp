#pragma once

#include <cstddef>
#include <functional>

#include "regdepth/core.hpp"

namespace regdepth {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double tol = 1e-10;            ///< stop when diameter < tol (1 + |best|)
  std::size_t max_iter = 10000;  ///< per run
  int restarts = 5;
};

struct MinimizeResult {
  Coef x;
  double f = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free simplex descent from `start`. The initial simplex steps
/// 5% along each nonzero coordinate (0.00025 for zero ones), so the path
/// scales with the problem. After convergence the simplex is rebuilt around
/// the best vertex, at most `restarts` times or until a restart stalls.
MinimizeResult nelder_mead(const std::function<double(const Coef&)>& f, const Coef& start,
                           const NelderMeadOptions& opts = {});

}  // namespace regdepth
