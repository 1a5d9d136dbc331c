#pragma once

#include <algorithm>
#include <vector>

#include "regdepth/core.hpp"

namespace testing_support {

using regdepth::Dataset;
using regdepth::Index;
using regdepth::Matrix;
using regdepth::Rng;
using regdepth::Vector;

// Simple regression data y = a + b x + noise, intercept column first.
inline Dataset random_line_data(Rng& rng, Index n, double noise = 1.0) {
  Matrix X(n, 2);
  Vector y(n);
  const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
  for (Index i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = rng.uniform(-5, 5);
    y(i) = a + b * X(i, 1) + noise * rng.normal();
  }
  return Dataset::create(X, y, true);
}

inline Dataset random_data(Rng& rng, Index n, Index p, bool intercept, double noise = 1.0) {
  Matrix X(n, p);
  Vector beta(p), y(n);
  for (Index j = 0; j < p; ++j) beta(j) = rng.uniform(-2, 2);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) X(i, j) = rng.uniform(-5, 5);
    if (intercept) X(i, 0) = 1.0;
    y(i) = X.row(i).dot(beta) + noise * rng.normal();
  }
  return Dataset::create(X, y, intercept);
}

inline Dataset line_data(const std::vector<std::pair<double, double>>& pts) {
  const auto n = static_cast<Index>(pts.size());
  Matrix X(n, 2);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = pts[static_cast<std::size_t>(i)].first;
    y(i) = pts[static_cast<std::size_t>(i)].second;
  }
  return Dataset::create(X, y, true);
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Brute-force simple-regression depth count: every pivot among carriers,
// midpoints of adjacent distinct carriers and two sentinels, both tilts.
inline Index rd_bruteforce_count(const Dataset& ds, const Vector& b) {
  const Index n = ds.n();
  std::vector<double> xs;
  for (Index i = 0; i < n; ++i) xs.push_back(ds.X()(i, 1));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> pivots = xs;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) pivots.push_back(0.5 * (xs[k] + xs[k + 1]));
  pivots.push_back(xs.front() - 1);
  pivots.push_back(xs.back() + 1);
  Index best = n;
  for (double v2 : {1.0, -1.0}) {
    for (double v1 : pivots) {
      Index c = 0;
      for (Index i = 0; i < n; ++i) {
        const double r = ds.y()(i) - ds.X().row(i).dot(b);
        const bool zero = std::abs(r) <= 1e-12 * (1 + std::abs(ds.y()(i)));
        if (zero || r * (v2 * ds.X()(i, 1) - v1 * v2) >= 0) ++c;
      }
      best = std::min(best, c);
    }
  }
  return best;
}

}  // namespace testing_support
