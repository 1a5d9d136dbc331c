#include <gtest/gtest.h>

#include "regdepth/depth_prd.hpp"
#include "support.hpp"

using namespace regdepth;
using testing_support::vec;

namespace {

Dataset three_points() { return Dataset::create(vec({1, 2, 3}), vec({1, 2, 9}), false); }

// Responses reflected about x'b0, so every ratio multiset is +- paired.
Dataset paired(const Dataset& ds, const Vector& b0) {
  const Index n = ds.n();
  Matrix X(2 * n, ds.p());
  Vector y(2 * n);
  X << ds.X(), ds.X();
  y << ds.y(), Vector(2.0 * (ds.X() * b0) - ds.y());
  return Dataset::create(X, y, ds.has_intercept());
}

}  // namespace

TEST(UfDirection, HandComputed) {
  const auto ds = three_points();
  EXPECT_DOUBLE_EQ(uf_direction(ds, vec({0}), vec({1})), 1.0);
  EXPECT_DOUBLE_EQ(uf_direction(ds, vec({0}), vec({-1})), 1.0);
  EXPECT_DOUBLE_EQ(uf_direction(ds, vec({0}), vec({1}), {TSpec::mean()}), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(uf_direction(ds, vec({0}), vec({1}), {TSpec::quantile(0.9)}), 3.0);
}

TEST(UfDirection, ZeroForExactFit) {
  auto ds = testing_support::line_data({{0, 1}, {1, 3}, {2, 5}});
  Rng rng(2);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(uf_direction(ds, vec({1, 2}), rng.unit_vector(2)), 0.0);
}

TEST(UfDirection, Errors) {
  auto ds = testing_support::line_data({{0, 1}, {0, 3}, {0, 5}});
  try {
    uf_direction(ds, vec({0, 0}), vec({0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_direction);
  }
  try {
    uf(ds, vec({0, 0}), DirectionSet{vec({0, 1}), vec({0, -1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::all_directions_degenerate);
  }
  auto flat = Dataset::create(vec({1, 2, 3}), vec({4, 4, 4}), false);
  try {
    uf_direction(flat, vec({0}), vec({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_scale);
  }
}

TEST(Uf, OneDimensionalExact) {
  const auto ds = three_points();
  EXPECT_DOUBLE_EQ(uf(ds, vec({0}), DirectionPlan{}), 1.0);
  EXPECT_DOUBLE_EQ(prd(ds, vec({0}), DirectionPlan{}).value, 0.5);
}

TEST(Uf, DegenerateDirectionsSkipped) {
  auto ds = testing_support::line_data({{0, 1}, {0, 3}, {2, 5}});
  const DirectionSet dirs{vec({0, 1}), vec({1, 0})};
  EXPECT_DOUBLE_EQ(uf(ds, vec({0, 0}), dirs), uf_direction(ds, vec({0, 0}), vec({1, 0})));
}

TEST(Uf, DominatesEveryDirectionAndGrowsAlongIt) {
  Rng rng(29);
  auto ds = testing_support::random_data(rng, 15, 3, true);
  const auto dirs = sample_directions({}, 3, &ds);
  const Vector b = vec({0.1, 0.2, 0.3});
  const double u = uf(ds, b, dirs);
  for (const auto& v : dirs) EXPECT_GE(u, uf_direction(ds, b, v));
  const Vector v0 = dirs[3];
  const double t0 = std::abs(median(projection_ratios(ds, b, v0)));
  for (double c : {10.0, 1e3, 1e5}) {
    EXPECT_GE(uf(ds, Vector(b + c * v0), dirs), (c - t0) / mad(ds.y()) - 1e-9);
  }
}

TEST(Uf, RefinementMonotone) {
  Rng rng(31);
  auto ds = testing_support::random_data(rng, 12, 3, true);
  const Vector b = vec({1, -1, 0.5});
  DirectionPlan plan;
  plan.include_data_directions = false;
  double prev = -1;
  for (std::size_t k : {2u, 8u, 32u, 128u, 512u}) {
    plan.n_random = k;
    const double u = uf(ds, b, plan);
    EXPECT_GE(u, prev);
    prev = u;
  }
}

TEST(Prd, ClosedFormIdentity) {
  Rng rng(37);
  for (int t = 0; t < 30; ++t) {
    auto ds = testing_support::random_data(rng, 11, 2 + t % 3, true);
    const auto dirs = sample_directions({64, static_cast<std::uint64_t>(t)}, ds.p(), &ds);
    Vector b(ds.p());
    for (auto& x : b) x = rng.normal();
    EXPECT_NEAR(prd_median_closed_form(ds, b, dirs).value, prd(ds, b, dirs).value, 1e-12);
  }
}

TEST(Prd, SymmetricCenterIsOne) {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    auto raw = testing_support::random_data(rng, 7, 1 + t % 3, true);
    auto base = Dataset::create((raw.X() * 8).array().round() / 8, (raw.y() * 8).array().round() / 8, true);
    Vector b0(base.p());
    for (auto& x : b0) x = std::round(rng.uniform(-3, 3));
    auto ds = paired(base, b0);
    EXPECT_EQ(prd(ds, b0, DirectionPlan{}).value, 1.0);
  }
}

TEST(Prd, DecaysAlongRays) {
  Rng rng(43);
  auto ds = testing_support::random_data(rng, 20, 2, true);
  const auto dirs = sample_directions({}, 2, &ds);
  for (int k = 0; k < 5; ++k) {
    const Vector u = dirs[static_cast<std::size_t>(k) * 7];
    double prev = 2;
    for (double c : {10.0, 1e2, 1e3, 1e4, 1e5, 1e6}) {
      const double d = prd(ds, Vector(c * u), dirs).value;
      EXPECT_LT(d, prev);
      prev = d;
    }
    EXPECT_LT(prev, 1e-3);
  }
}

// The median of ratios with different slopes in b is not quasi-convex:
// ratios at (1,1) and (-3,1) have median -2/3, at their midpoint -4/3.
TEST(UfDirection, NotQuasiConvexInTwoDimensions) {
  auto ds = testing_support::line_data({{3, -2}, {-2, 0}, {3, 2}});
  const Vector v = vec({0, 1});
  EXPECT_DOUBLE_EQ(uf_direction(ds, vec({1, 1}), v), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(uf_direction(ds, vec({-3, 1}), v), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(uf_direction(ds, vec({-1, 1}), v), 2.0 / 3.0);
}

TEST(Uf, QuasiConvexInOneDimension) {
  Rng rng(47);
  auto ds = testing_support::random_data(rng, 9, 1, true);
  const auto dirs = sample_directions({}, 1);
  for (int k = 0; k < 200; ++k) {
    const Vector a = vec({rng.normal() * 3}), b = vec({rng.normal() * 3});
    const double lam = rng.uniform();
    EXPECT_LE(uf(ds, Vector(lam * a + (1 - lam) * b), dirs), std::max(uf(ds, a, dirs), uf(ds, b, dirs)) + 1e-12);
  }
}

TEST(My93, HandComputed) {
  const auto ds = three_points();
  EXPECT_DOUBLE_EQ(my93_a(ds, vec({0}), vec({1})), 1.0);
  EXPECT_DOUBLE_EQ(my93_sup(ds, vec({0}), sample_directions({}, 1)), 1.0);
  auto exact = Dataset::create(vec({1, 2, 3}), vec({2, 4, 6}), false);
  EXPECT_EQ(my93_a(exact, vec({2}), vec({1})), 0.0);
}

TEST(My93, ScalesWithResponse) {
  const auto ds = three_points();
  auto scaled = Dataset::create(ds.X(), 3.0 * ds.y(), false);
  const auto dirs = sample_directions({}, 1);
  for (double b : {-1.0, 0.0, 0.5, 2.0}) {
    EXPECT_NEAR(my93_sup(scaled, vec({3 * b}), dirs), 3.0 * my93_sup(ds, vec({b}), dirs), 1e-12);
  }
}
