#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "regdepth/depth_dc.hpp"
#include "support.hpp"

using namespace regdepth;
using testing_support::line_data;
using testing_support::vec;

namespace {

// Two observations on y = 0 and two on y = x, none on both lines.
Dataset two_line_data() { return line_data({{1, 0}, {2, 0}, {3, 3}, {4, 4}}); }

Matrix points(std::initializer_list<std::pair<double, double>> pts) {
  Matrix m(static_cast<Index>(pts.size()), 2);
  Index i = 0;
  for (auto [a, b] : pts) {
    m(i, 0) = a;
    m(i, 1) = b;
    ++i;
  }
  return m;
}

// Closed halfplanes through x whose boundary sits just next to every
// critical angle; every cell of the angular arrangement is adjacent to one.
Index hd2_oracle(const Matrix& s, const Vector& x) {
  const Index n = s.rows();
  Index best = n;
  std::vector<double> angles{0.0, std::numbers::pi / 2, std::numbers::pi, -std::numbers::pi / 2};
  for (Index i = 0; i < n; ++i) {
    const double a = std::atan2(s(i, 1) - x(1), s(i, 0) - x(0));
    for (double base : {a + std::numbers::pi / 2, a - std::numbers::pi / 2}) {
      for (double eps : {-1e-7, 0.0, 1e-7}) angles.push_back(base + eps);
    }
  }
  for (double th : angles) {
    Index c = 0;
    for (Index i = 0; i < n; ++i) {
      const double dx = s(i, 0) - x(0), dy = s(i, 1) - x(1);
      if (std::cos(th) * dx + std::sin(th) * dy >= -1e-12 * std::hypot(dx, dy)) ++c;
    }
    best = std::min(best, c);
  }
  return best;
}

}  // namespace

TEST(DcExact, GeneralPositionIsZero) {
  Rng rng(3);
  auto ds = testing_support::random_line_data(rng, 10);
  EXPECT_EQ(dc_exact(ds, vec({0.1, 0.2})).count, 0);
}

TEST(DcExact, TwoLineCounterexample) {
  auto ds = two_line_data();
  EXPECT_EQ(dc_exact(ds, vec({0, 0})).value, 0.5);
  EXPECT_EQ(dc_exact(ds, vec({0, 1})).value, 0.5);
  EXPECT_EQ(dc_exact(ds, vec({0, 0.5})).value, 0.0);
}

// With (0,0) in the sample it lies on both lines, so the two endpoint
// depths are 3/4 and 1/2 rather than 1/2 each; the midpoint still drops.
TEST(DcExact, LiteralPointSetSharesOrigin) {
  auto ds = line_data({{0, 0}, {1, 0}, {2, 2}, {3, 3}});
  EXPECT_EQ(dc_exact(ds, vec({0, 0})).value, 0.5);
  EXPECT_EQ(dc_exact(ds, vec({0, 1})).value, 0.75);
  EXPECT_EQ(dc_exact(ds, vec({0, 0.5})).value, 0.25);
}

TEST(DcExact, AllOnHyperplane) {
  auto ds = line_data({{0, 1}, {1, 3}, {2, 5}});
  EXPECT_EQ(dc_exact(ds, vec({1, 2})).value, 1.0);
}

TEST(DcExact, ToleranceGate) {
  auto ds = line_data({{0, 1e-13}, {1, 1}});
  EXPECT_EQ(dc_exact(ds, vec({0, 1})).count, 2);
  EXPECT_EQ(dc_exact(ds, vec({0, 1}), ZeroTolerance{0.0}).count, 1);
}

TEST(DcSampled, UpperBoundAndMonotone) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto ds = testing_support::random_line_data(rng, 9);
    const Vector b = vec({rng.normal(), rng.normal()});
    Index prev = ds.n() + 1;
    for (std::size_t k : {5u, 50u, 500u, 5000u}) {
      const Index c = dc_sampled(ds, b, k, 9).count;
      EXPECT_GE(c, dc_exact(ds, b).count);
      EXPECT_LE(c, prev);
      prev = c;
    }
  }
}

TEST(DcSampled, ReachesExactOnTwoLineData) {
  auto ds = two_line_data();
  EXPECT_EQ(dc_sampled(ds, vec({0, 0}), 10000, 1).value, 0.5);
  EXPECT_EQ(dc_sampled(ds, vec({0, 1}), 10000, 1).value, 0.5);
  EXPECT_EQ(dc_sampled(ds, vec({0, 0.5}), 10000, 1).value, 0.0);
}

TEST(HdLocation, OneDimensional) {
  Matrix s(5, 1);
  s << 1, 2, 3, 4, 5;
  EXPECT_EQ(hd_location(s, vec({3})).value, 0.6);
  Matrix t(3, 1);
  t << 1, 2, 3;
  EXPECT_EQ(hd_location(t, vec({0})).value, 0.0);
}

TEST(HdLocation, SquareCenter) {
  const Matrix s = points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(hd_location(s, vec({0.5, 0.5})).value, 0.5);
  EXPECT_EQ(hd_location(s, vec({0, 0})).count, 1);
  EXPECT_EQ(hd_location(s, vec({3, 3})).count, 0);
}

TEST(HdLocation, UnsupportedDimension) {
  try {
    hd_location(Matrix::Zero(4, 3), Vector::Zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_dimension);
  }
}

TEST(HdLocation, MatchesAngleOracle) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(15));
    Matrix s(n, 2);
    for (Index i = 0; i < n; ++i) {
      s(i, 0) = t % 2 ? std::round(rng.uniform(-2, 2)) : rng.normal();
      s(i, 1) = t % 2 ? std::round(rng.uniform(-2, 2)) : rng.normal();
    }
    const Vector x = t % 3 ? Vector(s.row(0).transpose()) : vec({rng.normal() * 0.5, rng.normal() * 0.5});
    EXPECT_EQ(hd_location(s, x).count, hd2_oracle(s, x)) << "trial " << t;
  }
}

TEST(NdLocation, ConvergesToHalfspaceDepth) {
  Matrix s(5, 1);
  s << 1, 2, 3, 4, 5;
  const auto nd = nd_location_sampled(s, vec({3}), 10000, 1);
  EXPECT_GE(nd.count, 3);
  EXPECT_LE(nd.count, 4);
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    Matrix m(12, 2);
    for (Index i = 0; i < 12; ++i) m.row(i) << rng.normal(), rng.normal();
    const Vector x = vec({rng.normal() * 0.5, rng.normal() * 0.5});
    const Index h = hd_location(m, x).count, d = nd_location_sampled(m, x, 10000, 7).count;
    EXPECT_GE(d, h);
    EXPECT_LE(d, h + 1);
  }
}

TEST(NdLocation, FarPointHasZeroDepth) {
  const Matrix s = points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(nd_location_sampled(s, vec({50, 50}), 1000, 1).value, 0.0);
}
