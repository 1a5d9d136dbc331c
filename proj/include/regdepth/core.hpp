#pragma once

// Shared substrate for the depth modules: dataset container, residuals,
// order-statistic functionals, direction sampling and a portable RNG.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace regdepth {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Candidate coefficient vector; the hyperplane y = w'beta.
using Coef = Eigen::VectorXd;

/// A finite list of (not necessarily unit) directions in R^p.
using DirectionSet = std::vector<Vector>;

enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch,
  zero_scale,
  degenerate_direction,
  all_directions_degenerate,
  wrong_shape,
  rank_deficient,
  unsupported_dimension,
  io,
  parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// n observations (rows of X, entries of y). When has_intercept is set the
/// first column of X is identically 1, i.e. rows are w = (1, x')'.
class Dataset {
 public:
  static Dataset create(Matrix X, Vector y, bool has_intercept);

  const Matrix& X() const noexcept { return X_; }
  const Vector& y() const noexcept { return y_; }
  bool has_intercept() const noexcept { return has_intercept_; }
  Index n() const noexcept { return X_.rows(); }
  Index p() const noexcept { return X_.cols(); }

  /// Carrier values of the single regressor when p = 2 with intercept.
  Vector carrier() const;

 private:
  Dataset(Matrix X, Vector y, bool has_intercept)
      : X_(std::move(X)), y_(std::move(y)), has_intercept_(has_intercept) {}

  Matrix X_;
  Vector y_;
  bool has_intercept_ = false;
};

/// Depth value in [0,1]. Empirical counting depths also carry the exact
/// rational k/n in (count, total).
struct DepthValue {
  double value = 0.0;
  Index count = -1;
  Index total = 0;

  static DepthValue ratio(Index k, Index n);
  static DepthValue real(double v);
  bool exact() const noexcept { return count >= 0; }
};

/// Gate for "residual equals zero": |r_i| <= abs * (1 + |y_i|).
struct ZeroTolerance {
  double abs = 1e-12;
  bool is_zero(double r, double y) const noexcept;
  /// -1, 0, +1 with the tolerance applied.
  int sign(double r, double y) const noexcept;
};

/// Which scale functional divides residuals in the scaled depths.
enum class ScaleKind {
  response,  ///< MAD of the raw response (default)
  residual,  ///< MAD of the residuals r(beta)
};

struct DirectionPlan {
  std::size_t n_random = 512;
  std::uint64_t seed = 1;
  bool include_data_directions = true;
  std::size_t data_cap = 2000;
};

Vector residuals(const Dataset& ds, const Coef& b);

double median(std::span<const double> v);
double mad(std::span<const double> v);
double quantile(std::span<const double> v, double tau);

inline double median(const Vector& v) { return median(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))); }
inline double mad(const Vector& v) { return mad(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))); }
inline double quantile(const Vector& v, double tau) {
  return quantile(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), tau);
}

/// Scale S used by the scaled depths; throws zero_scale when it vanishes.
double scale_of(const Dataset& ds, const Vector& r, ScaleKind kind);

/// Deterministic direction list. Every direction is followed by its
/// negation, so the set is closed under v -> -v. For p = 1 the result is
/// exactly {+1, -1}.
DirectionSet sample_directions(const DirectionPlan& plan, Index p, const Dataset* ds = nullptr);

/// Seeded generator: mt19937_64 (bit-exact by the standard) with explicit
/// uniform/normal transforms, since std:: distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();                 ///< [0, 1)
  double uniform(double lo, double hi);
  double normal();
  double cauchy();
  std::size_t below(std::size_t n); ///< [0, n)
  Vector unit_vector(Index p);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Size-k index subsets of {0..n-1}: all of them in lexicographic order when
/// C(n,k) <= cap, otherwise cap distinct subsets drawn with the given seed.
std::vector<std::vector<Index>> index_subsets(Index n, Index k, std::size_t cap, std::uint64_t seed);

/// Binomial coefficient saturating at SIZE_MAX.
std::size_t choose(Index n, Index k);

/// Unit vector orthogonal to the given rows (rows.size() == p-1, full rank),
/// or nullopt if the rows are rank deficient.
std::optional<Vector> orthogonal_direction(const Matrix& rows);

/// Elemental fit: the coefficient whose hyperplane passes through the given
/// rows exactly, or nullopt for a singular subset.
std::optional<Coef> elemental_fit(const Dataset& ds, std::span<const Index> rows);

}  // namespace regdepth
