#pragma once

// Checks of the depth axioms P1-P4 and quasi-concavity against any of the
// depth evaluators, with machine-readable reports.

#include <string>
#include <vector>

#include "regdepth/depth_obj.hpp"
#include "regdepth/depth_prd.hpp"
#include "regdepth/json_out.hpp"

namespace regdepth {

enum class DepthFamily { obj, dc, rd, prd };

const char* to_string(DepthFamily f) noexcept;

/// A depth functional with all of its configuration bound. Direction-based
/// evaluators take their direction set explicitly so that transforms can
/// push it forward.
struct Evaluator {
  DepthFamily family = DepthFamily::rd;
  ObjSpec obj;
  PrdSpec prd;
  ZeroTolerance tol;
  DirectionPlan plan;
  bool rd_exact = true;  ///< simple-regression sweep, else direction form on the plan

  bool uses_directions() const noexcept;
  DirectionSet directions(const Dataset& ds) const;
  DepthValue operator()(const Dataset& ds, const Coef& b, const DirectionSet& dirs) const;
  std::string name() const;
  /// Level the depth must reach far out: one quantum for counting depths.
  double vanish_threshold(Index n) const noexcept;
};

struct Transform {
  enum class Kind { regression_shift, response_scale, carrier_affine };
  Kind kind = Kind::regression_shift;
  Vector b0;
  double s = 1.0;
  Matrix A;

  static Transform shift(Vector b0);
  static Transform scale(double s);
  /// Throws invalid_argument for singular A or cond(A) > 1e4.
  static Transform affine(Matrix A);

  Dataset apply(const Dataset& ds) const;
  Coef map(const Coef& b) const;
  /// Directions v with x'v preserved: v -> A^{-1} v for the affine map.
  DirectionSet map(const DirectionSet& dirs) const;
  std::string name() const;
  Json to_json() const;
};

/// Random transform of the given kind. Affine maps keep the intercept
/// column when the dataset has one.
Transform random_transform(Rng& rng, const Dataset& ds, Transform::Kind kind);

struct AxiomReport {
  std::string axiom;
  std::string depth;
  std::size_t n_trials = 0;
  std::size_t n_violations = 0;
  double worst_violation = 0.0;
  bool expected_failure = false;
  Json witness;  ///< inputs of the worst case, null when there is none
  Json details = Json::object();

  /// Expected-failure checks pass only when a violation was found.
  bool passed() const noexcept { return expected_failure ? n_violations > 0 : n_violations == 0; }
  Json to_json() const;
};

/// Appends the reflected rows (x_i, 2 x_i'b0 - y_i), so residuals about b0
/// come in +- pairs.
Dataset make_symmetric(const Dataset& ds, const Coef& b0);

AxiomReport check_invariance(const Evaluator& ev, const Dataset& ds, const Coef& b,
                             const std::vector<Transform>& transforms, double tol);

struct CenterOptions {
  std::size_t n_samples = 500;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

/// Symmetrizes ds about b0 and compares the depth at b0 with sampled points
/// of the ball of radius 10|b0| + 10 around it, and with the known center
/// value (PRD 1, RD 1/2 + zero fraction / 2). For D_C, and for D_Obj
/// outside the mean aggregator with square or absolute loss, only the
/// existence of a maximum is recorded.
AxiomReport check_max_at_center(const Evaluator& ev, const Dataset& ds, const Coef& b0,
                                const CenterOptions& opts = {});

struct RayOptions {
  std::size_t n_rays = 50;
  std::size_t n_steps = 9;
  std::uint64_t seed = 1;
  double tol = 0.0;
  bool expect_violation = false;
  std::vector<Coef> targets;  ///< extra ray endpoints checked first
};

/// depth(l b* + (1 - l) b) >= depth(b) along rays from b_star.
AxiomReport check_ray_monotonicity(const Evaluator& ev, const Dataset& ds, const Coef& b_star,
                                   const RayOptions& opts = {});

struct VanishOptions {
  std::size_t n_dirs = 20;
  int n_scales = 6;
  std::uint64_t seed = 1;
};

/// depth(c u) for c = 10, ..., 10^n_scales: the last value must be at most
/// vanish_threshold and the last three nonincreasing. D_Obj is asserted on
/// intercept rays only; slope rays are recorded in details.
AxiomReport check_vanishing(const Evaluator& ev, const Dataset& ds, const VanishOptions& opts = {});

/// depth(l b1 + (1 - l) b2) >= min(depth(b1), depth(b2)) - tol on random segments.
AxiomReport check_quasiconcavity(const Evaluator& ev, const Dataset& ds, std::size_t n_segments,
                                 std::uint64_t seed, double tol);

enum class Suite { p1, p2, p3, p4, qc, all };

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  double tol = -1.0;  ///< negative: 0 for counting depths, 1e-9 otherwise
};

/// Runs the requested checks on one dataset with seeded trial design.
std::vector<AxiomReport> run_suite(const Evaluator& ev, const Dataset& ds, Suite suite, const SuiteOptions& opts = {});

/// Random coefficient near the elemental fits of ds.
Coef sample_beta(Rng& rng, const Dataset& ds, const std::vector<Coef>& anchors);

Json dataset_json(const Dataset& ds);

}  // namespace regdepth
