#pragma once

// Maximum-depth / minimum-unfitness regression fits.

#include <string>

#include "regdepth/depth_obj.hpp"
#include "regdepth/depth_prd.hpp"

namespace regdepth {

struct FitResult {
  Coef coef;
  double achieved = 0.0;  ///< objective at coef: unfitness, or depth for deepest-rd
  std::string method;
  std::size_t candidates_evaluated = 0;
  std::string depth_kind;  ///< evaluator behind `depth`, e.g. "rd_exact", "rd_sampled", "prd"
  double depth = 0.0;
};

/// Exact fits through p observations in subset order; singular subsets are dropped.
std::vector<Coef> elemental_candidates(const Dataset& ds, std::size_t cap = 2000, std::uint64_t seed = 1);

/// Least squares by column-pivoted QR. Throws rank_deficient.
FitResult fit_ls(const Dataset& ds);

/// Best of the elemental candidates and LS under obj_unfitness, refined by
/// simplex descent. Candidate ties go to the earlier candidate.
FitResult fit_obj(const Dataset& ds, const ObjSpec& spec, std::size_t cap = 2000, std::uint64_t seed = 1);

/// p = 2: exact depth over all lines through two observations (the maximum
/// is always attained at one). Larger p: sampled depth on elemental fits.
/// Ties go to the smallest |beta|, then lexicographic order.
FitResult fit_deepest_rd(const Dataset& ds, const DirectionPlan& plan = {}, std::size_t cap = 2000);

/// argmin of UF over a fixed direction set, multi-start simplex descent from
/// LS, LAD and the best elemental fit.
FitResult fit_prd_minimax(const Dataset& ds, const DirectionSet& dirs, const PrdSpec& spec = {},
                          std::size_t cap = 500);
FitResult fit_prd_minimax(const Dataset& ds, const DirectionPlan& plan, const PrdSpec& spec = {},
                          std::size_t cap = 500);

/// argmin of sup_v A(b, v), the multiplicative variant, from the same starts.
FitResult fit_my93_minimax(const Dataset& ds, const DirectionSet& dirs, const TSpec& t = TSpec::median(),
                           std::size_t cap = 500);

}  // namespace regdepth
