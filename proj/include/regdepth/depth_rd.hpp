#pragma once

// Rousseeuw-Hubert regression depth and its alternative characterizations.
//
// Tie convention: the direction form counts #{i : r_i * (w_i'v) >= 0}, so an
// observation on the hyperplane (r_i = 0) or on the pivot (w_i'v = 0) is
// touched by every tilt. The Bai-He form uses strict inequalities and is
// provided for comparison only.

#include <cstdint>

#include "regdepth/core.hpp"

namespace regdepth {

enum class RdCharacterization { direction_form, bai_he_form, competitor_form };

/// Exact depth for simple regression (p = 2 with intercept) by sweeping the
/// pivot over carriers, their midpoints and two sentinels, in both tilt
/// orientations. O(n log n).
DepthValue rd_exact_simple(const Dataset& ds, const Coef& b, ZeroTolerance tol = {});

/// Direction form evaluated on an explicit direction set (an upper bound on
/// the depth; exact when the set meets every cell of the arrangement).
DepthValue rd_directions(const Dataset& ds, const Coef& b, const DirectionSet& dirs, ZeroTolerance tol = {});

DepthValue rd_sampled(const Dataset& ds, const Coef& b, const DirectionPlan& plan, ZeroTolerance tol = {});

/// Strict Bai-He counts on an explicit direction set: for each d,
/// min(#{r_i w_i'd > 0}, #{r_i w_i'd < 0}).
DepthValue rd_bai_he_on(const Dataset& ds, const Coef& b, const DirectionSet& dirs, ZeroTolerance tol = {});

/// Bai-He form with the carrier direction u taken from the plan and the
/// offset v swept over every projected carrier, midpoint and sentinel.
DepthValue rd_bai_he(const Dataset& ds, const Coef& b, const DirectionPlan& plan, ZeroTolerance tol = {});

/// min over seeded competitors alpha whose hyperplanes cross H_b of
/// (1/n) #{ |r_i(b)| <= |r_i(alpha)| }. Competitors tilt b by a heavy-tailed
/// amount about the hyperline above a random (p-1)-subset of observations,
/// alternating with tilts about random hyperlines. A prefix of a longer run with the same seed uses the same
/// competitors, so the value is nonincreasing in n_competitors.
DepthValue rd_competitor_bound(const Dataset& ds, const Coef& b, std::size_t n_competitors, std::uint64_t seed,
                               ZeroTolerance tol = {});

}  // namespace regdepth
