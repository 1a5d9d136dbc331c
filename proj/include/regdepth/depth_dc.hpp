#pragma once

// Carrizosa depth in regression (L1 distance) and its location counterpart.

#include <cstdint>

#include "regdepth/core.hpp"

namespace regdepth {

/// Fraction of observations lying on H_b: #{ |r_i| <= tol (1 + |y_i|) } / n.
DepthValue dc_exact(const Dataset& ds, const Coef& b, ZeroTolerance tol = {});

/// inf over seeded competitors alpha in R^p of (1/n) #{ |r_i(b)| <= |r_i(alpha)| }.
/// The competitor pool mixes hyperplanes parallel to H_b (intercept offsets,
/// including a deterministic ladder shrinking to 1e-8 of the residual scale),
/// hyperplanes tilted about data hyperlines or random hyperlines, and elemental fits.
DepthValue dc_sampled(const Dataset& ds, const Coef& b, std::size_t n_competitors, std::uint64_t seed,
                      ZeroTolerance tol = {});

/// Halfspace depth of x among the rows of `sample` (dimension 1 or 2).
/// Exact: in 2-d the closed halfplanes through x are enumerated over every
/// cell and vertex of the angular arrangement.
DepthValue hd_location(const Matrix& sample, const Vector& x);

/// Normalized (facility location) depth
/// inf_y (1/n) #{ a_i : |y - a_i| >= |x - a_i| } over seeded competitor points.
DepthValue nd_location_sampled(const Matrix& sample, const Vector& x, std::size_t n_competitors,
                               std::uint64_t seed);

}  // namespace regdepth
