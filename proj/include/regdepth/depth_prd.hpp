#pragma once

// Projection regression depth PRD = 1 / (1 + UF), where
// UF = sup_v |T{ r_i / (x_i'v) }| / S and S = MAD(y) by default.

#include <string>

#include "regdepth/core.hpp"

namespace regdepth {

struct TSpec {
  enum class Kind { median, quantile, mean };
  Kind kind = Kind::median;
  double tau = 0.5;

  static TSpec median() { return {Kind::median, 0.5}; }
  static TSpec quantile(double tau);
  static TSpec mean() { return {Kind::mean, 0.5}; }
  std::string name() const;
};

struct PrdSpec {
  TSpec t = TSpec::median();
  ScaleKind scale = ScaleKind::response;
};

/// Ratios r_i / (x_i'v) with |x_i'v| > 1e-12 (1 + |x_i|) |v| removed from the
/// sample. Throws degenerate_direction if nothing is left.
Vector projection_ratios(const Dataset& ds, const Coef& b, const Vector& v);

/// T applied to a finite sample.
double apply_t(const Vector& sample, const TSpec& t);

double uf_direction(const Dataset& ds, const Coef& b, const Vector& v, const PrdSpec& spec = {});

/// Max of uf_direction over the non-degenerate directions of the set.
/// Throws all_directions_degenerate if every direction is degenerate.
double uf(const Dataset& ds, const Coef& b, const DirectionSet& dirs, const PrdSpec& spec = {});
double uf(const Dataset& ds, const Coef& b, const DirectionPlan& plan, const PrdSpec& spec = {});

DepthValue prd(const Dataset& ds, const Coef& b, const DirectionSet& dirs, const PrdSpec& spec = {});
DepthValue prd(const Dataset& ds, const Coef& b, const DirectionPlan& plan, const PrdSpec& spec = {});

/// min_v MAD / (MAD + |Med{ r_i / x_i'v }|), computed without going through UF.
DepthValue prd_median_closed_form(const Dataset& ds, const Coef& b, const DirectionSet& dirs,
                                  ScaleKind scale = ScaleKind::response);

/// Multiplicative variant A(b, v) = |T{ r_i / x_i'v }| * MAD{ x_i'v }.
/// Throws zero_scale when the projected carriers have zero MAD.
double my93_a(const Dataset& ds, const Coef& b, const Vector& v, const TSpec& t = TSpec::median());

/// sup over the non-degenerate directions of my93_a.
double my93_sup(const Dataset& ds, const Coef& b, const DirectionSet& dirs, const TSpec& t = TSpec::median());

}  // namespace regdepth
