#include "regdepth/axioms.hpp"

#include <cmath>
#include <limits>

#include "regdepth/depth_dc.hpp"
#include "regdepth/depth_rd.hpp"
#include "regdepth/estimators.hpp"

namespace regdepth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

bool counting(const Evaluator& ev) { return ev.family == DepthFamily::dc || ev.family == DepthFamily::rd; }

AxiomReport new_report(const Evaluator& ev, const char* axiom) {
  AxiomReport r;
  r.axiom = axiom;
  r.depth = ev.name();
  return r;
}

// Records one trial; `excess` > 0 is a violation of that size.
void record(AxiomReport& r, double excess, const std::function<Json()>& witness) {
  ++r.n_trials;
  if (!(excess > 0.0)) return;
  ++r.n_violations;
  if (excess > r.worst_violation || r.witness.is_null()) {
    r.worst_violation = excess;
    r.witness = witness();
  }
}

void merge(AxiomReport& into, const AxiomReport& r) {
  into.n_trials += r.n_trials;
  into.n_violations += r.n_violations;
  if (r.n_violations > 0 && (r.worst_violation > into.worst_violation || into.witness.is_null())) {
    into.worst_violation = r.worst_violation;
    into.witness = r.witness;
  }
  if (r.details.contains("violations_by_kind")) {
    Json& tally = into.details["violations_by_kind"];
    for (const auto& [kind, count] : r.details["violations_by_kind"].items()) {
      tally[kind] = (tally.contains(kind) ? tally[kind].get<int>() : 0) + count.get<int>();
    }
  }
}

struct Eval {
  double value = 0.0;
  std::string error;
};

Eval safe_eval(const Evaluator& ev, const Dataset& ds, const Coef& b, const DirectionSet& dirs) {
  try {
    return {ev(ds, b, dirs).value, {}};
  } catch (const Error& e) {
    return {std::nan(""), e.what()};
  }
}

bool center_mode(const Evaluator& ev) {
  if (ev.family == DepthFamily::dc) return false;
  if (ev.family != DepthFamily::obj) return true;
  return ev.obj.agg.kind == Aggregator::Kind::mean && ev.obj.loss.even() &&
         ev.obj.scale == ScaleKind::response;
}

Coef round_dyadic(const Coef& b) { return (b * 8.0).array().round() / 8.0; }

Coef reference_fit(const Dataset& ds, const std::vector<Coef>& anchors) {
  try {
    return fit_ls(ds).coef;
  } catch (const Error&) {
    return anchors.empty() ? Coef(Coef::Zero(ds.p())) : anchors.front();
  }
}

}  // namespace

const char* to_string(DepthFamily f) noexcept {
  switch (f) {
    case DepthFamily::obj: return "obj";
    case DepthFamily::dc: return "dc";
    case DepthFamily::rd: return "rd";
    case DepthFamily::prd: return "prd";
  }
  return "?";
}

bool Evaluator::uses_directions() const noexcept {
  return family == DepthFamily::prd || (family == DepthFamily::rd && !rd_exact);
}

DirectionSet Evaluator::directions(const Dataset& ds) const {
  return uses_directions() ? sample_directions(plan, ds.p(), &ds) : DirectionSet{};
}

DepthValue Evaluator::operator()(const Dataset& ds, const Coef& b, const DirectionSet& dirs) const {
  switch (family) {
    case DepthFamily::obj: return obj_depth(ds, b, obj);
    case DepthFamily::dc: return dc_exact(ds, b, tol);
    case DepthFamily::rd: return rd_exact ? rd_exact_simple(ds, b, tol) : rd_directions(ds, b, dirs, tol);
    case DepthFamily::prd: return regdepth::prd(ds, b, dirs, prd);
  }
  return {};
}

std::string Evaluator::name() const {
  switch (family) {
    case DepthFamily::obj: return "obj:" + obj.loss.name() + "/" + obj.agg.name();
    case DepthFamily::dc: return "dc:exact";
    case DepthFamily::rd: return rd_exact ? "rd:exact" : "rd:sampled";
    case DepthFamily::prd: return "prd:" + prd.t.name();
  }
  return "?";
}

double Evaluator::vanish_threshold(Index n) const noexcept {
  return counting(*this) ? 1.0 / static_cast<double>(n) + 1e-9 : 1e-3;
}

Transform Transform::shift(Vector b0) {
  Transform t;
  t.kind = Kind::regression_shift;
  t.b0 = std::move(b0);
  return t;
}

Transform Transform::scale(double s) {
  if (s == 0.0 || !std::isfinite(s)) throw Error(ErrorCode::invalid_argument, "response scale must be nonzero");
  Transform t;
  t.kind = Kind::response_scale;
  t.s = s;
  return t;
}

Transform Transform::affine(Matrix A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::invalid_argument, "affine map must be square");
  const Eigen::JacobiSVD<Matrix> svd(A);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > 1e4) {
    throw Error(ErrorCode::invalid_argument, "affine map is singular or has condition number above 1e4");
  }
  Transform t;
  t.kind = Kind::carrier_affine;
  t.A = std::move(A);
  return t;
}

Dataset Transform::apply(const Dataset& ds) const {
  switch (kind) {
    case Kind::regression_shift:
      if (b0.size() != ds.p()) throw Error(ErrorCode::dimension_mismatch, "shift length differs from p");
      return Dataset::create(ds.X(), ds.y() + ds.X() * b0, ds.has_intercept());
    case Kind::response_scale: return Dataset::create(ds.X(), s * ds.y(), ds.has_intercept());
    case Kind::carrier_affine:
      if (A.rows() != ds.p()) throw Error(ErrorCode::dimension_mismatch, "affine map size differs from p");
      return Dataset::create(ds.X() * A, ds.y(), ds.has_intercept());
  }
  return ds;
}

Coef Transform::map(const Coef& b) const {
  switch (kind) {
    case Kind::regression_shift: return b + b0;
    case Kind::response_scale: return s * b;
    case Kind::carrier_affine: return A.fullPivLu().solve(b);
  }
  return b;
}

DirectionSet Transform::map(const DirectionSet& dirs) const {
  if (kind != Kind::carrier_affine) return dirs;
  const auto lu = A.fullPivLu();
  DirectionSet out;
  out.reserve(dirs.size());
  for (const auto& v : dirs) out.push_back(lu.solve(v));
  return out;
}

std::string Transform::name() const {
  switch (kind) {
    case Kind::regression_shift: return "regression_shift";
    case Kind::response_scale: return "response_scale";
    case Kind::carrier_affine: return "carrier_affine";
  }
  return "?";
}

Json Transform::to_json() const {
  Json j;
  j["kind"] = name();
  if (kind == Kind::regression_shift) j["b0"] = vec_json(b0);
  if (kind == Kind::response_scale) j["s"] = s;
  if (kind == Kind::carrier_affine) {
    Json rows = Json::array();
    for (Index i = 0; i < A.rows(); ++i) rows.push_back(vec_json(A.row(i).transpose()));
    j["A"] = rows;
  }
  return j;
}

Transform random_transform(Rng& rng, const Dataset& ds, Transform::Kind kind) {
  const Index p = ds.p();
  switch (kind) {
    case Transform::Kind::regression_shift: {
      Vector b0(p);
      for (auto& x : b0) x = 3.0 * rng.normal();
      return Transform::shift(b0);
    }
    case Transform::Kind::response_scale: {
      const double mag = std::pow(10.0, rng.uniform(-1.0, 1.0));
      return Transform::scale(rng.uniform() < 0.5 ? -mag : mag);
    }
    case Transform::Kind::carrier_affine:
      for (;;) {
        Matrix A = Matrix::Identity(p, p);
        for (Index i = 0; i < p; ++i) {
          for (Index j = 0; j < p; ++j) A(i, j) += 0.7 * rng.normal();
        }
        if (ds.has_intercept()) {
          A.col(0).setZero();
          A(0, 0) = 1.0;
        }
        try {
          return Transform::affine(A);
        } catch (const Error&) {
        }
      }
  }
  return Transform::scale(1.0);
}

Json AxiomReport::to_json() const {
  Json j;
  j["axiom"] = axiom;
  j["depth"] = depth;
  j["n_trials"] = n_trials;
  j["n_violations"] = n_violations;
  j["worst_violation"] = worst_violation;
  j["expected_failure"] = expected_failure;
  j["passed"] = passed();
  j["details"] = details;
  j["witness"] = witness;
  return j;
}

Json dataset_json(const Dataset& ds) {
  Json j;
  j["n"] = ds.n();
  j["p"] = ds.p();
  j["has_intercept"] = ds.has_intercept();
  if (ds.n() <= 200) {
    Json rows = Json::array();
    for (Index i = 0; i < ds.n(); ++i) rows.push_back(vec_json(ds.X().row(i).transpose()));
    j["X"] = rows;
    j["y"] = vec_json(ds.y());
  }
  return j;
}

Dataset make_symmetric(const Dataset& ds, const Coef& b0) {
  if (b0.size() != ds.p()) throw Error(ErrorCode::dimension_mismatch, "center length differs from p");
  const Index n = ds.n();
  Matrix X(2 * n, ds.p());
  Vector y(2 * n);
  X << ds.X(), ds.X();
  const Vector fit = ds.X() * b0;
  y << ds.y(), Vector(2.0 * fit - ds.y());
  return Dataset::create(X, y, ds.has_intercept());
}

Coef sample_beta(Rng& rng, const Dataset& ds, const std::vector<Coef>& anchors) {
  const Index p = ds.p();
  Coef base = Coef::Zero(p);
  double spread = 1.0 + mad(ds.y());
  if (!anchors.empty()) {
    base = anchors[rng.below(anchors.size())];
    spread = 0.1 + 0.5 * base.norm();
  }
  const std::size_t mode = rng.below(3);
  if (mode == 0 && !anchors.empty()) return base;
  const double r = mode == 1 ? 0.05 * spread : 2.0 * spread;
  Coef out = base;
  for (Index j = 0; j < p; ++j) out(j) += r * rng.normal();
  return out;
}

AxiomReport check_invariance(const Evaluator& ev, const Dataset& ds, const Coef& b,
                             const std::vector<Transform>& transforms, double tol) {
  AxiomReport r = new_report(ev, "P1");
  const DirectionSet dirs = ev.directions(ds);
  const Eval before = safe_eval(ev, ds, b, dirs);
  for (const auto& t : transforms) {
    Eval after;
    try {
      after = safe_eval(ev, t.apply(ds), t.map(b), t.map(dirs));
    } catch (const Error& e) {
      after = {std::nan(""), e.what()};
    }
    double delta = std::abs(after.value - before.value);
    if (std::isnan(delta)) delta = kInf;
    if (delta > tol) {
      Json& tally = r.details["violations_by_kind"];
      tally[t.name()] = (tally.contains(t.name()) ? tally[t.name()].get<int>() : 0) + 1;
    }
    record(r, delta > tol ? delta : 0.0, [&] {
      Json w;
      w["dataset"] = dataset_json(ds);
      w["beta"] = vec_json(b);
      w["transform"] = t.to_json();
      w["before"] = before.value;
      w["after"] = after.value;
      if (!before.error.empty() || !after.error.empty()) w["error"] = before.error.empty() ? after.error : before.error;
      return w;
    });
  }
  return r;
}

AxiomReport check_max_at_center(const Evaluator& ev, const Dataset& ds, const Coef& b0, const CenterOptions& opts) {
  AxiomReport r = new_report(ev, "P2");
  const Dataset sym = make_symmetric(ds, b0);
  const DirectionSet dirs = ev.directions(sym);
  const Eval center = safe_eval(ev, sym, b0, dirs);
  const bool at_center = center_mode(ev);
  r.details["mode"] = at_center ? "center" : "existence";
  r.details["center"] = vec_json(b0);
  r.details["center_value"] = center.value;

  Rng rng(opts.seed);
  const Index p = ds.p();
  const double radius = 10.0 * b0.norm() + 10.0;
  double best = center.value;
  Coef best_b = b0;
  auto consider = [&](const Coef& b) {
    const Eval e = safe_eval(ev, sym, b, dirs);
    if (e.value > best) {
      best = e.value;
      best_b = b;
    }
    if (!at_center) {
      ++r.n_trials;
      return;
    }
    const double excess = std::isnan(e.value) || std::isnan(center.value) ? kInf : e.value - center.value - opts.tol;
    record(r, excess, [&] {
      Json w;
      w["dataset"] = dataset_json(sym);
      w["center"] = vec_json(b0);
      w["beta"] = vec_json(b);
      w["value"] = e.value;
      w["center_value"] = center.value;
      return w;
    });
  };
  for (std::size_t k = 0; k < opts.n_samples; ++k) {
    const double rad = k % 2 == 0 ? radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(p))
                                  : radius * std::pow(10.0, -4.0 * rng.uniform());
    consider(Coef(b0 + rad * rng.unit_vector(p)));
  }
  if (!at_center) {
    for (const auto& c : elemental_candidates(sym, 500)) consider(c);
  }

  if (at_center && (ev.family == DepthFamily::rd || ev.family == DepthFamily::prd)) {
    double expected = 1.0;
    if (ev.family == DepthFamily::rd) {
      const Vector res = residuals(sym, b0);
      Index z = 0;
      for (Index i = 0; i < sym.n(); ++i) z += ev.tol.is_zero(res(i), sym.y()(i));
      expected = static_cast<double>(sym.n() + z) / static_cast<double>(2 * sym.n());
    }
    r.details["expected_center_value"] = expected;
    const double gap = std::abs(center.value - expected);
    record(r, std::isnan(gap) ? kInf : (gap > opts.tol ? gap : 0.0), [&] {
      Json w;
      w["dataset"] = dataset_json(sym);
      w["center"] = vec_json(b0);
      w["center_value"] = center.value;
      w["expected_center_value"] = expected;
      return w;
    });
  }
  r.details["max_value"] = best;
  r.details["argmax"] = vec_json(best_b);
  return r;
}

AxiomReport check_ray_monotonicity(const Evaluator& ev, const Dataset& ds, const Coef& b_star, const RayOptions& opts) {
  AxiomReport r = new_report(ev, "P3");
  r.expected_failure = opts.expect_violation;
  const DirectionSet dirs = ev.directions(ds);
  const auto anchors = elemental_candidates(ds, 200, opts.seed);
  std::vector<Coef> targets = opts.targets;
  Rng rng(opts.seed);
  for (std::size_t k = 0; k < opts.n_rays; ++k) targets.push_back(sample_beta(rng, ds, anchors));
  r.details["deepest"] = vec_json(b_star);
  r.details["deepest_value"] = safe_eval(ev, ds, b_star, dirs).value;

  for (const auto& target : targets) {
    const Eval far = safe_eval(ev, ds, target, dirs);
    for (std::size_t s = 1; s <= opts.n_steps; ++s) {
      const double lam = static_cast<double>(s) / static_cast<double>(opts.n_steps + 1);
      const Coef b = lam * b_star + (1.0 - lam) * target;
      const Eval e = safe_eval(ev, ds, b, dirs);
      const double excess = std::isnan(e.value) || std::isnan(far.value) ? kInf : far.value - e.value - opts.tol;
      record(r, excess, [&] {
        Json w;
        w["dataset"] = dataset_json(ds);
        w["deepest"] = vec_json(b_star);
        w["target"] = vec_json(target);
        w["lambda"] = lam;
        w["value"] = e.value;
        w["target_value"] = far.value;
        return w;
      });
    }
  }
  return r;
}

AxiomReport check_vanishing(const Evaluator& ev, const Dataset& ds, const VanishOptions& opts) {
  AxiomReport r = new_report(ev, "P4");
  const DirectionSet dirs = ev.directions(ds);
  const double threshold = ev.vanish_threshold(ds.n());
  r.details["threshold"] = threshold;
  Rng rng(opts.seed);
  const Index p = ds.p();
  const bool obj = ev.family == DepthFamily::obj;
  Coef base = Coef::Zero(p);
  if (obj) {
    try {
      base = fit_ls(ds).coef;
    } catch (const Error&) {
    }
  }
  Json unasserted = Json::array();

  for (std::size_t k = 0; k < opts.n_dirs; ++k) {
    Vector u = rng.unit_vector(p);
    bool asserted = true;
    if (obj) {
      // Intercept rays are asserted, slope rays only recorded.
      if (ds.has_intercept() && k % 2 == 0) {
        u = Vector::Zero(p);
        u(0) = rng.uniform() < 0.5 ? -1.0 : 1.0;
      } else {
        if (ds.has_intercept()) u(0) = 0.0;
        if (u.norm() == 0.0) u(p - 1) = 1.0;
        u.normalize();
        asserted = false;
      }
    }
    std::vector<double> values;
    for (int e = 1; e <= opts.n_scales; ++e) {
      const Coef b = (obj ? base : Coef(Coef::Zero(p))) + std::pow(10.0, e) * u;
      values.push_back(safe_eval(ev, ds, b, dirs).value);
    }
    if (!asserted) {
      Json j;
      j["direction"] = vec_json(u);
      j["values"] = values;
      unasserted.push_back(j);
      continue;
    }
    double excess = values.back() - threshold;
    const std::size_t m = values.size();
    for (std::size_t i = m >= 3 ? m - 3 : 0; i + 1 < m; ++i) excess = std::max(excess, values[i + 1] - values[i]);
    for (double v : values) {
      if (std::isnan(v)) excess = kInf;
    }
    record(r, excess, [&] {
      Json w;
      w["dataset"] = dataset_json(ds);
      w["base"] = vec_json(obj ? base : Coef(Coef::Zero(p)));
      w["direction"] = vec_json(u);
      w["values"] = values;
      return w;
    });
  }
  if (!unasserted.empty()) r.details["unasserted_rays"] = unasserted;
  return r;
}

AxiomReport check_quasiconcavity(const Evaluator& ev, const Dataset& ds, std::size_t n_segments, std::uint64_t seed,
                                 double tol) {
  AxiomReport r = new_report(ev, "QC");
  r.expected_failure = ev.family == DepthFamily::dc;
  const DirectionSet dirs = ev.directions(ds);
  auto anchors = elemental_candidates(ds, 200, seed);
  Rng rng(seed);
  for (std::size_t k = 0; k < n_segments; ++k) {
    const Coef b1 = sample_beta(rng, ds, anchors), b2 = sample_beta(rng, ds, anchors);
    const double lam = rng.uniform();
    const Coef mid = lam * b1 + (1.0 - lam) * b2;
    const Eval e1 = safe_eval(ev, ds, b1, dirs), e2 = safe_eval(ev, ds, b2, dirs), em = safe_eval(ev, ds, mid, dirs);
    const double lo = std::min(e1.value, e2.value);
    const double excess = std::isnan(lo) || std::isnan(em.value) ? kInf : lo - em.value - tol;
    record(r, excess, [&] {
      Json w;
      w["dataset"] = dataset_json(ds);
      w["beta1"] = vec_json(b1);
      w["beta2"] = vec_json(b2);
      w["lambda"] = lam;
      w["values"] = {e1.value, e2.value, em.value};
      return w;
    });
  }
  return r;
}

std::vector<AxiomReport> run_suite(const Evaluator& ev, const Dataset& ds, Suite suite, const SuiteOptions& opts) {
  const bool count = counting(ev);
  auto tol_for = [&](double fallback) { return opts.tol >= 0.0 ? opts.tol : (count ? 0.0 : fallback); };
  const auto anchors = elemental_candidates(ds, 200, opts.seed);
  std::vector<AxiomReport> out;
  const bool all = suite == Suite::all;

  if (all || suite == Suite::p1) {
    AxiomReport total = new_report(ev, "P1");
    Rng rng(opts.seed);
    for (std::size_t k = 0; k < opts.trials; ++k) {
      const Coef b = sample_beta(rng, ds, anchors);
      const auto kind = static_cast<Transform::Kind>(k % 3);
      merge(total, check_invariance(ev, ds, b, {random_transform(rng, ds, kind)}, tol_for(1e-9)));
    }
    out.push_back(std::move(total));
  }
  if (all || suite == Suite::p2) {
    CenterOptions co;
    co.seed = opts.seed;
    co.tol = tol_for(1e-12);
    out.push_back(check_max_at_center(ev, ds, round_dyadic(reference_fit(ds, anchors)), co));
  }
  if (all || suite == Suite::p3) {
    RayOptions ro;
    ro.seed = opts.seed;
    ro.tol = tol_for(1e-12);
    Coef b_star;
    switch (ev.family) {
      case DepthFamily::obj: b_star = fit_obj(ds, ev.obj).coef; break;
      case DepthFamily::rd: b_star = fit_deepest_rd(ds, ev.plan).coef; break;
      case DepthFamily::prd: b_star = fit_prd_minimax(ds, ev.directions(ds), ev.prd).coef; break;
      case DepthFamily::dc: {
        ro.expect_violation = true;
        double best = -1.0;
        for (const auto& c : anchors) {
          const double v = dc_exact(ds, c, ev.tol).value;
          if (v > best) {
            best = v;
            b_star = c;
          }
        }
        if (anchors.empty()) b_star = Coef::Zero(ds.p());
        for (std::size_t k = 0; k < anchors.size() && k < 20; ++k) ro.targets.push_back(anchors[k]);
        break;
      }
    }
    out.push_back(check_ray_monotonicity(ev, ds, b_star, ro));
  }
  if (all || suite == Suite::p4) {
    VanishOptions vo;
    vo.seed = opts.seed;
    out.push_back(check_vanishing(ev, ds, vo));
  }
  if (all || suite == Suite::qc) {
    out.push_back(check_quasiconcavity(ev, ds, 5 * opts.trials, opts.seed, tol_for(1e-12)));
  }
  return out;
}

}  // namespace regdepth
