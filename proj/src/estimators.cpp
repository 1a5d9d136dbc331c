#include "regdepth/estimators.hpp"

#include <cmath>
#include <limits>

#include "regdepth/depth_rd.hpp"
#include "regdepth/optimize.hpp"
#include "regdepth/parallel.hpp"

namespace regdepth {

namespace {

struct Best {
  double f = std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();
};

Best better(const Best& a, const Best& b) {
  if (a.f != b.f) return a.f < b.f ? a : b;
  return a.index <= b.index ? a : b;
}

template <class Objective>
Best argmin(const std::vector<Coef>& cands, Objective f) {
  return parallel_reduce(
      cands.size(), Best{},
      [&](std::size_t begin, std::size_t end) {
        Best local;
        for (std::size_t k = begin; k < end; ++k) {
          double v = f(cands[k]);
          if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
          local = better(local, Best{v, k});
        }
        return local;
      },
      better);
}

// Keep a refined point only when it is better by more than rounding noise.
bool improves(double candidate, double incumbent) {
  return candidate < incumbent - 1e-12 * (1.0 + std::abs(incumbent));
}

bool lex_less(const Coef& a, const Coef& b) {
  for (Index j = 0; j < a.size(); ++j) {
    if (a(j) != b(j)) return a(j) < b(j);
  }
  return false;
}

FitResult minimax_fit(const Dataset& ds, const std::function<double(const Coef&)>& objective, std::size_t cap,
                      std::string method, std::string kind) {
  std::vector<Coef> starts;
  std::size_t evaluated = 0;
  try {
    starts.push_back(fit_ls(ds).coef);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::rank_deficient) throw;
  }
  try {
    const FitResult lad = fit_obj(ds, {Loss::absolute(), Aggregator::mean()}, cap);
    evaluated += lad.candidates_evaluated;
    starts.push_back(lad.coef);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::rank_deficient && e.code() != ErrorCode::zero_scale) throw;
  }
  const auto cands = elemental_candidates(ds, cap);
  evaluated += cands.size();
  if (!cands.empty()) {
    const Best b = argmin(cands, objective);
    if (b.index < cands.size()) starts.push_back(cands[b.index]);
  }
  if (starts.empty()) throw Error(ErrorCode::rank_deficient, "no nonsingular starting fit");

  Coef best_x = starts.front();
  double best_f = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const MinimizeResult r = nelder_mead(objective, s);
    evaluated += r.evaluations;
    if (r.f < best_f) {
      best_f = r.f;
      best_x = r.x;
    }
  }
  FitResult out;
  out.coef = best_x;
  out.achieved = objective(best_x);
  out.method = std::move(method);
  out.candidates_evaluated = evaluated;
  out.depth_kind = std::move(kind);
  out.depth = 1.0 / (1.0 + out.achieved);
  return out;
}

}  // namespace

std::vector<Coef> elemental_candidates(const Dataset& ds, std::size_t cap, std::uint64_t seed) {
  std::vector<Coef> out;
  if (ds.p() > ds.n()) return out;
  for (const auto& subset : index_subsets(ds.n(), ds.p(), cap, seed)) {
    if (auto b = elemental_fit(ds, subset)) out.push_back(std::move(*b));
  }
  return out;
}

FitResult fit_ls(const Dataset& ds) {
  const Eigen::ColPivHouseholderQR<Matrix> qr(ds.X());
  if (qr.rank() < ds.p()) throw Error(ErrorCode::rank_deficient, "design matrix is not of full column rank");
  FitResult out;
  out.coef = qr.solve(ds.y());
  out.achieved = obj_unfitness(ds, out.coef, {Loss::square(), Aggregator::mean()});
  out.method = "ls";
  out.candidates_evaluated = 1;
  out.depth_kind = "obj";
  out.depth = 1.0 / (1.0 + out.achieved);
  return out;
}

FitResult fit_obj(const Dataset& ds, const ObjSpec& spec, std::size_t cap, std::uint64_t seed) {
  scale_of(ds, ds.y(), ScaleKind::response);
  std::vector<Coef> cands = elemental_candidates(ds, cap, seed);
  try {
    cands.push_back(fit_ls(ds).coef);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::rank_deficient) throw;
  }
  if (cands.empty()) throw Error(ErrorCode::rank_deficient, "every elemental subset is singular");

  auto objective = [&](const Coef& b) { return obj_unfitness(ds, b, spec); };
  const Best b = argmin(cands, objective);
  FitResult out;
  out.coef = cands[b.index];
  out.achieved = b.f;
  const MinimizeResult r = nelder_mead(objective, out.coef);
  if (improves(r.f, out.achieved)) {
    out.coef = r.x;
    out.achieved = r.f;
  }
  out.method = "obj:" + spec.loss.name() + "/" + spec.agg.name();
  out.candidates_evaluated = cands.size() + r.evaluations;
  out.depth_kind = "obj";
  out.depth = 1.0 / (1.0 + out.achieved);
  return out;
}

FitResult fit_deepest_rd(const Dataset& ds, const DirectionPlan& plan, std::size_t cap) {
  if (!ds.has_intercept()) throw Error(ErrorCode::wrong_shape, "deepest regression needs an intercept column");
  if (ds.n() < 2) throw Error(ErrorCode::invalid_argument, "deepest regression needs at least two observations");
  const bool exact = ds.p() == 2;
  const DirectionSet dirs = exact ? DirectionSet{} : sample_directions(plan, ds.p(), &ds);
  auto depth_of = [&](const Coef& b) {
    return exact ? rd_exact_simple(ds, b) : rd_directions(ds, b, dirs);
  };

  const std::vector<Coef> cands = elemental_candidates(ds, cap, plan.seed);
  if (cands.empty()) throw Error(ErrorCode::rank_deficient, "every elemental subset is singular");

  struct Pick {
    Index count = -1;
    std::size_t index = 0;
  };
  auto prefer = [&](const Pick& a, const Pick& b) {
    if (a.count != b.count) return a.count > b.count ? a : b;
    if (a.count < 0) return a;
    const double na = cands[a.index].norm(), nb = cands[b.index].norm();
    if (na != nb) return na < nb ? a : b;
    if (lex_less(cands[a.index], cands[b.index])) return a;
    if (lex_less(cands[b.index], cands[a.index])) return b;
    return a.index <= b.index ? a : b;
  };
  const Pick pick = parallel_reduce(
      cands.size(), Pick{},
      [&](std::size_t begin, std::size_t end) {
        Pick local;
        for (std::size_t k = begin; k < end; ++k) local = prefer(local, Pick{depth_of(cands[k]).count, k});
        return local;
      },
      prefer);

  FitResult out;
  out.coef = cands[pick.index];
  DepthValue d = depth_of(out.coef);
  const MinimizeResult r = nelder_mead([&](const Coef& b) { return -depth_of(b).value; }, out.coef);
  const DepthValue refined = depth_of(r.x);
  if (refined.count > d.count) {
    out.coef = r.x;
    d = refined;
  }
  out.achieved = d.value;
  out.method = "deepest-rd";
  out.candidates_evaluated = cands.size() + r.evaluations;
  out.depth_kind = exact ? "rd_exact" : "rd_sampled";
  out.depth = d.value;
  return out;
}

FitResult fit_prd_minimax(const Dataset& ds, const DirectionSet& dirs, const PrdSpec& spec, std::size_t cap) {
  return minimax_fit(ds, [&](const Coef& b) { return uf(ds, b, dirs, spec); }, cap, "prd", "prd");
}

FitResult fit_prd_minimax(const Dataset& ds, const DirectionPlan& plan, const PrdSpec& spec, std::size_t cap) {
  return fit_prd_minimax(ds, sample_directions(plan, ds.p(), &ds), spec, cap);
}

FitResult fit_my93_minimax(const Dataset& ds, const DirectionSet& dirs, const TSpec& t, std::size_t cap) {
  FitResult out = minimax_fit(ds, [&](const Coef& b) { return my93_sup(ds, b, dirs, t); }, cap, "my93", "my93");
  out.depth = 0.0;
  return out;
}

}  // namespace regdepth
