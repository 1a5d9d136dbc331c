#include "regdepth/regdepth.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <new>
#include <string>

#include "regdepth/axioms.hpp"
#include "regdepth/depth_dc.hpp"
#include "regdepth/depth_obj.hpp"
#include "regdepth/depth_prd.hpp"
#include "regdepth/depth_rd.hpp"
#include "regdepth/estimators.hpp"
#include "regdepth/io.hpp"
#include "regdepth/json_out.hpp"
#include "regdepth/parallel.hpp"

#ifndef REGDEPTH_VERSION_STRING
#define REGDEPTH_VERSION_STRING "0.0.0"
#endif

struct regdepth_dataset {
  regdepth::Dataset ds;
  std::string source;
  std::string response;
};

namespace {

using namespace regdepth;

thread_local std::string last_error;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return REGDEPTH_E_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return REGDEPTH_E_DIMENSION_MISMATCH;
    case ErrorCode::zero_scale: return REGDEPTH_E_ZERO_SCALE;
    case ErrorCode::degenerate_direction: return REGDEPTH_E_DEGENERATE_DIRECTION;
    case ErrorCode::all_directions_degenerate: return REGDEPTH_E_ALL_DIRECTIONS_DEGENERATE;
    case ErrorCode::wrong_shape: return REGDEPTH_E_WRONG_SHAPE;
    case ErrorCode::rank_deficient: return REGDEPTH_E_RANK_DEFICIENT;
    case ErrorCode::unsupported_dimension: return REGDEPTH_E_UNSUPPORTED_DIMENSION;
    case ErrorCode::io: return REGDEPTH_E_IO;
    case ErrorCode::parse: return REGDEPTH_E_PARSE;
  }
  return REGDEPTH_E_INTERNAL;
}

template <class F>
int guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return REGDEPTH_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const UsageError& e) {
    last_error = e.what();
    return REGDEPTH_E_USAGE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return REGDEPTH_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return REGDEPTH_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string str_or(const char* s, const char* fallback) { return s && *s ? s : fallback; }

// Options resolved into library types, with every string and range checked
// before any computation starts.
struct Config {
  std::uint64_t seed = 1;
  ZeroTolerance tol;
  DirectionPlan plan;
  std::size_t competitors = 10000;
  std::size_t cap = 2000;
  DepthFamily family = DepthFamily::rd;
  std::string method;
  ObjSpec obj;
  PrdSpec prd;
  double loss_param = 0.5;
  std::string loss;
  bool timing = false;

  Json to_json() const {
    Json j;
    j["family"] = to_string(family);
    j["method"] = method;
    j["seed"] = seed;
    j["tol"] = tol.abs;
    j["directions"] = plan.n_random;
    j["data_directions"] = plan.include_data_directions;
    j["competitors"] = competitors;
    j["candidate_cap"] = cap;
    if (family == DepthFamily::obj) {
      j["loss"] = obj.loss.name();
      j["agg"] = obj.agg.name();
    }
    if (family == DepthFamily::prd) j["t"] = prd.t.name();
    j["scale"] = (family == DepthFamily::prd ? prd.scale : obj.scale) == ScaleKind::residual ? "residual" : "response";
    return j;
  }
};

double check_tau(double tau, const char* flag) {
  if (!(tau > 0.0 && tau < 1.0)) throw UsageError(std::string(flag) + " must lie in (0, 1)");
  return tau;
}

Config resolve(const regdepth_options* o) {
  regdepth_options defaults;
  regdepth_options_init(&defaults);
  if (!o) o = &defaults;
  Config c;
  c.seed = o->seed;
  c.tol.abs = o->tol < 0 ? 1e-12 : o->tol;
  if (!std::isfinite(c.tol.abs)) throw UsageError("tol must be finite");
  c.plan.n_random = o->n_directions;
  c.plan.seed = o->seed;
  c.plan.include_data_directions = o->data_directions != 0;
  c.plan.data_cap = o->candidate_cap;
  c.competitors = o->n_competitors;
  c.cap = o->candidate_cap;
  if (c.cap == 0) throw UsageError("candidate cap must be positive");
  c.timing = o->timing != 0;

  const std::string family = str_or(o->family, "rd");
  if (family == "obj") c.family = DepthFamily::obj;
  else if (family == "dc") c.family = DepthFamily::dc;
  else if (family == "rd") c.family = DepthFamily::rd;
  else if (family == "prd") c.family = DepthFamily::prd;
  else throw UsageError("unknown depth family '" + family + "' (obj, dc, rd, prd)");

  switch (c.family) {
    case DepthFamily::rd:
      c.method = str_or(o->method, "exact");
      if (c.method != "exact" && c.method != "sampled" && c.method != "baihe" && c.method != "competitor") {
        throw UsageError("unknown rd method '" + c.method + "' (exact, sampled, baihe, competitor)");
      }
      break;
    case DepthFamily::dc:
      c.method = str_or(o->method, "exact");
      if (c.method != "exact" && c.method != "sampled") {
        throw UsageError("unknown dc method '" + c.method + "' (exact, sampled)");
      }
      break;
    case DepthFamily::obj:
    case DepthFamily::prd:
      c.method = str_or(o->method, "sampled");
      if (c.method != "sampled") throw UsageError(std::string(to_string(c.family)) + " has no method '" + c.method + "'");
      break;
  }

  c.loss = str_or(o->loss, "square");
  if (c.loss == "square") {
    c.obj.loss = Loss::square();
  } else if (c.loss == "abs") {
    c.obj.loss = Loss::absolute();
  } else if (c.loss == "check") {
    c.loss_param = o->loss_param < 0 ? 0.5 : check_tau(o->loss_param, "tau");
    c.obj.loss = Loss::check(c.loss_param);
  } else if (c.loss == "huber") {
    c.loss_param = o->loss_param < 0 ? 1.345 : o->loss_param;
    if (!(c.loss_param > 0.0) || !std::isfinite(c.loss_param)) throw UsageError("huber k must be positive");
    c.obj.loss = Loss::huber(c.loss_param);
  } else {
    throw UsageError("unknown loss '" + c.loss + "' (square, abs, check, huber)");
  }
  if (o->loss_param >= 0 && c.loss != "huber") c.loss_param = check_tau(o->loss_param, "tau");

  const std::string agg = str_or(o->agg, "mean");
  if (agg == "mean") c.obj.agg = Aggregator::mean();
  else if (agg == "quantile") c.obj.agg = Aggregator::quantile(check_tau(o->agg_tau, "agg-tau"));
  else throw UsageError("unknown aggregator '" + agg + "' (mean, quantile)");

  const std::string t = str_or(o->t, "median");
  if (t == "median") c.prd.t = TSpec::median();
  else if (t == "quantile") c.prd.t = TSpec::quantile(check_tau(o->t_tau, "t-tau"));
  else if (t == "mean") c.prd.t = TSpec::mean();
  else throw UsageError("unknown T functional '" + t + "' (median, quantile, mean)");

  const ScaleKind scale = o->residual_scale ? ScaleKind::residual : ScaleKind::response;
  c.obj.scale = scale;
  c.prd.scale = scale;
  return c;
}

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json input_json(const regdepth_dataset& h) {
  Json j;
  j["source"] = h.source;
  j["response"] = h.response;
  j["intercept"] = h.ds.has_intercept();
  j["n"] = h.ds.n();
  j["p"] = h.ds.p();
  return j;
}

std::string config_hash(const Json& config) { return fnv1a_hex(dump_json(config, -1)); }

using Clock = std::chrono::steady_clock;

std::string envelope(const char* command, const Config& c, const Json& config, Json result, Clock::time_point t0) {
  Json doc;
  doc["tool_version"] = REGDEPTH_VERSION_STRING;
  doc["command"] = command;
  doc["seed"] = c.seed;
  doc["config_hash"] = config_hash(config);
  doc["config"] = config;
  doc["result"] = std::move(result);
  if (c.timing) {
    doc["elapsed_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
  return dump_json(doc) + "\n";
}

// One depth evaluator bound to a dataset and configuration; directions are
// generated once so grids reuse them.
struct BoundDepth {
  std::function<DepthValue(const Coef&)> eval;
  std::string method;
};

BoundDepth bind_depth(const Dataset& ds, const Config& c) {
  auto dirs = std::make_shared<DirectionSet>();
  const bool need_dirs = c.family == DepthFamily::prd || (c.family == DepthFamily::rd && c.method == "sampled") ||
                         (c.family == DepthFamily::rd && c.method == "baihe");
  if (need_dirs) *dirs = sample_directions(c.plan, ds.p(), &ds);
  switch (c.family) {
    case DepthFamily::obj:
      return {[&ds, c](const Coef& b) { return obj_depth(ds, b, c.obj); }, c.obj.loss.name() + "/" + c.obj.agg.name()};
    case DepthFamily::dc:
      if (c.method == "exact") return {[&ds, c](const Coef& b) { return dc_exact(ds, b, c.tol); }, "exact"};
      return {[&ds, c](const Coef& b) { return dc_sampled(ds, b, c.competitors, c.seed, c.tol); }, "sampled"};
    case DepthFamily::rd:
      if (c.method == "exact") {
        if (!(ds.has_intercept() && ds.p() == 2)) {
          throw Error(ErrorCode::wrong_shape, "rd exact needs p = 2 with an intercept column; use --method sampled");
        }
        return {[&ds, c](const Coef& b) { return rd_exact_simple(ds, b, c.tol); }, "exact"};
      }
      if (c.method == "sampled") return {[&ds, c, dirs](const Coef& b) { return rd_directions(ds, b, *dirs, c.tol); }, "sampled"};
      if (c.method == "baihe") return {[&ds, c](const Coef& b) { return rd_bai_he(ds, b, c.plan, c.tol); }, "baihe"};
      return {[&ds, c](const Coef& b) { return rd_competitor_bound(ds, b, c.competitors, c.seed, c.tol); }, "competitor"};
    case DepthFamily::prd:
      return {[&ds, c, dirs](const Coef& b) { return prd(ds, b, *dirs, c.prd); }, "prd:" + c.prd.t.name()};
  }
  throw UsageError("unknown depth family");
}

Json depth_value_json(const DepthValue& d) {
  Json j;
  j["value"] = d.value;
  if (d.exact()) {
    j["count"] = d.count;
    j["total"] = d.total;
  }
  return j;
}

Coef coef_of(const double* beta, std::size_t p, const Dataset& ds) {
  if (static_cast<Index>(p) != ds.p()) {
    throw Error(ErrorCode::dimension_mismatch, "beta has " + std::to_string(p) + " entries but the design has p = " +
                                                    std::to_string(ds.p()) + " columns");
  }
  Coef b(ds.p());
  for (std::size_t i = 0; i < p; ++i) b(static_cast<Index>(i)) = beta[i];
  if (!b.allFinite()) throw Error(ErrorCode::invalid_argument, "beta entries must be finite");
  return b;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

extern "C" {

void regdepth_options_init(regdepth_options* opts) {
  if (!opts) return;
  opts->seed = 1;
  opts->tol = -1.0;
  opts->n_directions = 512;
  opts->data_directions = 1;
  opts->n_competitors = 10000;
  opts->candidate_cap = 2000;
  opts->family = nullptr;
  opts->method = nullptr;
  opts->loss = nullptr;
  opts->loss_param = -1.0;
  opts->agg = nullptr;
  opts->agg_tau = 0.5;
  opts->t = nullptr;
  opts->t_tau = 0.5;
  opts->residual_scale = 0;
  opts->timing = 0;
}

const char* regdepth_version(void) { return REGDEPTH_VERSION_STRING; }

const char* regdepth_last_error(void) { return last_error.c_str(); }

const char* regdepth_status_name(int status) {
  switch (status) {
    case REGDEPTH_OK: return "ok";
    case REGDEPTH_E_INVALID_ARGUMENT: return "invalid_argument";
    case REGDEPTH_E_DIMENSION_MISMATCH: return "dimension_mismatch";
    case REGDEPTH_E_ZERO_SCALE: return "zero_scale";
    case REGDEPTH_E_DEGENERATE_DIRECTION: return "degenerate_direction";
    case REGDEPTH_E_ALL_DIRECTIONS_DEGENERATE: return "all_directions_degenerate";
    case REGDEPTH_E_WRONG_SHAPE: return "wrong_shape";
    case REGDEPTH_E_RANK_DEFICIENT: return "rank_deficient";
    case REGDEPTH_E_UNSUPPORTED_DIMENSION: return "unsupported_dimension";
    case REGDEPTH_E_IO: return "io";
    case REGDEPTH_E_PARSE: return "parse";
    case REGDEPTH_E_USAGE: return "usage";
    default: return "internal";
  }
}

void regdepth_string_free(char* s) { std::free(s); }

void regdepth_set_threads(unsigned n) { set_max_threads(n); }

int regdepth_dataset_from_csv(const char* path, const char* response, int intercept, regdepth_dataset** out) {
  return guarded([&] {
    require(path && response && out, "path, response and out");
    *out = nullptr;
    *out = new regdepth_dataset{load_dataset(path, response, intercept != 0), path, response};
  });
}

int regdepth_dataset_from_arrays(const double* X, const double* y, std::size_t n, std::size_t p, int intercept,
                                 regdepth_dataset** out) {
  return guarded([&] {
    require(X && y && out, "X, y and out");
    *out = nullptr;
    Matrix m(static_cast<Index>(n), static_cast<Index>(p));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = X[i * p + j];
    }
    Vector v = Eigen::Map<const Vector>(y, static_cast<Index>(n));
    *out = new regdepth_dataset{Dataset::create(std::move(m), std::move(v), intercept != 0), "<arrays>", ""};
  });
}

void regdepth_dataset_free(regdepth_dataset* ds) { delete ds; }

int regdepth_dataset_shape(const regdepth_dataset* ds, std::size_t* n, std::size_t* p) {
  return guarded([&] {
    require(ds && n && p, "ds, n and p");
    *n = static_cast<std::size_t>(ds->ds.n());
    *p = static_cast<std::size_t>(ds->ds.p());
  });
}

int regdepth_depth(const regdepth_dataset* h, const double* beta, std::size_t p, const regdepth_options* opts,
                   char** json_out) {
  return guarded([&] {
    require(h && beta && json_out, "ds, beta and json_out");
    *json_out = nullptr;
    const auto t0 = Clock::now();
    const Config c = resolve(opts);
    const Dataset& ds = h->ds;
    const Coef b = coef_of(beta, p, ds);

    Json config;
    config["command"] = "depth";
    config["input"] = input_json(*h);
    config["beta"] = vec_json(b);
    config["options"] = c.to_json();

    const BoundDepth bound = bind_depth(ds, c);
    const DepthValue d = bound.eval(b);
    Json result;
    result["depth_family"] = to_string(c.family);
    result["method"] = bound.method;
    result["beta"] = vec_json(b);
    result["value"] = d.value;
    if (d.exact()) {
      result["count"] = d.count;
      result["total"] = d.total;
    }
    if (c.family == DepthFamily::obj) result["unfitness"] = obj_unfitness(ds, b, c.obj);
    result["n"] = ds.n();
    result["p"] = ds.p();
    result["seed"] = c.seed;
    *json_out = dup_string(envelope("depth", c, config, std::move(result), t0));
  });
}

int regdepth_fit(const regdepth_dataset* h, const char* method, const regdepth_options* opts, char** json_out) {
  return guarded([&] {
    require(h && method && json_out, "ds, method and json_out");
    *json_out = nullptr;
    const auto t0 = Clock::now();
    const Config c = resolve(opts);
    const Dataset& ds = h->ds;
    const std::string m = method;

    Json config;
    config["command"] = "fit";
    config["input"] = input_json(*h);
    config["method"] = m;
    Json o;
    o["seed"] = c.seed;
    o["candidate_cap"] = c.cap;
    FitResult fit;
    if (m == "ls") {
      fit = fit_ls(ds);
    } else if (m == "lad") {
      fit = fit_obj(ds, {Loss::absolute(), Aggregator::mean(), c.obj.scale}, c.cap, c.seed);
    } else if (m == "quantile") {
      o["tau"] = c.loss_param;
      fit = fit_obj(ds, {Loss::check(c.loss_param), Aggregator::mean(), c.obj.scale}, c.cap, c.seed);
    } else if (m == "lms") {
      fit = fit_obj(ds, {Loss::square(), Aggregator::quantile(0.5), c.obj.scale}, c.cap, c.seed);
    } else if (m == "deepest-rd") {
      o["directions"] = c.plan.n_random;
      o["data_directions"] = c.plan.include_data_directions;
      fit = fit_deepest_rd(ds, c.plan, c.cap);
    } else if (m == "prd") {
      o["directions"] = c.plan.n_random;
      o["data_directions"] = c.plan.include_data_directions;
      o["t"] = c.prd.t.name();
      fit = fit_prd_minimax(ds, c.plan, c.prd, std::min<std::size_t>(c.cap, 500));
    } else {
      throw UsageError("unknown fit method '" + m + "' (ls, lad, quantile, lms, deepest-rd, prd)");
    }
    if (m == "lad" || m == "quantile" || m == "lms" || m == "prd") {
      o["scale"] = c.obj.scale == ScaleKind::residual ? "residual" : "response";
    }
    config["options"] = o;

    Json result;
    result["method"] = fit.method;
    result["coef"] = vec_json(fit.coef);
    result["achieved"] = fit.achieved;
    result["depth_kind"] = fit.depth_kind;
    result["depth"] = fit.depth;
    result["candidates_evaluated"] = fit.candidates_evaluated;
    result["seed"] = c.seed;
    *json_out = dup_string(envelope("fit", c, config, std::move(result), t0));
  });
}

int regdepth_contour(const regdepth_dataset* h, const double* bounds, std::size_t steps1, std::size_t steps2,
                     const regdepth_options* opts, char** csv_out) {
  return guarded([&] {
    require(h && csv_out, "ds and csv_out");
    *csv_out = nullptr;
    const Config c = resolve(opts);
    const Dataset& ds = h->ds;
    if (ds.p() != 2) {
      throw Error(ErrorCode::wrong_shape, "contour needs p = 2 coefficients, the design has p = " + std::to_string(ds.p()));
    }
    if (steps1 == 0 || steps2 == 0) throw Error(ErrorCode::invalid_argument, "contour grid needs at least one step per axis");

    double lo[2], hi[2];
    if (bounds) {
      for (int k = 0; k < 2; ++k) {
        lo[k] = bounds[2 * k];
        hi[k] = bounds[2 * k + 1];
        if (!(std::isfinite(lo[k]) && std::isfinite(hi[k]) && lo[k] <= hi[k])) {
          throw Error(ErrorCode::invalid_argument, "contour bounds must be finite with lo <= hi");
        }
      }
    } else {
      const auto cands = elemental_candidates(ds, c.cap, c.seed);
      if (cands.empty()) throw Error(ErrorCode::rank_deficient, "no nonsingular elemental subsets to set grid bounds");
      for (int k = 0; k < 2; ++k) {
        double a = cands[0](k), b = cands[0](k);
        for (const auto& e : cands) {
          a = std::min(a, e(k));
          b = std::max(b, e(k));
        }
        const double mid = 0.5 * (a + b);
        const double half = b > a ? 1.5 * (b - a) : 1.0 + std::abs(mid);
        lo[k] = mid - half;
        hi[k] = mid + half;
      }
    }

    Json config;
    config["command"] = "contour";
    config["input"] = input_json(*h);
    config["bounds"] = {lo[0], hi[0], lo[1], hi[1]};
    config["steps"] = {steps1, steps2};
    config["options"] = c.to_json();

    const BoundDepth bound = bind_depth(ds, c);
    auto axis = [](double a, double b, std::size_t steps, std::size_t i) {
      return steps == 1 ? 0.5 * (a + b) : a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1);
    };
    std::string out = "# tool_version=" + std::string(REGDEPTH_VERSION_STRING) + " seed=" + std::to_string(c.seed) +
                      " config_hash=" + config_hash(config) + "\n";
    out += "beta1,beta2,depth\n";
    for (std::size_t i = 0; i < steps1; ++i) {
      for (std::size_t j = 0; j < steps2; ++j) {
        Coef b(2);
        b << axis(lo[0], hi[0], steps1, i), axis(lo[1], hi[1], steps2, j);
        const DepthValue d = bound.eval(b);
        out += fmt17(b(0)) + "," + fmt17(b(1)) + "," + fmt17(d.value) + "\n";
      }
    }
    *csv_out = dup_string(out);
  });
}

int regdepth_axioms(const regdepth_dataset* h, const char* suite, std::size_t trials, const regdepth_options* opts,
                    char** json_out, int* passed) {
  return guarded([&] {
    require(h && suite && json_out && passed, "ds, suite, json_out and passed");
    *json_out = nullptr;
    *passed = 0;
    const auto t0 = Clock::now();
    const Config c = resolve(opts);
    const std::string s = suite;
    Suite which;
    if (s == "p1") which = Suite::p1;
    else if (s == "p2") which = Suite::p2;
    else if (s == "p3") which = Suite::p3;
    else if (s == "p4") which = Suite::p4;
    else if (s == "qc") which = Suite::qc;
    else if (s == "all") which = Suite::all;
    else throw UsageError("unknown suite '" + s + "' (p1, p2, p3, p4, qc, all)");
    if (trials == 0) throw UsageError("trials must be positive");

    Evaluator ev;
    ev.family = c.family;
    ev.obj = c.obj;
    ev.prd = c.prd;
    ev.tol = c.tol;
    ev.plan = c.plan;
    ev.rd_exact = !(c.family == DepthFamily::rd && c.method == "sampled");
    if (c.family == DepthFamily::rd && (c.method == "baihe" || c.method == "competitor")) {
      throw UsageError("axiom suites evaluate rd with --method exact or sampled");
    }
    if (c.family == DepthFamily::dc && c.method != "exact") throw UsageError("axiom suites evaluate dc exactly");

    SuiteOptions so;
    so.seed = c.seed;
    so.trials = trials;

    Json config;
    config["command"] = "axioms";
    config["input"] = input_json(*h);
    config["suite"] = s;
    config["trials"] = trials;
    config["options"] = c.to_json();

    const auto reports = run_suite(ev, h->ds, which, so);
    bool all = true;
    Json arr = Json::array();
    for (const auto& r : reports) {
      all = all && r.passed();
      arr.push_back(r.to_json());
    }
    Json result;
    result["depth"] = ev.name();
    result["suite"] = s;
    result["passed"] = all;
    result["reports"] = std::move(arr);
    *passed = all ? 1 : 0;
    *json_out = dup_string(envelope("axioms", c, config, std::move(result), t0));
  });
}

int regdepth_location_hd(const char* points_csv, const double* x, std::size_t dim, const regdepth_options* opts,
                         char** json_out) {
  return guarded([&] {
    require(points_csv && x && json_out, "points_csv, x and json_out");
    *json_out = nullptr;
    const auto t0 = Clock::now();
    const Config c = resolve(opts);
    const Matrix pts = load_points(points_csv);
    if (static_cast<Index>(dim) != pts.cols()) {
      throw Error(ErrorCode::dimension_mismatch, "point has " + std::to_string(dim) + " coordinates but the sample has " +
                                                      std::to_string(pts.cols()) + " columns");
    }
    Vector xv(static_cast<Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) xv(static_cast<Index>(i)) = x[i];

    Json config;
    config["command"] = "location-hd";
    config["input"] = {{"source", points_csv}, {"n", pts.rows()}, {"dim", pts.cols()}};
    config["x"] = vec_json(xv);
    config["competitors"] = c.competitors;
    config["seed"] = c.seed;

    const DepthValue hd = hd_location(pts, xv);
    const DepthValue nd = nd_location_sampled(pts, xv, c.competitors, c.seed);
    Json result;
    result["x"] = vec_json(xv);
    result["hd"] = depth_value_json(hd);
    result["nd"] = depth_value_json(nd);
    result["difference"] = nd.value - hd.value;
    result["n"] = pts.rows();
    result["dim"] = pts.cols();
    *json_out = dup_string(envelope("location-hd", c, config, std::move(result), t0));
  });
}

}  // extern "C"
