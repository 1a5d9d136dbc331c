#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regdepth/regdepth.h"

namespace {

enum Exit { ok = 0, axiom_failed = 1, input_error = 2, precondition_error = 3 };

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<double> tol;
  std::optional<std::size_t> directions;
  std::optional<std::size_t> competitors;
  std::optional<std::size_t> cap;
  bool no_data_directions = false;
  bool timing = false;
  bool intercept = true;
  std::string response = "y";
  std::string json_path;
};

struct DepthFlags {
  std::string family = "rd";
  std::string method;
  std::string loss = "square";
  std::optional<double> tau;
  std::optional<double> huber_k;
  std::string agg = "mean";
  double agg_tau = 0.5;
  std::string t = "median";
  bool residual_scale = false;
};

int exit_for(int status) {
  switch (status) {
    case REGDEPTH_OK: return ok;
    case REGDEPTH_E_IO:
    case REGDEPTH_E_PARSE:
    case REGDEPTH_E_USAGE: return input_error;
    default: return precondition_error;
  }
}

int fail(int status) {
  std::cerr << "regdepth: " << regdepth_status_name(status) << ": " << regdepth_last_error() << "\n";
  return exit_for(status);
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("REGDEPTH_SEED");
  if (!s || !*s) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || *s == '-') throw CLI::ValidationError("REGDEPTH_SEED", "not an unsigned integer: " + std::string(s));
  return static_cast<std::uint64_t>(v);
}

regdepth_options make_options(const Globals& g, const DepthFlags* d, std::uint64_t seed) {
  regdepth_options o;
  regdepth_options_init(&o);
  o.seed = seed;
  if (g.tol) o.tol = *g.tol;
  if (g.directions) o.n_directions = *g.directions;
  if (g.competitors) o.n_competitors = *g.competitors;
  if (g.cap) o.candidate_cap = *g.cap;
  o.data_directions = g.no_data_directions ? 0 : 1;
  o.timing = g.timing ? 1 : 0;
  if (d) {
    o.family = d->family.c_str();
    o.method = d->method.empty() ? nullptr : d->method.c_str();
    o.loss = d->loss.c_str();
    o.agg = d->agg.c_str();
    o.agg_tau = d->agg_tau;
    o.t = d->t.c_str();
    if (d->tau) {
      o.t_tau = *d->tau;
      o.loss_param = *d->tau;
    }
    if (d->loss == "huber") o.loss_param = d->huber_k ? *d->huber_k : -1.0;
    o.residual_scale = d->residual_scale ? 1 : 0;
  }
  return o;
}

void add_depth_flags(CLI::App* cmd, DepthFlags& d) {
  cmd->add_option("--depth", d.family, "Depth family")->check(CLI::IsMember({"obj", "dc", "rd", "prd"}));
  cmd->add_option("--method", d.method, "Evaluation method (rd: exact|sampled|baihe|competitor, dc: exact|sampled)")
      ->check(CLI::IsMember({"exact", "sampled", "baihe", "competitor"}));
  cmd->add_option("--loss", d.loss, "Objective loss")->check(CLI::IsMember({"square", "abs", "check", "huber"}));
  cmd->add_option("--tau", d.tau, "Quantile level for the check loss or the quantile T")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--huber-k", d.huber_k, "Huber threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--agg", d.agg, "Aggregator")->check(CLI::IsMember({"mean", "quantile"}));
  cmd->add_option("--agg-tau", d.agg_tau, "Aggregator quantile level")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--t", d.t, "Univariate location functional for prd")->check(CLI::IsMember({"median", "quantile", "mean"}));
  cmd->add_flag("--residual-scale", d.residual_scale, "Scale by the MAD of the residuals instead of the response");
}

struct Owned {
  char* s = nullptr;
  ~Owned() { regdepth_string_free(s); }
};

struct DatasetHandle {
  regdepth_dataset* h = nullptr;
  ~DatasetHandle() { regdepth_dataset_free(h); }
};

bool emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "regdepth: io: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regression depth: evaluation, deepest fits, depth contours and axiom checks"};
  app.set_version_flag("--version", std::string(regdepth_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice (default: $REGDEPTH_SEED, else 1)");
  app.add_option("--threads", g.threads, "Worker thread cap (default: machine parallelism)");
  app.add_option("--tol", g.tol, "Absolute zero-residual tolerance, scaled by 1 + |y_i|")->check(CLI::NonNegativeNumber);
  app.add_option("--directions", g.directions, "Random directions for sampled depths");
  app.add_option("--competitors", g.competitors, "Competitors for sampled Carrizosa and competitor depths");
  app.add_option("--cap", g.cap, "Cap on elemental subsets and data directions")->check(CLI::PositiveNumber);
  app.add_flag("--no-data-directions", g.no_data_directions, "Use random directions only");
  app.add_option("--response", g.response, "Name of the response column");
  app.add_flag("--intercept,!--no-intercept", g.intercept, "Prepend an intercept column (default on)");
  app.add_option("--json", g.json_path, "Write the JSON document to this path instead of stdout");
  app.add_flag("--timing", g.timing, "Add elapsed_ms to the output");

  std::string input;
  DepthFlags depth_flags;

  auto* depth = app.add_subcommand("depth", "Depth of one coefficient vector");
  std::vector<double> beta;
  add_depth_flags(depth, depth_flags);
  depth->add_option("--beta", beta, "Coefficients v1,v2,...")->delimiter(',')->required();
  depth->add_option("input", input, "CSV data file")->required();

  auto* fit = app.add_subcommand("fit", "Fit a regression");
  std::string fit_method;
  DepthFlags fit_flags;
  fit->add_option("--method", fit_method, "Estimator")
      ->check(CLI::IsMember({"ls", "lad", "quantile", "lms", "deepest-rd", "prd"}))
      ->required();
  fit->add_option("--tau", fit_flags.tau, "Quantile level")->check(CLI::Range(0.0, 1.0));
  fit->add_option("--t", fit_flags.t, "Univariate location functional for prd")->check(CLI::IsMember({"median", "quantile", "mean"}));
  fit->add_flag("--residual-scale", fit_flags.residual_scale, "Scale by the MAD of the residuals");
  fit->add_option("input", input, "CSV data file")->required();

  auto* contour = app.add_subcommand("contour", "Depth over a (beta1, beta2) grid as CSV");
  DepthFlags contour_flags;
  std::size_t steps = 41;
  std::vector<double> bounds;
  std::string out_path;
  add_depth_flags(contour, contour_flags);
  contour->add_option("--steps", steps, "Grid points per axis");
  contour->add_option("--bounds", bounds, "lo1,hi1,lo2,hi2 (default: 3x the elemental fit range)")
      ->delimiter(',')
      ->expected(4);
  contour->add_option("--out", out_path, "CSV output path (default stdout)");
  contour->add_option("input", input, "CSV data file")->required();

  auto* axioms = app.add_subcommand("axioms", "Run axiom checks");
  DepthFlags axiom_flags;
  std::string suite = "all";
  std::size_t trials = 200;
  add_depth_flags(axioms, axiom_flags);
  axioms->add_option("--suite", suite, "Checks to run")->check(CLI::IsMember({"p1", "p2", "p3", "p4", "qc", "all"}));
  axioms->add_option("--trials", trials, "Trials per check")->check(CLI::PositiveNumber);
  axioms->add_option("input", input, "CSV data file")->required();

  auto* location = app.add_subcommand("location-hd", "Halfspace and normalized depth of a point in a sample");
  std::vector<double> point;
  location->add_option("--point", point, "Coordinates x1,x2,...")->delimiter(',')->required();
  location->add_option("input", input, "CSV of sample points, one column per coordinate")->required();

  std::uint64_t seed = 1;
  try {
    app.parse(argc, argv);
    if (g.seed) seed = *g.seed;
    else if (auto s = env_seed()) seed = *s;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  if (g.threads) regdepth_set_threads(*g.threads);

  auto load = [&](DatasetHandle& ds) {
    return regdepth_dataset_from_csv(input.c_str(), g.response.c_str(), g.intercept ? 1 : 0, &ds.h);
  };

  if (location->parsed()) {
    const regdepth_options o = make_options(g, nullptr, seed);
    Owned json;
    if (int st = regdepth_location_hd(input.c_str(), point.data(), point.size(), &o, &json.s)) return fail(st);
    return emit(json.s, g.json_path) ? ok : input_error;
  }

  DatasetHandle ds;
  if (int st = load(ds)) return fail(st);

  if (depth->parsed()) {
    const regdepth_options o = make_options(g, &depth_flags, seed);
    Owned json;
    if (int st = regdepth_depth(ds.h, beta.data(), beta.size(), &o, &json.s)) return fail(st);
    return emit(json.s, g.json_path) ? ok : input_error;
  }

  if (fit->parsed()) {
    const regdepth_options o = make_options(g, &fit_flags, seed);
    Owned json;
    if (int st = regdepth_fit(ds.h, fit_method.c_str(), &o, &json.s)) return fail(st);
    return emit(json.s, g.json_path) ? ok : input_error;
  }

  if (contour->parsed()) {
    const regdepth_options o = make_options(g, &contour_flags, seed);
    Owned csv;
    if (int st = regdepth_contour(ds.h, bounds.empty() ? nullptr : bounds.data(), steps, steps, &o, &csv.s)) {
      return fail(st);
    }
    return emit(csv.s, out_path) ? ok : input_error;
  }

  if (axioms->parsed()) {
    const regdepth_options o = make_options(g, &axiom_flags, seed);
    Owned json;
    int passed = 0;
    if (int st = regdepth_axioms(ds.h, suite.c_str(), trials, &o, &json.s, &passed)) return fail(st);
    if (!emit(json.s, g.json_path)) return input_error;
    return passed ? ok : axiom_failed;
  }
  return input_error;
}
