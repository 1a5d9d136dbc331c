#include "regdepth/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace regdepth {

namespace {

struct Simplex {
  std::vector<Coef> x;
  std::vector<double> f;
};

void order(Simplex& s) {
  std::vector<std::size_t> idx(s.x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
  Simplex out;
  for (auto i : idx) {
    out.x.push_back(std::move(s.x[i]));
    out.f.push_back(s.f[i]);
  }
  s = std::move(out);
}

double diameter(const Simplex& s) {
  double d = 0.0;
  for (std::size_t i = 1; i < s.x.size(); ++i) d = std::max(d, (s.x[i] - s.x[0]).lpNorm<Eigen::Infinity>());
  return d;
}

// Non-finite values compare as +inf so the simplex moves away from them.
double safe(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

MinimizeResult nelder_mead(const std::function<double(const Coef&)>& f, const Coef& start,
                           const NelderMeadOptions& opts) {
  const Index p = start.size();
  MinimizeResult res{start, safe(f(start)), 1};
  auto eval = [&](const Coef& x) {
    ++res.evaluations;
    return safe(f(x));
  };

  for (int run = 0; run <= opts.restarts; ++run) {
    Simplex s;
    s.x.push_back(res.x);
    s.f.push_back(res.f);
    for (Index j = 0; j < p; ++j) {
      Coef v = res.x;
      v(j) += v(j) != 0.0 ? 0.05 * v(j) : 0.00025;
      s.f.push_back(eval(v));
      s.x.push_back(std::move(v));
    }
    order(s);

    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      if (diameter(s) < opts.tol * (1.0 + s.x[0].norm())) break;
      const std::size_t worst = s.x.size() - 1;
      Coef centroid = Coef::Zero(p);
      for (std::size_t i = 0; i < worst; ++i) centroid += s.x[i];
      centroid /= static_cast<double>(worst);

      const Coef xr = centroid + opts.reflection * (centroid - s.x[worst]);
      const double fr = eval(xr);
      if (fr < s.f[0]) {
        const Coef xe = centroid + opts.expansion * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[worst] = xe;
          s.f[worst] = fe;
        } else {
          s.x[worst] = xr;
          s.f[worst] = fr;
        }
      } else if (fr < s.f[worst - 1]) {
        s.x[worst] = xr;
        s.f[worst] = fr;
      } else {
        const bool outside = fr < s.f[worst];
        const Coef xc = outside ? Coef(centroid + opts.contraction * (xr - centroid))
                                : Coef(centroid + opts.contraction * (s.x[worst] - centroid));
        const double fc = eval(xc);
        if (fc < (outside ? fr : s.f[worst])) {
          s.x[worst] = xc;
          s.f[worst] = fc;
        } else {
          for (std::size_t i = 1; i < s.x.size(); ++i) {
            s.x[i] = s.x[0] + opts.shrink * (s.x[i] - s.x[0]);
            s.f[i] = eval(s.x[i]);
          }
        }
      }
      order(s);
    }

    const bool improved = s.f[0] < res.f;
    if (improved) {
      res.x = s.x[0];
      res.f = s.f[0];
    }
    if (!improved && run > 0) break;
  }
  return res;
}

}  // namespace regdepth
