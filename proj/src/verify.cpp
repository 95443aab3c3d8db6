#include "fisph/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "fisph/harmonics.hpp"
#include "fisph/kernels.hpp"
#include "fisph/kloosterman.hpp"
#include "fisph/modular.hpp"
#include "fisph/series.hpp"
#include "fisph/words.hpp"

namespace fisph {

namespace {

using clock_type = std::chrono::steady_clock;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

SuiteResult make_suite(const std::string& name, int criterion) {
  SuiteResult s;
  s.name = name;
  s.criterion = criterion;
  return s;
}

bool deep(const VerifyConfig& cfg) { return cfg.profile == "deep"; }

double threshold(const VerifyConfig& cfg, const std::string& suite, double def) {
  auto it = cfg.thresholds.find(suite);
  return it == cfg.thresholds.end() ? def : it->second;
}

ClosedFormOptions closed_options(const VerifyConfig& cfg, double scale = 1.0) {
  ClosedFormOptions o;
  o.threads = cfg.threads;
  o.c_max_scale = scale * (deep(cfg) ? 2.0 : 1.0);
  return o;
}

void add_check(SuiteResult& s, const std::string& name, double value, double thr, const std::string& detail = {}) {
  s.checks.push_back({name, value, thr, value <= thr, detail});
}

void finish(SuiteResult& s, clock_type::time_point t0) {
  s.runtime_s = std::chrono::duration<double>(clock_type::now() - t0).count();
  s.pass = !s.checks.empty();
  s.value = s.checks.empty() ? 0.0 : s.checks.front().value;
  for (const CheckResult& c : s.checks) {
    s.pass = s.pass && c.pass;
    s.value = std::max(s.value, c.value);
  }
  if (s.time_limit_s > 0.0 && s.runtime_s > s.time_limit_s) {
    s.pass = false;
    s.notes.push_back("runtime limit exceeded");
  }
}

const std::vector<double> kFeRadii = {0.0, 0.5, 1.0, std::sqrt(2.0), 2.0};

SuiteResult suite_functional(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("functional_equation", 1);
  s.threshold = threshold(cfg, s.name, 1e-6);
  s.time_limit_s = 120.0;
  CoefficientCache cache(closed_options(cfg));
  FunctionalOptions fo;
  for (int p = 5; p <= 12; ++p) {
    cache.ensure({p}, kFeRadii, 25, true);
    double worst = 0.0, bound = 0.0;
    for (double r : kFeRadii)
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          const HalfPlanePoint tau(-0.5 + 0.25 * i, 0.7 + 0.2 * j);
          const FunctionalResidual res = functional_equation_residual(p, tau, r, cache, fo);
          worst = std::max(worst, res.residual);
          bound = std::max(bound, res.bound);
        }
    add_check(s, "p=" + std::to_string(p), worst, s.threshold, "max error bound " + fmt("%.3g", bound));
  }
  finish(s, t0);
  return s;
}

SuiteResult suite_two_method(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("two_method", 2);
  s.threshold = threshold(cfg, s.name, 1e-6);
  s.time_limit_s = 300.0;
  const std::vector<double> rs = {0.0, 0.3, 1.0, std::sqrt(2.0), 2.5};
  ContourOptions co;
  co.c_max = deep(cfg) ? 64 : 32;
  ClosedFormOptions matched = closed_options(cfg);
  matched.c_max = co.c_max;
  matched.c_max_scale = 1.0;
  matched.accelerate = false;
  std::vector<int> ns;
  for (int n = 1; n <= 10; ++n) ns.push_back(n);
  double own = 0.0;
  for (int p : {6, 8, 10}) {
    double worst = 0.0;
    std::vector<ClosedTask> full_tasks;
    for (double r : rs)
      for (int t = 0; t < 2; ++t) full_tasks.push_back({p, t == 1, r, 10});
    const auto full = coeff_closed_batch(full_tasks, closed_options(cfg));
    std::size_t k = 0;
    for (double r : rs)
      for (int t = 0; t < 2; ++t, ++k) {
        const auto cont = coeff_contour_batch(p, ns, r, t == 1, co);
        const auto cl = coeff_closed_batch({{p, t == 1, r, 10}}, matched);
        for (std::size_t i = 0; i < ns.size(); ++i) {
          worst = std::max(worst, std::abs(cont[i].value - cl[i].value) / (1.0 + std::abs(cl[i].value)));
          const CoefficientResult& f = full[k * 10 + i];
          own = std::max(own, std::abs(cont[i].value - f.value) / (1.0 + std::abs(f.value)));
        }
      }
    add_check(s, "p=" + std::to_string(p), worst, s.threshold, "contour and closed form both truncated at c <= " +
                                                                   std::to_string(co.c_max));
  }
  s.notes.push_back("contour at c <= " + std::to_string(co.c_max) + " against the extrapolated closed form: " +
                    fmt("%.3g", own) + " (c-tail of the truncated series, informational)");
  finish(s, t0);
  return s;
}

SuiteResult suite_radial(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("radial", 3);
  s.threshold = threshold(cfg, s.name, 1e-6);
  s.time_limit_s = 300.0;
  const std::vector<double> rs = {0.0, 0.7, 1.3, std::sqrt(2.0)};
  const std::vector<HalfPlanePoint> taus = {{0.0, 1.0}, {0.3, 1.2}, {0.0, 2.0}};
  CoefficientCache cache(closed_options(cfg));
  for (int p = 5; p <= 8; ++p) {
    cache.ensure({p}, rs, 25, true);
    double worst = 0.0, err = 0.0;
    for (double r : rs)
      for (const HalfPlanePoint& tau : taus) {
        const RadialResidual res = radial_residual(p, tau, r, 25, cache);
        worst = std::max(worst, res.residual);
        err = std::max(err, res.coeff_error);
      }
    add_check(s, "p=" + std::to_string(p), worst, s.threshold, "coefficient error bound " + fmt("%.3g", err));
  }
  finish(s, t0);
  return s;
}

SuiteResult suite_poincare(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("poincare", 4);
  s.threshold = threshold(cfg, s.name, 1e-6);
  s.time_limit_s = 120.0;
  PoincareOptions po;
  double largest = 0.0;
  for (int k = 3; k <= 6; ++k) {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
      const auto P = poincare_coeff_batch(k, m, 6, po);
      const auto b = coeff_closed_batch({{2 * k, false, std::sqrt(double(m)), 6}}, closed_options(cfg));
      for (int n = 1; n <= 6; ++n) {
        if (n == m) continue;
        worst = std::max(worst, std::abs(b[n - 1].value + P[n - 1].value) / (1.0 + std::abs(P[n - 1].value)));
        if (k == 6) largest = std::max(largest, std::abs(P[n - 1].value));
      }
    }
    add_check(s, "k=" + std::to_string(k), worst, s.threshold, k == 6 ? "cusp-form weight, sides nonzero" : "");
  }
  s.notes.push_back("k = 3, 4, 5: both sides vanish for m != n; k = 6 added, largest |P| = " + fmt("%.6g", largest));
  finish(s, t0);
  return s;
}

SuiteResult suite_vanishing(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("vanishing", 5);
  s.threshold = threshold(cfg, s.name, 1e-8);
  ContourOptions co;
  co.c_max = deep(cfg) ? 64 : 32;
  for (int p = 5; p <= 10; ++p) {
    double worst = 0.0;
    for (double r : {0.0, 1.0, 2.0})
      for (int t = 0; t < 2; ++t)
        for (const CoefficientResult& c : coeff_contour_batch(p, {-3, -2, -1, 0}, r, t == 1, co))
          worst = std::max(worst, std::abs(c.value));
    add_check(s, "p=" + std::to_string(p), worst, s.threshold);
  }
  finish(s, t0);
  return s;
}

SuiteResult suite_interpolation(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("interpolation", 6);
  s.threshold = threshold(cfg, s.name, 1e-4);
  s.time_limit_s = 900.0;
  const int d = 5;
  CoefficientCache cache(closed_options(cfg));
  KernelEngine engine(d, cache, 25);
  InterpolateOptions io;
  if (deep(cfg)) io.m_extra = 16;
  std::vector<std::vector<double>> dirs = {{1, 0, 0, 0, 0}, {0.3, -0.5, 0.2, 0.7, 0.1}};
  for (auto& v : dirs) {
    double n = 0.0;
    for (double x : v) n += x * x;
    for (double& x : v) x /= std::sqrt(n);
  }
  std::vector<std::vector<double>> xs = {{0, 0, 0, 0, 0}};
  for (double rad : {0.4, 0.8, 1.2, 1.6})
    for (const auto& v : dirs) {
      std::vector<double> x(d);
      for (int i = 0; i < d; ++i) x[i] = rad * v[i];
      xs.push_back(x);
    }
  const std::vector<HalfPlanePoint> taus = {{0.0, 1.0}, {0.2, 1.1}};
  double offdiag = 0.0;
  int policy = 0, used = 0;
  for (int m0 = 0; m0 <= 2; ++m0) {
    const HarmonicPoly u0 = m0 == 0   ? HarmonicPoly::constant(d)
                            : m0 == 1 ? HarmonicPoly::coordinate_product(d, {0})
                                      : HarmonicPoly::coordinate_product(d, {0, 1});
    const SphereQuadrature quad = build_quadrature(d, interpolation_quadrature_degree(m0, io));
    double worst = 0.0;
    for (const HalfPlanePoint& tau : taus) {
      const HarmonicGaussian f(u0, tau);
      for (const auto& x : xs) {
        const InterpolationReport rep = interpolate(f, x, 25, quad, engine, io);
        worst = std::max(worst, rep.residual);
        offdiag = std::max(offdiag, rep.max_offdiag);
        policy = std::max(policy, rep.m_policy);
        used = std::max(used, rep.m_used);
      }
    }
    add_check(s, "m0=" + std::to_string(m0), worst, s.threshold);
  }
  s.notes.push_back("kernel terms summed for m <= " + std::to_string(used) + "; policy value " +
                    std::to_string(policy) + "; larger m integrate to zero against u0 by orthogonality");
  s.notes.push_back("largest m != m0 kernel term after integration: " + fmt("%.3g", offdiag));
  finish(s, t0);
  return s;
}

SuiteResult suite_modular(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("modular", 7);
  const bool over = cfg.thresholds.count(s.name) > 0;
  const double t_gauss = over ? cfg.thresholds.at(s.name) : 1e-10;
  const double t_cocycle = over ? cfg.thresholds.at(s.name) : 1e-9;
  s.threshold = t_cocycle;
  double worst = 0.0;
  long mism = 0;
  for (std::int64_t c = 1; c <= 200; ++c)
    for (std::int64_t d = 0; d < 2 * c; ++d) {
      if (gcd64(c, d) != 1) continue;
      const cplx g = g_small(c, d).value;
      const double c4 = double(c) * c * c * c;
      worst = std::max(worst, std::abs(std::pow(g, 8) - c4) / c4);
      if ((c % 2 == 0) != (d % 2 == 0) && std::abs(g / std::sqrt(double(c)) - eighth_root(gauss_root_index(c, d))) > 1e-9)
        ++mism;
    }
  add_check(s, "g^8 = c^4, c <= 200", worst, t_gauss);
  add_check(s, "root index closed form mismatches", double(mism), 0.0);
  worst = 0.0;
  for (int p = 2; p <= 16; p += 2)
    for (std::int64_t c = 1; c <= 12; ++c)
      for (std::int64_t d = -2 * c; d <= 2 * c; ++d) {
        if (gcd64(c, d) != 1 || (c % 2) == (floor_mod(d, 2))) continue;
        for (double x : {-0.5, 0.0, 0.3})
          for (double y : {0.2, 0.5, 1.0}) {
            const HalfPlanePoint tau(x, y);
            const cplx a = theta_cocycle_power(c, d, tau, p), b = theta_quotient_power(c, d, tau, p);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
          }
      }
  add_check(s, "cocycle vs theta quotient, even p <= 16", worst, t_cocycle);
  worst = 0.0;
  for (double x : {-1.0, -0.5, 0.0, 0.25, 0.5, 1.0})
    for (double y : {0.2, 0.5, 1.0, 2.0}) {
      const HalfPlanePoint tau(x, y);
      const cplx j = theta_quotient_power(1, 0, tau, -1);
      worst = std::max(worst, std::abs(j - branch_power(tau, 0.5)));
    }
  add_check(s, "j(S, tau) = (-i tau)^(1/2)", worst, t_gauss);
  finish(s, t0);
  return s;
}

SuiteResult suite_words(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("words", 8);
  s.threshold = threshold(cfg, s.name, 0.0);
  long mism = 0, rows = 0, ineq = 0, members = 0;
  for (RowKind kind : {RowKind::P, RowKind::Ptilde})
    for (std::int64_t c = 1; c <= 200; ++c)
      for (std::int64_t d = -2 * c; d <= 2 * c; ++d) {
        if (!admissible(c, d, kind)) continue;
        ++rows;
        const std::int64_t a = alpha_entry({c, d, kind});
        if (a != alpha_by_words({c, d, kind})) ++mism;
        if (std::llabs(a) > c) ++ineq;
      }
  const int L = deep(cfg) ? 12 : 10;
  for (const WordElement& w : enumerate_B_words(L)) {
    UnimodularMatrix m = word_to_matrix(w);
    for (int t = 0; t < 2; ++t) {
      const UnimodularMatrix M = t == 0 ? m : m * s_bar();
      ++members;
      if (std::llabs(M.a) > std::llabs(M.c)) ++ineq;
    }
  }
  add_check(s, "alpha mismatches over " + std::to_string(rows) + " rows", double(mism), s.threshold);
  add_check(s, "|a| > |c| violations over " + std::to_string(members) + " matrices", double(ineq), s.threshold);
  finish(s, t0);
  return s;
}

SuiteResult suite_harmonics(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("harmonics", 9);
  const bool over = cfg.thresholds.count(s.name) > 0;
  const double t_rep = over ? cfg.thresholds.at(s.name) : 1e-10;
  const double t_mom = over ? cfg.thresholds.at(s.name) : 1e-13;
  s.threshold = t_rep;
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int d = 3; d <= 6; ++d) {
    for (int m = 0; m <= 8; ++m) {
      const SphereQuadrature q = build_quadrature(d, 2 * m);
      std::vector<HarmonicPoly> us = {HarmonicPoly::re_power(d, m, 0, 1), HarmonicPoly::im_power(d, m, 1, 2)};
      if (m == 0) us = {HarmonicPoly::constant(d)};
      std::vector<double> w(d);
      for (int trial = 0; trial < 2; ++trial) {
        double n = 0.0;
        for (double& v : w) {
          v = nd(rng);
          n += v * v;
        }
        for (double& v : w) v /= std::sqrt(n);
        for (const HarmonicPoly& u : us) {
          if (u.is_zero()) continue;
          double acc = 0.0;
          for (std::size_t i = 0; i < q.size(); ++i) {
            double t = 0.0;
            for (int k = 0; k < d; ++k) t += q.nodes(k, i) * w[k];
            acc += q.weights(i) * u.eval(q.nodes.col(i).data()) * zonal_eval({d, m}, t);
          }
          worst = std::max(worst, std::abs(acc - u.eval(w)));
        }
      }
    }
  }
  add_check(s, "zonal reproducing, d <= 6, m <= 8", worst, t_rep);
  worst = 0.0;
  for (int d = 3; d <= 6; ++d) {
    const int D = 10;
    const SphereQuadrature q = build_quadrature(d, D);
    std::vector<int> a(d, 0);
    // all exponent vectors with |a| <= D
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == d) {
        double acc = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) {
          double v = q.weights(k);
          for (int j = 0; j < d; ++j)
            for (int e = 0; e < a[j]; ++e) v *= q.nodes(j, k);
          acc += v;
        }
        worst = std::max(worst, std::abs(acc - monomial_moment(a)));
        return;
      }
      for (int e = 0; e <= left; ++e) {
        a[i] = e;
        self(self, i + 1, left - e);
      }
      a[i] = 0;
    };
    rec(rec, 0, D);
  }
  add_check(s, "quadrature moments, degree <= 10", worst, t_mom);
  worst = 0.0;
  const int d = 5;
  for (int m = 0; m <= 3; ++m) {
    const HarmonicPoly u = m == 0 ? HarmonicPoly::constant(d) : HarmonicPoly::re_power(d, m, 0, 1);
    const SphereQuadrature q = build_quadrature(d, 2 * m + 2);
    const double nrm = std::sqrt(inner_product_exact(u, u));
    for (const HalfPlanePoint& tau : {HalfPlanePoint(0.0, 1.0), HalfPlanePoint(0.3, 0.8), HalfPlanePoint(-0.4, 1.7)}) {
      const HarmonicGaussian f(u, tau, 1.0 / nrm);
      const HarmonicGaussian fh = hecke_funk_transform(f);
      const int p = d + 2 * m;
      // L f is a radial Gaussian in R^p; read off its amplitude at y = 1
      const cplx lf1 = lift_numeric([&](const double* x) { return f.eval(x); }, u, 1.0, q);
      const RadialGaussian g{p, tau, lf1 / RadialGaussian{p, tau, 1.0}.eval(1.0)};
      const RadialGaussian gh = radial_transform(g);
      cplx im = 1.0;
      for (int k = 0; k < m; ++k) im *= cplx(0.0, -1.0);
      for (double y : {0.5, 1.0, 1.7}) {
        const cplx lhs = lift_numeric([&](const double* x) { return fh.eval(x); }, u, y, q);
        worst = std::max(worst, std::abs(lhs - im * gh.eval(y)));
        const cplx lfy = lift_numeric([&](const double* x) { return f.eval(x); }, u, y, q);
        worst = std::max(worst, std::abs(lfy - g.eval(y)));
        worst = std::max(worst, std::abs(lift(fh, u, p, y, q) - lhs));
      }
    }
  }
  add_check(s, "lift intertwining", worst, t_rep);
  finish(s, t0);
  return s;
}

double fit_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
  const double k = double(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

SuiteResult suite_growth(const VerifyConfig& cfg) {
  const auto t0 = clock_type::now();
  SuiteResult s = make_suite("growth", 10);
  s.threshold = threshold(cfg, s.name, 0.25);
  CoefficientCache cache(closed_options(cfg, 0.25));
  double c1 = 0.0, c2 = 0.0, excess1 = -1e9, excess2 = -1e9, worst1 = 0.0, worst2 = 0.0;
  int p1 = 0, p2 = 0;
  for (int p = 5; p <= 12; ++p) {
    cache.ensure({p}, kFeRadii, 25, true);
    // per-n sup over the grid, raw and with the r-weight of the r > 0 bound
    std::vector<double> lx, ly1, ly2;
    for (int n = 1; n <= 25; ++n) {
      double m1 = 0.0, m2 = 0.0;
      for (double r : kFeRadii)
        for (int t = 0; t < 2; ++t) {
          const double b = std::abs(cache.get(p, n, r, t == 1).value);
          m1 = std::max(m1, b);
          if (r > 0.0) m2 = std::max(m2, b * std::pow(r, p / 2.0 - 2.25));
        }
      c1 = std::max(c1, m1 * std::pow(p / 47.0, p / 4.0) * std::pow(n, -p / 2.0));
      c2 = std::max(c2, m2 * std::pow(n, -p / 4.0 - 1.125));
      lx.push_back(std::log(double(n)));
      ly1.push_back(std::log(m1));
      ly2.push_back(std::log(m2));
    }
    const double e1 = fit_slope(lx, ly1) - p / 2.0, e2 = fit_slope(lx, ly2) - (p / 4.0 + 1.125);
    if (e1 > excess1) excess1 = e1, p1 = p, worst1 = e1 + p / 2.0;
    if (e2 > excess2) excess2 = e2, p2 = p, worst2 = e2 + p / 4.0 + 1.125;
  }
  add_check(s, "coefficient slope - p/2", excess1, s.threshold,
            "p=" + std::to_string(p1) + " slope " + fmt("%.4g", worst1));
  add_check(s, "weighted coefficient slope - (p/4 + 9/8), r > 0", excess2, s.threshold,
            "p=" + std::to_string(p2) + " slope " + fmt("%.4g", worst2));
  ClosedFormOptions ko = closed_options(cfg, 0.25);
  CoefficientCache kcache(ko);
  KernelEngine engine(5, kcache, 30);
  const GrowthReport g = kernel_growth_probe(engine, {1, 2, 3, 4, 6, 8, 11, 15, 20, 25, 30}, 0.5, 2.0);
  add_check(s, "kernel slope - (5d/4 + 1/8), d = 5", g.slope - g.exponent, s.threshold,
            "slope " + fmt("%.4g", g.slope));
  s.notes.push_back("max |b| (p/47)^(p/4) n^(-p/2) = " + fmt("%.6g", c1));
  s.notes.push_back("max |b| r^(p/2-9/4) n^(-p/4-9/8) = " + fmt("%.6g", c2));
  s.notes.push_back("kernel sup / n^6.375 max = " + fmt("%.6g", g.c_empirical));
  finish(s, t0);
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"functional_equation", "two_method", "radial",  "poincare",
                                                 "vanishing",           "interpolation", "modular", "words",
                                                 "harmonics",           "growth"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

double default_threshold(const std::string& suite) {
  static const std::map<std::string, double> t = {
      {"functional_equation", 1e-6}, {"two_method", 1e-6}, {"radial", 1e-6}, {"poincare", 1e-6},
      {"vanishing", 1e-8},           {"interpolation", 1e-4}, {"modular", 1e-9}, {"words", 0.0},
      {"harmonics", 1e-10},          {"growth", 0.25}};
  return t.at(suite);
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "functional_equation") return suite_functional(cfg);
  if (name == "two_method") return suite_two_method(cfg);
  if (name == "radial") return suite_radial(cfg);
  if (name == "poincare") return suite_poincare(cfg);
  if (name == "vanishing") return suite_vanishing(cfg);
  if (name == "interpolation") return suite_interpolation(cfg);
  if (name == "modular") return suite_modular(cfg);
  if (name == "words") return suite_words(cfg);
  if (name == "harmonics") return suite_harmonics(cfg);
  if (name == "growth") return suite_growth(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace fisph
