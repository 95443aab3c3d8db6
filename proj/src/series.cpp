#include "fisph/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fisph/words.hpp"

namespace fisph {

namespace {

constexpr double kBernoulli[] = {1.0 / 6.0,     -1.0 / 30.0,   1.0 / 42.0, -1.0 / 30.0,
                                 5.0 / 66.0,    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0,
                                 43867.0 / 798.0, -174611.0 / 330.0};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// integral of (1 + u^2)^{-s/2} over the real line
double k_const(double s) { return std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (s - 1.0)) - std::lgamma(0.5 * s)); }

cplx unit(double ph) { return {std::cos(ph), std::sin(ph)}; }

}  // namespace

std::int64_t coupled_halfwidth(std::int64_t c_max, double re_tau) {
  const auto a = 3 * c_max;
  const auto b = static_cast<std::int64_t>(std::ceil(double(c_max) * (1.0 + std::fabs(re_tau)))) + 10;
  return std::max(a, b);
}

double box_tail_bound(int p, const HalfPlanePoint& tau, std::int64_t C, std::int64_t D) {
  const double s = 0.5 * p;
  const double x = std::fabs(tau.re), y = tau.im;
  double t = 0.0;
  for (std::int64_t c = 1; c <= C; ++c) {
    const double gap = double(D) - double(c) * x;
    if (gap <= 1.0) return std::numeric_limits<double>::infinity();
    t += 2.0 * std::pow(gap, 1.0 - s) / (s - 1.0);
  }
  const double Cd = double(C);
  t += 2.0 * std::pow(y, -s) * std::pow(Cd, 1.0 - s) / (s - 1.0);
  t += k_const(s) * std::pow(y, 1.0 - s) * std::pow(Cd, 2.0 - s) / (s - 2.0);
  return t;
}

SeriesValue eval_F_box(int p, const HalfPlanePoint& tau, double r, SeriesTruncation trunc, bool tilde, double tol) {
  if (p < 5) throw domain_error("eval_F: p must be >= 5");
  if (trunc.c_max < 1) throw domain_error("eval_F: c_max must be >= 1");
  if (trunc.d_halfwidth <= 0) trunc.d_halfwidth = coupled_halfwidth(trunc.c_max, tau.re);
  const RowKind kind = tilde ? RowKind::Ptilde : RowKind::P;
  const cplx z = tau.value();
  const double r2 = r * r;
  cplx s = 0.0;
  for (const BottomRow& row : enumerate_bottom_rows(kind, trunc.c_max, trunc.d_halfwidth)) {
    const std::int64_t a = alpha_entry(row);
    const double c = double(row.c), d = double(row.d);
    const cplx mt = a / c - 1.0 / (c * (c * z + d));
    // reduce the real part mod 2 before exponentiating
    const double re = std::fmod(r2 * mt.real(), 2.0);
    const cplx e = std::exp(cplx(-kPi * r2 * mt.imag(), kPi * re));
    s += theta_cocycle_power(row.c, row.d, tau, p) * e;
  }
  SeriesValue v;
  v.value = tilde ? s : -s;
  v.tail_bound = box_tail_bound(p, tau, trunc.c_max, trunc.d_halfwidth);
  v.error = 1e-15 * std::abs(s) * std::sqrt(double(trunc.c_max * trunc.d_halfwidth));
  v.flagged = v.tail_bound > tol;
  return v;
}

CompletedSeries::CompletedSeries(int p, double r, bool tilde, std::int64_t c_max)
    : CompletedSeries(p, r, tilde, c_max, Options{}) {}

CompletedSeries::CompletedSeries(int p, double r, bool tilde, std::int64_t c_max, Options opt)
    : p_(p), r_(r), tilde_(tilde), c_max_(c_max), opt_(opt) {
  if (p < 5) throw domain_error("CompletedSeries: p must be >= 5");
  if (opt_.em_order > 10) opt_.em_order = 10;
  const RowKind kind = tilde ? RowKind::Ptilde : RowKind::P;
  const double sgn = tilde ? 1.0 : -1.0;
  for (std::int64_t c = 1; c <= c_max; ++c) {
    c_begin_.push_back(classes_.size());
    if ((c % 2 == 1) != tilde) continue;
    for (std::int64_t d0 = 0; d0 < 2 * c; ++d0) {
      if (!admissible(c, d0, kind)) continue;
      // word reduction for alpha and the exact Gauss sum, kept apart from the closed-form path
      const std::int64_t a = alpha_by_words({c, d0, kind});
      const cplx g = g_small(c, d0).value;
      const double ph = std::fmod(double(a) * r * r / double(c), 2.0);
      classes_.push_back({c, d0, sgn * std::pow(g, -p) * unit(kPi * ph)});
    }
  }
  c_begin_.push_back(classes_.size());
}

cplx CompletedSeries::completed(cplx w, double beta, double* err) const {
  const double s = 0.5 * p_;
  const int L = opt_.direct;
  const double pb = kPi * beta;
  // shift to Re w in [-1, 1)
  const double sh = 2.0 * std::floor((w.real() + 1.0) / 2.0);
  w -= sh;
  cplx sum = 0.0;
  auto h = [&](cplx v) { return std::exp(-s * std::log(v) - pb / v); };
  for (int l = -L; l <= L; ++l) sum += h(cplx(0.0, -1.0) * (w + 2.0 * l));
  double err_acc = 0.0;
  for (int side = 0; side < 2; ++side) {
    const double dir = side == 0 ? 1.0 : -1.0;
    const cplx va = cplx(0.0, -1.0) * (w + dir * 2.0 * (L + 1));
    const cplx dvdt = cplx(0.0, -2.0 * dir);
    const cplx z = 1.0 / va;
    const cplx base = std::exp(-s * std::log(va));
    // beta series coefficients (-pi beta z)^k / k!
    std::vector<cplx> q;
    cplx qk = 1.0;
    for (int k = 0; k < 200; ++k) {
      q.push_back(qk);
      qk *= -pb * z / double(k + 1);
      if (std::abs(qk) < 1e-18 && k > 2) break;
    }
    const int K = static_cast<int>(q.size());
    // integral
    cplx I = 0.0;
    for (int k = 0; k < K; ++k) I += q[k] / (s + k - 1.0);
    I *= va * base * cplx(0.0, 0.5 * dir);
    // f(a)/2
    cplx f0 = 0.0;
    for (int k = 0; k < K; ++k) f0 += q[k];
    f0 *= base;
    cplx corr = 0.0;
    double last = 0.0;
    for (int j = 1; j <= opt_.em_order; ++j) {
      const int m = 2 * j - 1;
      // h^{(m)}(v) = (-1)^m v^{-s-m} sum_k q_k (s+k)_m
      cplx hs = 0.0;
      for (int k = 0; k < K; ++k) {
        double poch = 1.0;
        for (int i = 0; i < m; ++i) poch *= (s + k + i);
        hs += q[k] * poch;
      }
      const cplx hm = -base * std::pow(z, m) * hs;
      const cplx fm = std::pow(dvdt, m) * hm;
      const cplx term = kBernoulli[j - 1] / factorial(2 * j) * fm;
      corr += term;
      last = std::abs(term);
    }
    sum += I + 0.5 * f0 - corr;
    err_acc += last;
  }
  if (err) *err += err_acc;
  return sum;
}

cplx CompletedSeries::eval_c(const HalfPlanePoint& tau, std::int64_t c) const {
  if (c < 1 || c > c_max_) return 0.0;
  const double beta = r_ * r_ / double(c * c);
  cplx s = 0.0;
  for (std::size_t i = c_begin_[c - 1]; i < c_begin_[c]; ++i) {
    const Class& k = classes_[i];
    s += k.weight * completed(tau.value() + double(k.d0) / double(c), beta, nullptr);
  }
  return s;
}

SeriesValue CompletedSeries::eval(const HalfPlanePoint& tau) const {
  SeriesValue v;
  double err = 0.0;
  cplx s = 0.0;
  for (const Class& k : classes_) {
    const double beta = r_ * r_ / double(k.c * k.c);
    double e = 0.0;
    s += k.weight * completed(tau.value() + double(k.d0) / double(k.c), beta, &e);
    err += std::abs(k.weight) * (e + 1e-15 * std::pow(tau.im, -0.5 * p_));
  }
  v.value = s;
  v.error = err;
  v.tail_bound = c_tail_bound(tau);
  return v;
}

double CompletedSeries::c_tail_bound(const HalfPlanePoint& tau) const {
  double t = 0.0;
  for (int n = 1; n < 100000; ++n) {
    const double term = std::exp(-kPi * n * tau.im) * closed_form_trivial_tail(p_, n, c_max_);
    t += term;
    if (term < 1e-18 * t && n > 5) break;
  }
  return t;
}

void CoefficientCache::ensure(const std::vector<int>& ps, const std::vector<double>& rs, int n_max, bool with_tilde) {
  std::vector<ClosedTask> tasks;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (int p : ps)
      for (double r : rs)
        for (int t = 0; t < (with_tilde ? 2 : 1); ++t)
          if (!store_.count({p, n_max, r, t == 1})) tasks.push_back({p, t == 1, r, n_max});
  }
  if (tasks.empty()) return;
  const auto res = coeff_closed_batch(tasks, opt_);
  std::lock_guard<std::mutex> lock(mu_);
  for (const CoefficientResult& c : res) store_.emplace(Key{c.p, c.n, c.r, c.tilde}, c);
}

bool CoefficientCache::has(int p, int n, double r, bool tilde) const {
  std::lock_guard<std::mutex> lock(mu_);
  return store_.count({p, n, r, tilde}) > 0;
}

const CoefficientResult& CoefficientCache::get(int p, int n, double r, bool tilde) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = store_.find({p, n, r, tilde});
    if (it != store_.end()) return it->second;
  }
  ensure({p}, {r}, n, true);
  std::lock_guard<std::mutex> lock(mu_);
  return store_.at({p, n, r, tilde});
}

std::size_t CoefficientCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return store_.size();
}

namespace {

// n beyond which the coefficient tail is negligible at height y
int tail_terms(int p, std::int64_t c_direct, double y, double tol) {
  for (int n = 1; n < 10000; ++n) {
    double rest = 0.0;
    for (int m = n + 1; m < n + 200; ++m) rest += std::exp(-kPi * m * y) * closed_form_trivial_tail(p, m, c_direct);
    if (rest < tol) return n;
  }
  return 10000;
}

}  // namespace

SeriesValue eval_F_accelerated(int p, const HalfPlanePoint& tau, double r, bool tilde, CoefficientCache& cache,
                               const FunctionalOptions& opt) {
  const CompletedSeries direct(p, r, tilde, opt.c_direct);
  SeriesValue v = direct.eval(tau);
  const int N = std::min(opt.n_tail_max, tail_terms(p, opt.c_direct, tau.im, 1e-3 * opt.tol));
  cache.ensure({p}, {r}, N, true);
  ClosedFormOptions po = cache.options();
  po.c_max = opt.c_direct;
  po.c_max_scale = 1.0;
  po.accelerate = false;
  const auto partial = coeff_closed_batch({{p, tilde, r, N}}, po);
  double err = v.error;
  cplx corr = 0.0;
  for (int n = 1; n <= N; ++n) {
    const CoefficientResult& full = cache.get(p, n, r, tilde);
    const double delta = full.value.real() - partial[n - 1].value.real();
    const cplx q = std::exp(cplx(0.0, kPi * n) * tau.value());
    corr += delta * q;
    err += full.error_estimate * std::abs(q);
  }
  double rest = 0.0;
  for (int m = N + 1; m < N + 200; ++m) rest += std::exp(-kPi * m * tau.im) * closed_form_trivial_tail(p, m, opt.c_direct);
  v.value += corr;
  v.error = err;
  v.tail_bound = rest;
  v.flagged = v.error + v.tail_bound > opt.tol;
  return v;
}

FunctionalResidual functional_equation_residual(int p, const HalfPlanePoint& tau, double r, CoefficientCache& cache,
                                                const FunctionalOptions& opt) {
  const SeriesValue F = eval_F_accelerated(p, tau, r, false, cache, opt);
  const HalfPlanePoint inv = tau.inverted();
  const SeriesValue Ft = eval_F_accelerated(p, inv, r, true, cache, opt);
  const cplx fac = branch_power(tau, -0.5 * p);
  const cplx g = std::exp(cplx(0.0, kPi * r * r) * tau.value());
  FunctionalResidual res;
  res.residual = std::abs(F.value + fac * Ft.value - g);
  res.bound = F.error + F.tail_bound + std::abs(fac) * (Ft.error + Ft.tail_bound);
  res.flagged = F.flagged || Ft.flagged;
  return res;
}

double theta_row_sum(double k, const HalfPlanePoint& tau, std::int64_t C, bool tilde) {
  if (!(k > 2.0)) throw domain_error("theta_row_sum: k must exceed 2");
  const RowKind kind = tilde ? RowKind::Ptilde : RowKind::P;
  const double x = tau.re, y = tau.im;
  double s = 0.0;
  for (std::int64_t c = 1; c <= C; ++c) {
    if ((c % 2 == 1) != tilde) continue;
    const std::int64_t D = 40 * c + 100;
    for (std::int64_t d = -D; d <= D; ++d) {
      if (!admissible(c, d, kind)) continue;
      const double re = c * x + d, im = c * y;
      s += std::pow(re * re + im * im, -0.5 * k);
    }
    const double gap = double(D) - c * std::fabs(x);
    s += 2.0 * std::pow(gap, 1.0 - k) / (k - 1.0);
  }
  const double Cd = double(C);
  s += std::pow(y, -k) * std::pow(Cd, 1.0 - k) / (k - 1.0);
  s += k_const(k) * std::pow(y, 1.0 - k) * std::pow(Cd, 2.0 - k) / (k - 2.0);
  return s;
}

double tail_envelope_constant() { return 0.08; }

double tail_envelope(double k, double y0, double eps) {
  if (!(eps > 0.0) || eps > 0.125) throw domain_error("tail_envelope: eps must lie in (0, 1/8]");
  if (!(y0 > 0.0)) throw domain_error("tail_envelope: y0 must be positive");
  if (!(k >= 2.0 + 2.0 * eps)) throw domain_error("tail_envelope: k must be >= 2 + 2 eps");
  return tail_envelope_constant() / (eps * eps) * (std::pow(y0, -k) + std::pow(y0, -0.5 * k));
}

std::vector<CoefficientResult> coeff_contour_batch(int p, const std::vector<int>& ns, double r, bool tilde,
                                                   const ContourOptions& opt) {
  if (p < 5) throw domain_error("coeff_contour: p must be >= 5");
  const CompletedSeries series(p, r, tilde, opt.c_max);
  // group n by integration height
  std::map<double, std::vector<std::size_t>> groups;
  double y_shared = std::numeric_limits<double>::infinity();
  for (int n : ns)
    if (n >= 1) y_shared = std::min(y_shared, std::max(p / (2.0 * kPi * n), opt.y_floor));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    double y = n >= 1 ? (opt.shared_height ? y_shared : std::max(p / (2.0 * kPi * n), opt.y_floor)) : 1.0;
    groups[y * opt.height_scale].push_back(i);
  }
  std::vector<CoefficientResult> out(ns.size());
  for (const auto& [y, idx] : groups) {
    std::vector<cplx> vals;  // F at x_j = -1 + 2 j / N
    double node_err = 0.0;
    int N = opt.n_start;
    auto node = [&](int j, int NN) {
      const HalfPlanePoint t(-1.0 + 2.0 * j / NN, y);
      const SeriesValue v = series.eval(t);
      node_err = std::max(node_err, v.error);
      return v.value;
    };
    for (int j = 0; j < N; ++j) vals.push_back(node(j, N));
    auto coeffs = [&](int NN) {
      std::vector<cplx> b(idx.size());
      for (std::size_t q = 0; q < idx.size(); ++q) {
        const int n = ns[idx[q]];
        cplx s = 0.0;
        for (int j = 0; j < NN; ++j) {
          // e^{-pi i n x_j} = e^{pi i n} e^{-2 pi i n j / N}
          const long long ph = ((long long)n * j) % NN;
          s += vals[j] * unit(-2.0 * kPi * double(ph) / NN);
        }
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        b[q] = sign * s / double(NN) * std::exp(kPi * n * y);
      }
      return b;
    };
    std::vector<cplx> prev = coeffs(N);
    bool converged = false;
    double diff = 0.0;
    while (2 * N <= opt.n_nodes_max) {
      std::vector<cplx> fine(2 * N);
      for (int j = 0; j < N; ++j) fine[2 * j] = vals[j];
      for (int j = 0; j < N; ++j) fine[2 * j + 1] = node(2 * j + 1, 2 * N);
      vals.swap(fine);
      N *= 2;
      std::vector<cplx> cur = coeffs(N);
      diff = 0.0;
      bool ok = true;
      for (std::size_t q = 0; q < idx.size(); ++q) {
        const double dq = std::abs(cur[q] - prev[q]);
        diff = std::max(diff, dq);
        if (dq >= 0.5 * opt.tol * (1.0 + std::abs(cur[q]))) ok = false;
      }
      prev = cur;
      if (ok) {
        converged = true;
        break;
      }
    }
    // omitted rows c > c_max, moved to the coefficient scale
    const double series_tail = series.c_tail_bound(HalfPlanePoint(0.0, y));
    for (std::size_t q = 0; q < idx.size(); ++q) {
      const int n = ns[idx[q]];
      CoefficientResult& c = out[idx[q]];
      const double tail = series_tail * std::exp(kPi * n * y);
      c.p = p;
      c.n = n;
      c.r = r;
      c.tilde = tilde;
      c.method = Method::contour;
      c.value = prev[q];
      c.error_estimate = diff + node_err * std::exp(kPi * std::max(n, 0) * y) + tail;
      c.flagged = !converged || tail >= 0.5 * opt.tol;
      c.note = "c_max=" + std::to_string(opt.c_max) + ";nodes=" + std::to_string(N);
      if (n <= 0) c.note += ";vanishing";
    }
  }
  return out;
}

CoefficientResult coeff_contour(int p, int n, double r, double tol, bool tilde, const ContourOptions& opt) {
  ContourOptions o = opt;
  o.tol = tol;
  return coeff_contour_batch(p, {n}, r, tilde, o).front();
}

RadialResidual radial_residual(int p, const HalfPlanePoint& tau, double r, int n_max, CoefficientCache& cache) {
  cache.ensure({p}, {r}, n_max, true);
  const cplx z = tau.value();
  const HalfPlanePoint inv = tau.inverted();
  const cplx fac = branch_power(tau, -0.5 * p);
  cplx s = std::exp(cplx(0.0, kPi * r * r) * z);
  double err = 0.0;
  bool flag = false;
  for (int n = 1; n <= n_max; ++n) {
    const CoefficientResult& b = cache.get(p, n, r, false);
    const CoefficientResult& bt = cache.get(p, n, r, true);
    const cplx q = std::exp(cplx(0.0, kPi * n) * z);
    const cplx qt = fac * std::exp(cplx(0.0, kPi * n) * inv.value());
    s -= b.value * q + bt.value * qt;
    err += b.error_estimate * std::abs(q) + bt.error_estimate * std::abs(qt);
  }
  flag = err > 1e-6;
  return {std::abs(s), err, flag};
}

}  // namespace fisph
