#include "fisph/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace fisph {

namespace {

cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double log_majorant(int p, int n) {
  const double s = 0.5 * p;
  return std::log(kPi) + (s - 1.0) * std::log(kPi * n) - std::lgamma(s) + std::log1p(1.0 / (s - 2.0));
}

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

int default_m_max(double x_norm, int n) {
  const double R = std::max(1.0, x_norm);
  return static_cast<int>(std::floor(47.0 * R * R * n)) + 2;
}

double coefficient_majorant(int p, int n) { return std::exp(log_majorant(p, n)); }

KernelEngine::KernelEngine(int d, CoefficientCache& cache, int n_cap) : d_(d), cache_(cache), n_cap_(n_cap) {
  if (d < 5) throw domain_error("KernelEngine: d must be >= 5");
}

const CoefficientResult& KernelEngine::coeff(int p, int n, double r, bool tilde) {
  if (!cache_.has(p, n, r, tilde)) cache_.ensure({p}, {r}, std::max(n, n_cap_), true);
  return cache_.get(p, n, r, tilde);
}

KernelValue KernelEngine::kernel_radial(int n, double r, double t, bool tilde, int m_max, double tol,
                                        bool keep_partial) {
  if (n < 1) throw domain_error("kernel_A: n must be >= 1");
  if (r < 0.0) throw domain_error("kernel_A: |x| must be >= 0");
  KernelValue kv;
  kv.m_policy = default_m_max(r, n);
  if (m_max < 0) m_max = kv.m_policy;
  if (r == 0.0) {
    const CoefficientResult& b = coeff(d_, n, 0.0, tilde);
    kv.value = b.value;
    kv.flagged = b.flagged;
    kv.m_used = 0;
    if (keep_partial) kv.partial.push_back(kv.value);
    return kv;
  }
  const int m_cap = std::min(m_max, 2000);
  const std::vector<double> Z = zonal_all(d_, m_cap, t);
  const double lr = std::log(r), ln = std::log(double(n));
  auto log_env = [&](int m) {
    return log_majorant(d_ + 2 * m, n) + m * lr - 0.5 * m * ln + std::log(dim_harmonics_real(d_, m));
  };
  cplx sum = 0.0;
  bool stopped = false;
  for (int m = 0; m <= m_cap; ++m) {
    const int p = d_ + 2 * m;
    const CoefficientResult& b = coeff(p, n, r, tilde);
    const double scale = std::exp(m * lr - 0.5 * m * ln);
    cplx term = b.value * scale * Z[m];
    if (tilde) term *= ipow(m);
    sum += term;
    kv.flagged = kv.flagged || b.flagged;
    kv.m_used = m;
    if (keep_partial) kv.partial.push_back(sum);
    if (m + 1 > m_cap) break;
    const double e1 = log_env(m + 1), e0 = log_env(m);
    if (e1 - e0 < std::log(0.5) && std::exp(e1) < tol * (1.0 + std::abs(sum))) {
      kv.tail = 2.0 * std::exp(e1);
      stopped = true;
      break;
    }
  }
  if (!stopped && m_cap < kv.m_policy) kv.flagged = true;
  kv.value = sum;
  return kv;
}

KernelValue KernelEngine::kernel_A(const KernelRequest& req, const std::vector<double>& zeta, bool tilde,
                                   bool keep_partial) {
  if (req.d != d_) throw domain_error("kernel_A: dimension mismatch");
  if (int(req.x.size()) != d_ || int(zeta.size()) != d_) throw domain_error("kernel_A: vector length mismatch");
  const double r = norm(req.x);
  const double zn = norm(zeta);
  if (std::fabs(zn - 1.0) > 1e-12) throw domain_error("kernel_A: zeta must be a unit vector");
  double t = 0.0;
  if (r > 0.0) {
    for (int i = 0; i < d_; ++i) t += req.x[i] * zeta[i];
    t = std::clamp(t / r, -1.0, 1.0);
  }
  return kernel_radial(req.n, r, t, tilde, req.m_max, req.tol, keep_partial);
}

int interpolation_quadrature_degree(int m0, const InterpolateOptions& opt) { return 2 * m0 + opt.m_extra + 2; }

InterpolationReport interpolate(const HarmonicGaussian& f, const std::vector<double>& x, int n_max,
                                const SphereQuadrature& quad, KernelEngine& engine, const InterpolateOptions& opt) {
  const int d = f.d;
  if (engine.d() != d || quad.d != d || int(x.size()) != d) throw domain_error("interpolate: dimension mismatch");
  if (n_max < 1) throw domain_error("interpolate: n_max must be >= 1");
  const int m0 = f.m0;
  const int m_used = m0 + opt.m_extra;
  if (quad.exact_degree < m_used + m0 + 2)
    throw domain_error("interpolate: quadrature exact_degree below m_max + deg(u0) + 2");
  InterpolationReport rep;
  rep.x = x;
  rep.f_true = f.eval(x);
  rep.n_used = n_max;
  const double r = norm(x);
  const int m_top = r > 0.0 ? m_used : 0;
  rep.m_used = m_top;
  rep.m_policy = default_m_max(r, n_max);
  std::vector<double> xhat(d, 0.0);
  if (r > 0.0)
    for (int i = 0; i < d; ++i) xhat[i] = x[i] / r;
  const std::size_t N = quad.size();
  // zonal values Z_m(x^, zeta_q)
  std::vector<double> Z(N * (m_top + 1));
  for (std::size_t q = 0; q < N; ++q) {
    double t = 0.0;
    for (int i = 0; i < d; ++i) t += xhat[i] * quad.nodes(i, q);
    const std::vector<double> z = zonal_all(d, m_top, std::clamp(t, -1.0, 1.0));
    for (int m = 0; m <= m_top; ++m) Z[q * (m_top + 1) + m] = z[m];
  }
  std::vector<int> ps;
  for (int m = 0; m <= m_top; ++m) ps.push_back(d + 2 * m);
  engine.cache().ensure(ps, {r}, n_max, true);
  const HarmonicGaussian fh = hecke_funk_transform(f);
  std::vector<double> pt(d);
  cplx total = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double sq = std::sqrt(double(n));
    std::vector<cplx> I(m_top + 1, 0.0), J(m_top + 1, 0.0);
    for (std::size_t q = 0; q < N; ++q) {
      for (int i = 0; i < d; ++i) pt[i] = sq * quad.nodes(i, q);
      const cplx fv = quad.weights(q) * f.eval(pt.data());
      const cplx gv = quad.weights(q) * fh.eval(pt.data());
      for (int m = 0; m <= m_top; ++m) {
        const double z = Z[q * (m_top + 1) + m];
        I[m] += z * fv;
        J[m] += z * gv;
      }
    }
    cplx contrib = 0.0;
    for (int m = 0; m <= m_top; ++m) {
      const int p = d + 2 * m;
      const double scale = std::pow(r, m) * std::pow(double(n), -0.5 * m);
      const CoefficientResult& b = engine.cache().get(p, n, r, false);
      const CoefficientResult& bt = engine.cache().get(p, n, r, true);
      const cplx a = b.value * scale * I[m];
      const cplx at = ipow(m) * bt.value * scale * J[m];
      contrib += a + at;
      if (m != m0) rep.max_offdiag = std::max({rep.max_offdiag, std::abs(a), std::abs(at)});
      if (m == m0) rep.flagged = rep.flagged || (b.flagged && b.error_estimate * std::abs(I[m]) > 1e-6);
    }
    rep.per_n_contributions.push_back(contrib);
    total += contrib;
  }
  rep.f_reconstructed = total;
  rep.residual = std::abs(rep.f_true - rep.f_reconstructed);
  return rep;
}

GrowthReport kernel_growth_probe(KernelEngine& engine, const std::vector<int>& ns, double delta, double R,
                                 const GrowthOptions& opt) {
  if (!(delta > 0.0 && delta <= 1.0 && R >= 1.0)) throw domain_error("kernel_growth_probe: need 0 < delta <= 1 <= R");
  GrowthReport rep;
  const int d = engine.d();
  rep.exponent = 1.25 * d + 0.125;
  std::vector<double> rs;
  for (int i = 0; i < opt.radii; ++i) rs.push_back(opt.radii == 1 ? R : delta + (R - delta) * i / (opt.radii - 1));
  for (int n : ns) {
    GrowthRow row;
    row.n = n;
    for (double r : rs)
      for (int k = 0; k < opt.cosines; ++k) {
        const double t = opt.cosines == 1 ? 1.0 : -1.0 + 2.0 * k / (opt.cosines - 1);
        for (int tl = 0; tl < 2; ++tl) {
          const KernelValue v = engine.kernel_radial(n, r, t, tl == 1, -1, opt.tol, false);
          double& sup = tl ? row.sup_A_tilde : row.sup_A;
          sup = std::max(sup, std::abs(v.value));
          row.m_used = std::max(row.m_used, v.m_used);
        }
      }
    row.ratio = std::max(row.sup_A, row.sup_A_tilde) / std::pow(double(n), rep.exponent);
    rep.c_empirical = std::max(rep.c_empirical, row.ratio);
    rep.rows.push_back(row);
  }
  if (rep.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = double(rep.rows.size());
    for (const GrowthRow& g : rep.rows) {
      const double lx = std::log(double(g.n)), ly = std::log(std::max(g.sup_A, g.sup_A_tilde));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    rep.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return rep;
}

}  // namespace fisph
