#include "fisph/harmonics.hpp"

#include <cmath>
#include <numeric>

namespace fisph {

namespace {

std::int64_t binom_exact(int n, int k) {
  if (k < 0 || n < k) return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("dim_harmonics: overflow");
  }
  return static_cast<std::int64_t>(r);
}

cplx gaussian_factor(const HalfPlanePoint& tau, double r2) {
  return std::exp(cplx(-kPi * tau.im * r2, kPi * tau.re * r2));
}

}  // namespace

std::int64_t dim_harmonics(int d, int m) {
  if (d < 2 || m < 0) throw domain_error("dim_harmonics: need d >= 2, m >= 0");
  return binom_exact(d + m - 1, d - 1) - (m >= 2 ? binom_exact(d + m - 3, d - 1) : 0);
}

double dim_harmonics_real(int d, int m) {
  if (d < 2 || m < 0) throw domain_error("dim_harmonics: need d >= 2, m >= 0");
  if (m == 0) return 1.0;
  if (d == 2) return 2.0;
  double c = 1.0;
  for (int j = 1; j <= d - 3; ++j) c *= double(m + j) / j;
  return c * (2.0 * m + d - 2) / (d - 2);
}

std::vector<double> zonal_all(int d, int m_max, double t) {
  if (d < 2) throw domain_error("zonal_eval: d must be >= 2");
  if (!(std::fabs(t) <= 1.0 + 1e-14)) throw domain_error("zonal_eval: |t| > 1");
  t = std::clamp(t, -1.0, 1.0);
  const double lam = 0.5 * (d - 2);
  std::vector<double> P(m_max + 1), Z(m_max + 1);
  P[0] = 1.0;
  if (m_max >= 1) P[1] = t;
  for (int k = 1; k < m_max; ++k) P[k + 1] = (2.0 * (k + lam) * t * P[k] - k * P[k - 1]) / (k + 2.0 * lam);
  for (int k = 0; k <= m_max; ++k) Z[k] = dim_harmonics_real(d, k) * P[k];
  return Z;
}

double zonal_eval(const ZonalKernel& k, double t) {
  if (k.m < 0) throw domain_error("zonal_eval: m must be >= 0");
  return zonal_all(k.d, k.m, t).back();
}

double zonal_eval(const ZonalKernel& k, const std::vector<double>& x, const std::vector<double>& y) {
  if (int(x.size()) != k.d || int(y.size()) != k.d) throw domain_error("zonal_eval: dimension mismatch");
  if (k.m == 0) return 1.0;
  double nx = 0, ny = 0, xy = 0;
  for (int i = 0; i < k.d; ++i) {
    nx += x[i] * x[i];
    ny += y[i] * y[i];
    xy += x[i] * y[i];
  }
  nx = std::sqrt(nx);
  ny = std::sqrt(ny);
  if (nx == 0.0 || ny == 0.0) return 0.0;
  return std::pow(nx * ny, k.m) * zonal_eval(k, xy / (nx * ny));
}

void gauss_gegenbauer(int n, double a, std::vector<double>& t, std::vector<double>& w) {
  if (n < 1) throw domain_error("gauss_gegenbauer: n must be >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + 2.0 * a;
    const double b = std::sqrt(k * (k + 2.0 * a) / (s * s - 1.0));
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  t.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    t[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    w[i] = v * v;
  }
  // symmetrize
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double tt = 0.5 * (t[j] - t[i]);
    const double ww = 0.5 * (w[i] + w[j]);
    t[i] = -tt;
    t[j] = tt;
    w[i] = w[j] = ww;
  }
  if (n % 2 == 1) t[n / 2] = 0.0;
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= s;
}

namespace {

void sphere_rule(int d, int D, std::vector<std::vector<double>>& pts, std::vector<double>& wts) {
  pts.clear();
  wts.clear();
  if (d == 2) {
    const int M = (D + 1) % 2 == 0 ? D + 1 : D + 2;
    for (int j = 0; j < M; ++j) {
      const double th = 2.0 * kPi * j / M;
      pts.push_back({std::cos(th), std::sin(th)});
      wts.push_back(1.0 / M);
    }
    return;
  }
  std::vector<std::vector<double>> sub;
  std::vector<double> sw;
  sphere_rule(d - 1, D, sub, sw);
  std::vector<double> t, w;
  gauss_gegenbauer(D / 2 + 1, 0.5 * (d - 3), t, w);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
    for (std::size_t j = 0; j < sub.size(); ++j) {
      std::vector<double> p(d);
      p[0] = t[i];
      for (int k = 0; k < d - 1; ++k) p[k + 1] = s * sub[j][k];
      pts.push_back(std::move(p));
      wts.push_back(w[i] * sw[j]);
    }
  }
}

}  // namespace

SphereQuadrature build_quadrature(int d, int exact_degree) {
  if (d < 2 || d > 8) throw domain_error("build_quadrature: d must lie in [2, 8]");
  if (exact_degree < 0) throw domain_error("build_quadrature: exact_degree must be >= 0");
  if (exact_degree > 200) throw domain_error("build_quadrature: degree cap exceeded");
  std::vector<std::vector<double>> pts;
  std::vector<double> wts;
  sphere_rule(d, exact_degree, pts, wts);
  SphereQuadrature q;
  q.d = d;
  q.exact_degree = exact_degree;
  q.nodes.resize(d, pts.size());
  q.weights.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int k = 0; k < d; ++k) q.nodes(k, i) = pts[i][k];
    q.weights(i) = wts[i];
  }
  q.weights /= q.weights.sum();
  return q;
}

double monomial_moment(const std::vector<int>& alpha) {
  const int d = static_cast<int>(alpha.size());
  int tot = 0;
  double num = 1.0;
  for (int a : alpha) {
    if (a < 0) throw domain_error("monomial_moment: negative exponent");
    if (a % 2) return 0.0;
    for (int j = a - 1; j > 1; j -= 2) num *= j;
    tot += a;
  }
  double den = 1.0;
  for (int j = 0; j < tot / 2; ++j) den *= d + 2.0 * j;
  return num / den;
}

void HarmonicPoly::add(const Exponent& e, Rational c) {
  if (int(e.size()) != d_) throw domain_error("HarmonicPoly: exponent dimension mismatch");
  if (c.numerator() == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
}

int HarmonicPoly::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

bool HarmonicPoly::homogeneous() const {
  const int deg = degree();
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != deg) return false;
  return true;
}

double HarmonicPoly::eval(const double* x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = boost::rational_cast<double>(c);
    for (int i = 0; i < d_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    s += m;
  }
  return s;
}

HarmonicPoly HarmonicPoly::derivative(int i) const {
  HarmonicPoly out(d_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    out.add(f, c * Rational(e[i]));
  }
  return out;
}

HarmonicPoly HarmonicPoly::laplacian() const {
  HarmonicPoly out(d_);
  for (int i = 0; i < d_; ++i) out = out + derivative(i).derivative(i);
  return out;
}

HarmonicPoly HarmonicPoly::operator+(const HarmonicPoly& o) const {
  if (o.d_ != d_) throw domain_error("HarmonicPoly: dimension mismatch");
  HarmonicPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add(e, c);
  return out;
}

HarmonicPoly HarmonicPoly::operator*(Rational s) const {
  HarmonicPoly out(d_);
  for (const auto& [e, c] : terms_) out.add(e, c * s);
  return out;
}

HarmonicPoly HarmonicPoly::constant(int d, Rational c) {
  HarmonicPoly u(d);
  u.add(Exponent(d, 0), c);
  return u;
}

HarmonicPoly HarmonicPoly::coordinate_product(int d, const std::vector<int>& idx) {
  Exponent e(d, 0);
  for (int i : idx) {
    if (i < 0 || i >= d || e[i]) throw domain_error("coordinate_product: indices must be distinct and in range");
    e[i] = 1;
  }
  HarmonicPoly u(d);
  u.add(e, 1);
  return u;
}

namespace {

HarmonicPoly power_part(int d, int m, int i, int j, bool real) {
  if (i == j || i < 0 || j < 0 || i >= d || j >= d) throw domain_error("re_power: bad coordinates");
  HarmonicPoly u(d);
  long long b = 1;
  for (int k = 0; k <= m; ++k) {
    if ((k % 2 == 0) == real) {
      const int sgn = ((k / 2) % 2 == 0) ? 1 : -1;
      HarmonicPoly::Exponent e(d, 0);
      e[i] = m - k;
      e[j] = k;
      u.add(e, Rational(sgn * b));
    }
    b = b * (m - k) / (k + 1);
  }
  return u;
}

}  // namespace

HarmonicPoly HarmonicPoly::re_power(int d, int m, int i, int j) { return power_part(d, m, i, j, true); }
HarmonicPoly HarmonicPoly::im_power(int d, int m, int i, int j) { return power_part(d, m, i, j, false); }

double inner_product(const HarmonicPoly& u, const HarmonicPoly& v, const SphereQuadrature& q) {
  if (u.dim() != q.d || v.dim() != q.d) throw domain_error("inner_product: dimension mismatch");
  if (u.degree() + v.degree() > q.exact_degree) throw domain_error("inner_product: quadrature degree too low");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double* z = q.nodes.col(i).data();
    s += q.weights(i) * u.eval(z) * v.eval(z);
  }
  return s;
}

double inner_product_exact(const HarmonicPoly& u, const HarmonicPoly& v) {
  if (u.dim() != v.dim()) throw domain_error("inner_product: dimension mismatch");
  double s = 0.0;
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms()) {
      std::vector<int> e(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
      s += boost::rational_cast<double>(ca * cb) * monomial_moment(e);
    }
  return s;
}

HarmonicGaussian::HarmonicGaussian(HarmonicPoly u, HalfPlanePoint t, cplx a)
    : d(u.dim()), m0(u.degree()), u0(std::move(u)), tau(t), amp(a) {
  if (u0.is_zero()) throw domain_error("HarmonicGaussian: zero polynomial");
  if (!u0.homogeneous()) throw domain_error("HarmonicGaussian: u0 must be homogeneous");
  if (!u0.is_harmonic()) throw domain_error("HarmonicGaussian: u0 must be harmonic");
}

cplx HarmonicGaussian::eval(const double* x) const {
  double r2 = 0.0;
  for (int i = 0; i < d; ++i) r2 += x[i] * x[i];
  return amp * u0.eval(x) * gaussian_factor(tau, r2);
}

HarmonicGaussian HarmonicGaussian::operator*(cplx s) const {
  HarmonicGaussian g = *this;
  g.amp *= s;
  return g;
}

HarmonicGaussian hecke_funk_transform(const HarmonicGaussian& f) {
  HarmonicGaussian g = f;
  cplx mi = 1.0;
  for (int k = 0; k < f.m0; ++k) mi *= cplx(0.0, -1.0);
  g.amp = f.amp * mi * branch_power(f.tau, -0.5 * (f.d + 2 * f.m0));
  g.tau = f.tau.inverted();
  return g;
}

cplx lift(const HarmonicGaussian& f, const HarmonicPoly& u, int p, double y_norm, const SphereQuadrature& q) {
  if (p < 1) throw domain_error("lift: p must be positive");
  if (y_norm < 0.0) throw domain_error("lift: y_norm must be >= 0");
  const int m = u.degree();
  if (m != f.m0) return 0.0;
  const double ip = inner_product(f.u0, u, q);
  return f.amp * ip * gaussian_factor(f.tau, y_norm * y_norm);
}

cplx lift_numeric(const std::function<cplx(const double*)>& f, const HarmonicPoly& u, double y_norm,
                  const SphereQuadrature& q) {
  if (!(y_norm > 0.0)) throw domain_error("lift: numeric path needs y_norm > 0");
  const int m = u.degree();
  std::vector<double> x(q.d);
  cplx s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (int k = 0; k < q.d; ++k) x[k] = y_norm * q.nodes(k, i);
    s += q.weights(i) * f(x.data()) * u.eval(q.nodes.col(i).data());
  }
  return s * std::pow(y_norm, -m);
}

cplx RadialGaussian::eval(double y_norm) const { return amp * gaussian_factor(tau, y_norm * y_norm); }

RadialGaussian radial_transform(const RadialGaussian& g) {
  return {g.p, g.tau.inverted(), g.amp * branch_power(g.tau, -0.5 * g.p)};
}

}  // namespace fisph
