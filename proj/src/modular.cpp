#include "fisph/modular.hpp"

#include <cmath>
#include <numeric>

namespace fisph {

HalfPlanePoint::HalfPlanePoint(double re_, double im_) : re(re_), im(im_) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw domain_error("half-plane point must be finite");
  if (!(im > 0.0)) throw domain_error("half-plane point needs Im > 0");
}

HalfPlanePoint::HalfPlanePoint(cplx z) : HalfPlanePoint(z.real(), z.imag()) {}

HalfPlanePoint HalfPlanePoint::inverted() const {
  const double n2 = re * re + im * im;
  return {-re / n2, im / n2};
}

cplx branch_power(cplx tau, double k) {
  if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || !std::isfinite(k))
    throw domain_error("branch_power: non-finite input");
  if (!(tau.imag() > 0.0)) throw domain_error("branch_power: argument outside the upper half-plane");
  // -i tau has positive real part, so the principal log is the continuous branch.
  const cplx w(tau.imag(), -tau.real());
  return std::exp(k * std::log(w));
}

cplx branch_power(const HalfPlanePoint& tau, double k) { return branch_power(tau.value(), k); }

long theta_terms(const HalfPlanePoint& tau, double tol) {
  if (!(tol > 0.0)) throw domain_error("theta: tol must be positive");
  const double aq = std::exp(-kPi * tau.im);
  const double rhs = -std::log(tol * (1.0 - aq));
  const double n = std::sqrt(std::max(rhs, 0.0) / (kPi * tau.im));
  return static_cast<long>(std::ceil(n)) + 5;
}

cplx theta_nullwert(Theta which, const HalfPlanePoint& tau, const ThetaOptions& opt) {
  const long N = theta_terms(tau, opt.tol);
  if (N > opt.max_terms) throw domain_error("theta: Im(tau) too small for the truncation cap");
  const cplx z = tau.value();
  const cplx ipz = cplx(0.0, kPi) * z;
  cplx s = 0.0;
  switch (which) {
    case Theta::three:
    case Theta::four: {
      const double sgn = which == Theta::four ? -1.0 : 1.0;
      for (long n = N; n >= 1; --n) {
        const double w = (n % 2 == 1) ? sgn : 1.0;
        s += w * std::exp(ipz * double(n) * double(n));
      }
      return 1.0 + 2.0 * s;
    }
    case Theta::two: {
      for (long n = N; n >= 0; --n) {
        const double h = n + 0.5;
        s += std::exp(ipz * h * h);
      }
      return 2.0 * s;
    }
  }
  return s;
}

cplx theta_nullwert(Theta which, const HalfPlanePoint& tau, double tol) {
  ThetaOptions opt;
  opt.tol = tol;
  return theta_nullwert(which, tau, opt);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m < 1) throw domain_error("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  std::int64_t r0 = m, r1 = floor_mod(a, m);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = t0 - q * t1;
    t0 = t1;
    t1 = t;
  }
  if (r0 != 1) throw domain_error("mod_inverse: not coprime");
  return floor_mod(t0, m);
}

int jacobi_symbol(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw domain_error("jacobi_symbol: n must be odd and positive");
  a = floor_mod(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

cplx gauss_sum(std::int64_t q, std::int64_t a) {
  if (q < 1) throw domain_error("gauss_sum: q must be >= 1");
  const std::int64_t ar = floor_mod(a, q);
  cplx s = 0.0;
  for (std::int64_t m = 1; m <= q; ++m) {
    const __int128 mm = static_cast<__int128>(m) * m % q;
    const std::int64_t j = static_cast<std::int64_t>(mm * ar % q);
    const double ph = 2.0 * kPi * double(j) / double(q);
    s += cplx(std::cos(ph), std::sin(ph));
  }
  return s;
}

GaussSumValue g_small(std::int64_t c, std::int64_t d) {
  if (c < 1) throw domain_error("g_small: c must be >= 1");
  if (std::gcd(c, d) != 1) throw domain_error("g_small: gcd(c, d) != 1");
  GaussSumValue g;
  g.c = c;
  g.d = d;
  g.value = (c % 2 == 0) ? 0.5 * gauss_sum(2 * c, d) : gauss_sum(c, 2 * d);
  return g;
}

int gauss_root_index(std::int64_t c, std::int64_t d) {
  if (c < 1) throw domain_error("gauss_root_index: c must be >= 1");
  if (std::gcd(c, d) != 1) throw domain_error("gauss_root_index: gcd(c, d) != 1");
  if (c % 2 == 0) {
    const std::int64_t a = floor_mod(d, 2 * c);
    int k = 1;
    if (a % 4 == 3) k -= 2;
    if (jacobi_symbol(2 * c, a) < 0) k += 4;
    return static_cast<int>(floor_mod(k, 8));
  }
  if (c == 1) return 0;
  int k = (c % 4 == 3) ? 2 : 0;
  if (jacobi_symbol(2 * d, c) < 0) k += 4;
  return k % 8;
}

cplx eighth_root(int k) {
  static const double h = std::sqrt(0.5);
  static const cplx tab[8] = {{1, 0}, {h, h}, {0, 1}, {-h, h}, {-1, 0}, {-h, -h}, {0, -1}, {h, -h}};
  return tab[floor_mod(k, 8)];
}

namespace {

void check_theta_row(std::int64_t c, std::int64_t d) {
  if (c <= 0) throw domain_error("theta cocycle: c must be positive");
  if (std::gcd(c, d) != 1) throw domain_error("theta cocycle: gcd(c, d) != 1");
  if ((c % 2 == 0) == (floor_mod(d, 2) == 0)) throw domain_error("theta cocycle: c, d must have opposite parity");
}

}  // namespace

cplx theta_cocycle_power(std::int64_t c, std::int64_t d, const HalfPlanePoint& tau, int p) {
  check_theta_row(c, d);
  const int k = gauss_root_index(c, d);
  const cplx root = eighth_root(-k * p);
  const double scale = std::pow(double(c), -0.5 * p);
  const cplx w = tau.value() + double(d) / double(c);
  return root * scale * branch_power(w, -0.5 * p);
}

cplx theta_quotient_power(std::int64_t c, std::int64_t d, const HalfPlanePoint& tau, int p) {
  check_theta_row(c, d);
  // complete to a matrix congruent to I or S mod 2
  std::int64_t a = mod_inverse(d, c);
  if (c % 2 == 1 && a % 2 != 0) a += c;
  if (c == 1) a = 0;
  std::int64_t b = (static_cast<__int128>(a) * d - 1) / c;
  if (c % 2 == 0 && floor_mod(b, 2) != 0) {
    a += c;
    b += d;
  }
  const cplx z = tau.value();
  const cplx mz = (double(a) * z + double(b)) / (double(c) * z + double(d));
  const HalfPlanePoint mt(mz);
  const cplx q = theta_nullwert(Theta::three, mt) / theta_nullwert(Theta::three, tau);
  return std::pow(q, -p);
}

}  // namespace fisph
