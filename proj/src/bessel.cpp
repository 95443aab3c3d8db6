#include "fisph/bessel.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>

#include "fisph/modular.hpp"

namespace fisph {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// sum_j (-1)^j (x^2/4)^j / ((nu+1)_j j!) in double
BesselResult series_double(double nu, double x) {
  const double h = 0.25 * x * x;
  double term = 1.0, sum = 1.0, big = 1.0;
  for (int j = 1; j < 400; ++j) {
    term *= -h / (double(j) * (nu + j));
    sum += term;
    big = std::max(big, std::fabs(term));
    if (std::fabs(term) < 1e-18 * std::fabs(sum) && j > h) break;
  }
  return {sum, 4.0 * kEps * big, false};
}

BesselResult series_quad(double nu, double x) {
  const __float128 h = 0.25Q * (__float128)x * (__float128)x;
  const __float128 nq = nu;
  __float128 term = 1, sum = 1;
  double big = 1.0;
  for (int j = 1; j < 2000; ++j) {
    term *= -h / ((__float128)j * (nq + j));
    sum += term;
    const double at = std::fabs((double)term);
    big = std::max(big, at);
    if (at < 1e-30 * std::fabs((double)sum) && j > (double)h) break;
  }
  return {(double)sum, 1e-33 * big + kEps * std::fabs((double)sum), false};
}

// Hankel expansion; returns J and the first omitted term as error
BesselResult hankel(double nu, double x, double tol) {
  const double mu = 4.0 * nu * nu;
  double P = 0.0, Q = 0.0;
  double a = 1.0;  // a_k / x^k
  double last = std::numeric_limits<double>::infinity();
  double err = 0.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) a *= (mu - double(2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
    const double at = std::fabs(a);
    if (at > last) {
      err = last;
      break;
    }
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) P += sgn * a; else Q += sgn * a;
    last = at;
    err = at;
    if (at < 0.1 * tol * kEps) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double v = amp * (P * std::cos(chi) - Q * std::sin(chi));
  return {v, amp * err + 8.0 * kEps * amp, false};
}

}  // namespace

BesselResult bessel_lambda_hat(double nu, double x, const BesselOptions& opt) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw domain_error("bessel: x must be finite and >= 0");
  if (!(nu >= 0.0)) throw domain_error("bessel: order must be >= 0");
  BesselResult r;
  if (x <= opt.x_double) {
    r = series_double(nu, x);
  } else if (x < opt.x_switch_base + 2.0 * nu) {
    r = series_quad(nu, x);
  } else {
    const BesselResult j = hankel(nu, x, opt.tol);
    const double f = std::exp(std::lgamma(nu + 1.0) - nu * std::log(0.5 * x));
    r = {j.value * f, j.error * f, false};
  }
  r.flagged = r.error > opt.tol * std::max(1.0, std::fabs(r.value));
  return r;
}

BesselResult bessel_j(double nu, double x, const BesselOptions& opt) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw domain_error("bessel: x must be finite and >= 0");
  if (x == 0.0) return {nu == 0.0 ? 1.0 : 0.0, 0.0, false};
  if (x >= opt.x_switch_base + 2.0 * nu) {
    BesselResult r = hankel(nu, x, opt.tol);
    r.flagged = r.error > opt.tol * std::max(1.0, std::fabs(r.value));
    return r;
  }
  const BesselResult s = bessel_lambda_hat(nu, x, opt);
  const double f = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
  BesselResult r{s.value * f, s.error * f, false};
  r.flagged = r.error > opt.tol * std::max(1.0, std::fabs(r.value));
  return r;
}

double bessel_half_integer(int n, double x) {
  if (n < 0) throw domain_error("bessel_half_integer: n must be >= 0");
  if (!(x > 0.0)) throw domain_error("bessel_half_integer: x must be > 0");
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (n == 0) return std::sqrt(2.0 * x / kPi) * j0;
  double jn = j1;
  if (double(n) <= x) {
    // upward recurrence is stable while k < x
    double a = j0, b = j1;
    for (int k = 1; k < n; ++k) {
      const double c = (2.0 * k + 1.0) / x * b - a;
      a = b;
      b = c;
    }
    jn = b;
  } else {
    // Miller: downward from well above max(n, x), normalized against j0 or j1
    const int top = n + 20 + static_cast<int>(std::sqrt(40.0 * (n + x)) + x);
    double hi = 0.0, cur = 1e-300, at_n = 0.0, at0 = 0.0, at1 = 0.0;
    for (int k = top; k >= 1; --k) {
      const double lo = (2.0 * k + 1.0) / x * cur - hi;
      hi = cur;
      cur = lo;
      if (std::fabs(cur) > 1e250) {
        hi *= 1e-250;
        cur *= 1e-250;
        at_n *= 1e-250;
        at1 *= 1e-250;
      }
      if (k - 1 == n) at_n = cur;
      if (k - 1 == 1) at1 = cur;
      if (k - 1 == 0) at0 = cur;
    }
    jn = std::fabs(j0) >= std::fabs(j1) ? at_n * (j0 / at0) : at_n * (j1 / at1);
  }
  return std::sqrt(2.0 * x / kPi) * jn;
}

}  // namespace fisph
