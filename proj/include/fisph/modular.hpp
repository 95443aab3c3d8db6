#pragma once
// Upper half-plane arithmetic, theta nullwerte, theta multiplier and Gauss sums.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fisph {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct HalfPlanePoint {
  double re = 0.0;
  double im = 1.0;

  HalfPlanePoint() = default;
  HalfPlanePoint(double re_, double im_);
  explicit HalfPlanePoint(cplx z);

  cplx value() const { return {re, im}; }
  HalfPlanePoint translate(double t) const { return {re + t, im}; }
  // -1/tau
  HalfPlanePoint inverted() const;
};

// exp(k log(tau/i)) on the branch vanishing at tau = i.
cplx branch_power(const HalfPlanePoint& tau, double k);
cplx branch_power(cplx tau, double k);

enum class Theta { two, three, four };

struct ThetaOptions {
  double tol = 1e-15;
  long max_terms = 2000000;
};

cplx theta_nullwert(Theta which, const HalfPlanePoint& tau, double tol = 1e-15);
cplx theta_nullwert(Theta which, const HalfPlanePoint& tau, const ThetaOptions& opt);
// number of terms used for the given truncation tolerance
long theta_terms(const HalfPlanePoint& tau, double tol);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
// inverse of a modulo m (m >= 1), in [0, m)
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);
std::int64_t floor_mod(std::int64_t a, std::int64_t m);
// Jacobi symbol (a/n) for odd n > 0
int jacobi_symbol(std::int64_t a, std::int64_t n);

// G_q(a) = sum_{m=1}^q e(a m^2 / q), exact phase reduction.
cplx gauss_sum(std::int64_t q, std::int64_t a);

struct GaussSumValue {
  std::int64_t c = 1;
  std::int64_t d = 0;
  cplx value;
};

// g_c(d): G_{2c}(d)/2 for even c, G_c(2d) for odd c.
GaussSumValue g_small(std::int64_t c, std::int64_t d);

// g_c(d) / sqrt(c) = exp(2 pi i k / 8); returns k in [0, 8). Closed form.
int gauss_root_index(std::int64_t c, std::int64_t d);

// e^{2 pi i k / 8}
cplx eighth_root(int k);

// j_Theta(M, tau)^{-p} for M with bottom row (c, d), c > 0, in Gamma_theta.
cplx theta_cocycle_power(std::int64_t c, std::int64_t d, const HalfPlanePoint& tau, int p);

// (Theta3(M tau) / Theta3(tau))^{-p} with M completed from (c, d).
cplx theta_quotient_power(std::int64_t c, std::int64_t d, const HalfPlanePoint& tau, int p);

}  // namespace fisph
