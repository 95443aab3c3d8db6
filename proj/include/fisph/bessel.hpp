#pragma once
// Bessel J of real order: power series (extended precision where cancellation bites)
// and the large-argument expansion with smallest-term stopping.

namespace fisph {

struct BesselResult {
  double value = 0.0;
  double error = 0.0;
  bool flagged = false;
};

struct BesselOptions {
  double tol = 1e-15;
  double x_switch_base = 30.0;  // asymptotic region: x >= base + 2 nu
  double x_double = 8.0;        // plain double series below this
};

BesselResult bessel_j(double nu, double x, const BesselOptions& opt = {});
inline BesselResult bessel_j(double nu, double x, double tol) {
  BesselOptions o;
  o.tol = tol;
  return bessel_j(nu, x, o);
}

// Gamma(nu+1) J_nu(x) / (x/2)^nu, equal to 1 at x = 0.
BesselResult bessel_lambda_hat(double nu, double x, const BesselOptions& opt = {});

// J_{n+1/2}(x) via spherical Bessel recurrence (closed trigonometric forms), n >= 0
double bessel_half_integer(int n, double x);

}  // namespace fisph
