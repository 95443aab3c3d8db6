#include <doctest.h>

#include <cmath>

#include "fisph/modular.hpp"

using namespace fisph;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("branch_power examples") {
  CHECK(std::abs(branch_power(HalfPlanePoint(0.0, 1.0), 7.5) - 1.0) < 1e-15);
  CHECK(std::abs(branch_power(HalfPlanePoint(0.0, 2.0), 0.5) - std::sqrt(2.0)) < 1e-15);
  const cplx v = branch_power(HalfPlanePoint(1.0, 1.0), 0.5);
  CHECK(v.real() > 0.0);
  CHECK(std::abs(v * v - cplx(1.0, -1.0)) < 1e-15);
}

TEST_CASE("branch_power composes additively in the exponent") {
  for (double x : {-2.0, -0.3, 0.0, 0.7, 3.0})
    for (double y : {0.1, 1.0, 5.0}) {
      const HalfPlanePoint t(x, y);
      for (double a : {-3.5, -0.5, 0.25, 2.0}) {
        const cplx lhs = branch_power(t, a) * branch_power(t, 1.0 - a);
        CHECK(std::abs(lhs - (-I * t.value())) < 1e-12 * (1.0 + std::abs(t.value())));
      }
    }
}

TEST_CASE("half plane point rejects the real axis") {
  CHECK_THROWS_AS(HalfPlanePoint(0.0, 0.0), domain_error);
  CHECK_THROWS_AS(HalfPlanePoint(1.0, -1.0), domain_error);
}

TEST_CASE("theta nullwert examples") {
  const HalfPlanePoint t(0.3, 0.7);
  CHECK(std::abs(theta_nullwert(Theta::three, t.translate(2.0)) - theta_nullwert(Theta::three, t)) < 1e-14);
  CHECK(std::abs(theta_nullwert(Theta::three, HalfPlanePoint(0.0, 1.0)) - 1.08643481121331) < 1e-13);
  const double tol = 1e-14;
  const HalfPlanePoint i(0.0, 1.0);
  const cplx t2 = theta_nullwert(Theta::two, i, tol), t3 = theta_nullwert(Theta::three, i, tol),
             t4 = theta_nullwert(Theta::four, i, tol);
  CHECK(std::abs(std::pow(t2, 4) + std::pow(t4, 4) - std::pow(t3, 4)) < 10 * tol);
}

TEST_CASE("theta inversion on a grid") {
  for (double x : {-0.5, 0.0, 0.4})
    for (double y : {0.3, 1.0, 2.5}) {
      const HalfPlanePoint t(x, y);
      const cplx lhs = theta_nullwert(Theta::three, t.inverted());
      const cplx rhs = branch_power(t, 0.5) * theta_nullwert(Theta::three, t);
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("theta cocycle examples") {
  CHECK(std::abs(theta_cocycle_power(1, 0, HalfPlanePoint(0.0, 1.0), 2) - 1.0) < 1e-15);
  CHECK(std::abs(theta_cocycle_power(1, 0, HalfPlanePoint(0.0, 2.0), 2) - 0.5) < 1e-15);
  const HalfPlanePoint t(0.1, 0.9);
  const cplx z = t.value();
  const HalfPlanePoint mt(z / (2.0 * z + 1.0));
  const cplx q = std::pow(theta_nullwert(Theta::three, mt) / theta_nullwert(Theta::three, t), -8);
  CHECK(std::abs(theta_cocycle_power(2, 1, t, 8) - q) < 1e-9 * std::abs(q));
  CHECK_THROWS_AS(theta_cocycle_power(2, 2, t, 8), domain_error);
  CHECK_THROWS_AS(theta_cocycle_power(3, 1, t, 8), domain_error);
}

TEST_CASE("gauss sum examples") {
  CHECK(std::abs(gauss_sum(4, 1) - cplx(2.0, 2.0)) < 1e-14);
  const cplx g = g_small(2, 1).value;
  CHECK(std::abs(g - cplx(1.0, 1.0)) < 1e-14);
  CHECK(std::abs(std::abs(g) - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(std::pow(gauss_sum(4, 1), 2) - cplx(0.0, 8.0)) < 1e-13);
  CHECK_THROWS_AS(g_small(4, 2), domain_error);
}

TEST_CASE("gauss sums: modulus, eighth power and root index") {
  for (std::int64_t c = 1; c <= 60; ++c)
    for (std::int64_t d = -2 * c; d <= 2 * c; ++d) {
      if (gcd64(c, d) != 1) continue;
      const cplx g = g_small(c, d).value;
      CHECK(std::abs(std::abs(g) - std::sqrt(double(c))) < 1e-11 * c);
      CHECK(std::abs(std::pow(g, 8) / std::pow(double(c), 4) - 1.0) < 1e-10);
      CHECK(std::abs(g / std::sqrt(double(c)) - eighth_root(gauss_root_index(c, d))) < 1e-10);
    }
}

TEST_CASE("G_c(d)^2 = i 2c chi(d) for 4 | c") {
  for (std::int64_t c : {4, 8, 12, 16})
    for (std::int64_t d = 1; d < c; d += 2) {
      if (gcd64(c, d) != 1) continue;
      const double chi = (d % 4 == 1) ? 1.0 : -1.0;
      CHECK(std::abs(std::pow(gauss_sum(c, d), 2) - I * (2.0 * c * chi)) < 1e-10 * c);
    }
}

TEST_CASE("integer helpers") {
  CHECK(gcd64(12, -18) == 6);
  CHECK(floor_mod(-3, 4) == 1);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(jacobi_symbol(2, 7) == 1);
  CHECK(jacobi_symbol(3, 7) == -1);
  for (std::int64_t m = 2; m < 50; ++m)
    for (std::int64_t a = 1; a < m; ++a)
      if (gcd64(a, m) == 1) CHECK(floor_mod(a * mod_inverse(a, m), m) == 1);
}

TEST_CASE("cocycle equals theta quotient for even p") {
  double worst = 0.0;
  for (int p = 2; p <= 16; p += 2)
    for (std::int64_t c = 1; c <= 8; ++c)
      for (std::int64_t d = -2 * c + 1; d < 2 * c; ++d) {
        if (gcd64(c, d) != 1 || (c % 2) == floor_mod(d, 2)) continue;
        const HalfPlanePoint t(0.17, 0.35);
        const cplx a = theta_cocycle_power(c, d, t, p), b = theta_quotient_power(c, d, t, p);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
      }
  CHECK(worst < 1e-9);
}
