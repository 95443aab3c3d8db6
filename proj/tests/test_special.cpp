#include <doctest.h>

#include <cmath>

#include "fisph/accel.hpp"
#include "fisph/bessel.hpp"
#include "fisph/kloosterman.hpp"
#include "fisph/modular.hpp"
#include "fisph/words.hpp"

using namespace fisph;

TEST_CASE("bessel examples") {
  for (double nu : {0.5, 1.0, 2.5, 7.0}) CHECK(bessel_j(nu, 0.0).value == 0.0);
  CHECK(bessel_j(0.0, 0.0).value == 1.0);
  const double j32 = std::sqrt(1.0 / kPi) * (std::sin(2.0) / 2.0 - std::cos(2.0));
  CHECK(std::abs(bessel_j(1.5, 2.0).value - j32) < 1e-14);
  CHECK(std::abs(j32 - 0.4912937786) < 1e-10);
  CHECK(std::abs(bessel_j(2.0, 1.0).value - 0.1149034849) < 1e-10);
}

TEST_CASE("bessel half-integer orders against the closed forms") {
  for (int n = 0; n <= 12; ++n)
    for (double x : {0.01, 0.5, 3.0, 17.0, 45.0, 120.0, 900.0}) {
      const double ref = bessel_half_integer(n, x);
      CHECK(std::abs(bessel_j(n + 0.5, x).value - ref) < 1e-12 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("bessel recurrence across the series and asymptotic regions") {
  for (double nu : {1.5, 2.0, 3.5, 9.0})
    for (double x : {0.3, 5.0, 29.0, 31.0, 60.0, 400.0}) {
      const double l = bessel_j(nu - 1.0, x).value + bessel_j(nu + 1.0, x).value;
      const double r = 2.0 * nu / x * bessel_j(nu, x).value;
      CHECK(std::abs(l - r) < 1e-12 * (1.0 + std::abs(r)));
    }
}

TEST_CASE("bessel lambda hat is 1 at 0 and even") {
  CHECK(bessel_lambda_hat(2.0, 0.0).value == 1.0);
  CHECK(std::abs(bessel_lambda_hat(3.0, 1e-6).value - 1.0) < 1e-12);
}

TEST_CASE("riesz acceleration recovers a known limit") {
  // sum_{c even} c^{-2} = pi^2 / 24
  RieszAccumulator acc(4096);
  for (std::int64_t c = 2; c <= 4096; c += 2) acc.add(c, 1.0 / double(c * c));
  const AccelResult r = acc.finish();
  CHECK(std::abs(r.value - kPi * kPi / 24.0) < 1e-8);
  CHECK(std::abs(r.raw - kPi * kPi / 24.0) > 1e-5);
}

TEST_CASE("kloosterman sum examples") {
  const cplx s = kloosterman_sum(8, 2, 0.0, 2, SumKind::even_c).value;
  cplx direct = 0.0;
  for (std::int64_t d : {1, 3}) direct += std::pow(std::sqrt(2.0) / g_small(2, d).value, 8) * std::exp(cplx(0, kPi * d));
  CHECK(std::abs(s - direct) < 1e-13);
  CHECK(std::abs(s + 2.0) < 1e-13);
  for (std::int64_t c = 2; c <= 40; c += 2) {
    int count = 0;
    for (std::int64_t d = 0; d < 2 * c; ++d) count += admissible(c, d, RowKind::P);
    CHECK(std::abs(kloosterman_sum(7, 3, 1.3, c, SumKind::even_c).value) <= count + 1e-9);
  }
  CHECK_THROWS_AS(kloosterman_sum(7, 3, 1.0, 3, SumKind::even_c), domain_error);
}

TEST_CASE("kloosterman sum at r = sqrt m specializes to the chi^k sum") {
  for (int k : {3, 4, 5, 6})
    for (std::int64_t c : {4, 8})
      for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 4; ++n) {
          const cplx lhs = kloosterman_sum(2 * k, n, std::sqrt(double(m)), c / 2, SumKind::even_c).value;
          const cplx rhs = std::pow(cplx(0.0, 1.0), -k) * classical_kloosterman(k, m, n, c);
          CHECK(std::abs(lhs - rhs) < 1e-12);
        }
}

TEST_CASE("classical sum symmetric in m, n for even k") {
  for (int k : {4, 6})
    for (int m = 1; m <= 5; ++m)
      for (int n = 1; n <= 5; ++n)
        CHECK(std::abs(classical_kloosterman(k, m, n, 4) - classical_kloosterman(k, n, m, 4)) < 1e-12);
}

TEST_CASE("closed form rejects n < 1") {
  CHECK_THROWS_AS(coeff_closed(8, 0, 0.0, false), domain_error);
  CHECK_THROWS_AS(coeff_closed(8, -2, 1.0, false), domain_error);
}

TEST_CASE("closed form at r = 0, p = 6, n = 1 matches the even-c sum") {
  const double pref = -kPi * kPi * kPi / std::tgamma(3.0);
  cplx s = 0.0, s100 = 0.0;
  for (std::int64_t c = 2; c <= 200; c += 2) {
    s += kloosterman_sum(6, 1, 0.0, c, SumKind::even_c).value / std::pow(double(c), 3);
    if (c == 100) s100 = s;
  }
  const CoefficientResult b = coeff_closed(6, 1, 0.0, false);
  CHECK(std::abs(pref * (s - s100)) < 1e-3);
  CHECK(std::abs(b.value - pref * s) < 1e-3);
}

TEST_CASE("closed form terms decay and the real part carries the value") {
  const CoefficientResult b = coeff_closed(8, 3, 0.7, false);
  CHECK(std::abs(b.value.imag()) < 1e-9 * (1.0 + std::abs(b.value)));
  CHECK_FALSE(b.flagged);
}

TEST_CASE("poincare cross identity and diagonal") {
  const PoincareValue P = poincare_coeff(4, 1, 2);
  const CoefficientResult b = coeff_closed(8, 2, 1.0, false);
  CHECK(std::abs(b.value + P.value) < 1e-6 * (1.0 + std::abs(P.value)));
  for (int k : {3, 4, 5, 6})
    for (int m = 1; m <= 3; ++m) {
      const PoincareValue d = poincare_coeff(k, m, m);
      const cplx f = 2.0 * kPi * std::pow(cplx(0.0, 1.0), -k);
      CHECK(std::abs(d.value - f * d.sigma - f) < 1e-12);
    }
}
