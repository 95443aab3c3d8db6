#include <doctest.h>

#include <cmath>

#include "fisph/kloosterman.hpp"
#include "fisph/modular.hpp"
#include "fisph/series.hpp"
#include "fisph/words.hpp"

using namespace fisph;

TEST_CASE("box series is 2-periodic within its tail bounds") {
  SeriesTruncation tr;
  tr.c_max = 40;
  for (bool tilde : {false, true})
    for (double r : {0.0, 1.0}) {
      const HalfPlanePoint t(0.2, 0.9);
      const SeriesValue a = eval_F_box(10, t, r, tr, tilde), b = eval_F_box(10, t.translate(2.0), r, tr, tilde);
      CHECK(a.tail_bound < 1e-2);
      CHECK(std::abs(a.value - b.value) <= 2.0 * std::max(a.tail_bound, b.tail_bound) + 1e-12);
    }
}

TEST_CASE("box series satisfies the functional equation within combined bounds") {
  SeriesTruncation tr;
  tr.c_max = 60;
  for (double r : {0.0, 0.5, std::sqrt(2.0)}) {
    const HalfPlanePoint t(0.1, 1.1);
    const SeriesValue f = eval_F(12, t, r, tr);
    const SeriesValue g = eval_F_tilde(12, t.inverted(), r, tr);
    const cplx j = branch_power(t, -6.0);
    const cplx lhs = f.value + j * g.value;
    const cplx rhs = std::exp(cplx(0.0, kPi * r * r) * t.value());
    const double bound = f.tail_bound + std::abs(j) * g.tail_bound + f.error + std::abs(j) * g.error;
    CHECK(bound < 1e-3);
    CHECK(std::abs(lhs - rhs) <= bound);
  }
}

TEST_CASE("r = 0, p = 8, tau = i against a direct double sum") {
  const std::int64_t C = 40, D = 20000;
  const cplx tau(0.0, 1.0);
  cplx s = 0.0;
  for (std::int64_t c = 2; c <= C; c += 2)
    for (std::int64_t d = -D; d <= D; ++d) {
      if (d % 2 == 0 || gcd64(c, d) != 1) continue;
      const cplx w = cplx(0.0, -1.0) * (tau + double(d) / double(c));
      s += std::pow(g_small(c, d).value, -8) * std::pow(w, -4.0);
    }
  const CompletedSeries cs(8, 0.0, false, C);
  CHECK(std::abs(cs.eval(HalfPlanePoint(tau)).value - (-s)) < 1e-8);
}

TEST_CASE("completed series agrees with the box series") {
  for (bool tilde : {false, true}) {
    const CompletedSeries cs(9, 0.8, tilde, 24);
    SeriesTruncation tr;
    tr.c_max = 24;
    tr.d_halfwidth = 200000;
    const HalfPlanePoint t(-0.3, 0.8);
    const SeriesValue a = cs.eval(t), b = eval_F_box(9, t, 0.8, tr, tilde);
    CHECK(std::abs(a.value - b.value) < 1e-9);
  }
}

TEST_CASE("tail envelope examples") {
  const double C0 = tail_envelope_constant();
  CHECK(std::abs(tail_envelope(3.0, 1.0, 0.125) - 2.0 * C0 * 64.0) < 1e-12);
  for (double k : {2.5, 3.0, 4.5, 6.0})
    for (double y0 : {1.0, 2.0, 7.5}) CHECK(tail_envelope(k, 2.0 * y0, 0.125) <= tail_envelope(k, y0, 0.125));
  CHECK_THROWS_AS(tail_envelope(3.0, 1.0, 0.5), domain_error);
  CHECK_THROWS_AS(tail_envelope(3.0, 0.0, 0.1), domain_error);
}

TEST_CASE("theta row sums stay below the tail envelope") {
  const HalfPlanePoint i(0.0, 1.0);
  for (int p = 5; p <= 12; ++p) CHECK(theta_row_sum(0.5 * p, i, 500) <= tail_envelope(0.5 * p, 1.0, 0.125));
}

TEST_CASE("contour coefficients vanish for n <= 0") {
  for (int p : {5, 8})
    for (double r : {0.0, 1.7})
      for (const CoefficientResult& c : coeff_contour_batch(p, {-3, 0}, r, false)) {
        CHECK(std::abs(c.value) < 1e-8);
        CHECK(std::abs(c.value) <= c.error_estimate + 1e-12);
        CHECK(c.note.find("vanishing") != std::string::npos);
      }
}

TEST_CASE("contour agrees with the closed form at the same truncation") {
  ContourOptions co;
  ClosedFormOptions cl;
  cl.c_max = co.c_max;
  cl.accelerate = false;
  const double r = std::sqrt(3.0);
  const CoefficientResult a = coeff_contour(8, 2, r, 1e-9, false, co);
  const CoefficientResult b = coeff_closed(8, 2, r, false, cl);
  CHECK(std::abs(a.value - b.value) < 1e-6 * (1.0 + std::abs(b.value)));
  for (double rr : {0.0, 0.7, std::sqrt(2.0)})
    for (int n = 1; n <= 3; ++n) {
      const CoefficientResult x = coeff_contour(8, n, rr, 1e-9, true, co);
      const CoefficientResult y = coeff_closed(8, n, rr, true, cl);
      CHECK(std::abs(x.value - y.value) < 1e-6 * (1.0 + std::abs(y.value)));
    }
}

TEST_CASE("contour result does not depend on the integration height") {
  ContourOptions lo, hi;
  hi.height_scale = 1.5;
  const auto a = coeff_contour_batch(7, {1, 2, 3, 4}, 0.9, false, lo);
  const auto b = coeff_contour_batch(7, {1, 2, 3, 4}, 0.9, false, hi);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].value - b[i].value) < 1e-8 * (1.0 + std::abs(a[i].value)));
}

TEST_CASE("radial interpolation examples") {
  CoefficientCache cache;
  const HalfPlanePoint i(0.0, 1.0);
  CHECK(radial_residual(6, i, 1.3, 25, cache).residual < 1e-6);
  CHECK(radial_residual(6, i, std::sqrt(2.0), 25, cache).residual < 1e-6);
  const HalfPlanePoint t3(0.0, 3.0);
  std::vector<double> res(21);
  for (int n = 5; n <= 20; ++n) res[n] = radial_residual(6, t3, 1.3, n, cache).residual;
  for (int n = 5; n <= 15; ++n) CHECK(res[n + 5] < res[n]);
  CHECK(res[20] < 1e-9);
}

TEST_CASE("accelerated series satisfies the functional equation") {
  CoefficientCache cache;
  const FunctionalResidual fr = functional_equation_residual(7, HalfPlanePoint(0.25, 0.9), 1.0, cache);
  CHECK(fr.residual < 1e-6);
  CHECK_FALSE(fr.flagged);
}
