#include <doctest.h>

#include <cmath>
#include <random>

#include "fisph/harmonics.hpp"

using namespace fisph;

namespace {

std::vector<double> random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> v(d);
  double n = 0.0;
  for (double& x : v) {
    x = nd(rng);
    n += x * x;
  }
  for (double& x : v) x /= std::sqrt(n);
  return v;
}

cplx integrate(const SphereQuadrature& q, const std::function<cplx(const double*)>& f) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights(i) * f(q.nodes.col(i).data());
  return s;
}

}  // namespace

TEST_CASE("dim_harmonics examples") {
  for (int d = 2; d <= 8; ++d) {
    CHECK(dim_harmonics(d, 0) == 1);
    CHECK(dim_harmonics(d, 1) == d);
  }
  CHECK(dim_harmonics(3, 2) == 5);
  for (int m = 0; m <= 20; ++m) CHECK(dim_harmonics(3, m) == 2 * m + 1);
  for (int m = 1; m <= 30; ++m) CHECK(std::abs(dim_harmonics_real(5, m) / double(dim_harmonics(5, m)) - 1.0) < 1e-12);
}

TEST_CASE("zonal kernel examples") {
  for (int d = 3; d <= 7; ++d) {
    for (double t : {-1.0, -0.3, 0.0, 0.8, 1.0}) CHECK(zonal_eval({d, 0}, t) == 1.0);
    for (int m = 0; m <= 12; ++m) CHECK(std::abs(zonal_eval({d, m}, 1.0) - double(dim_harmonics(d, m))) < 1e-9 * dim_harmonics(d, m));
  }
  CHECK_THROWS_AS(zonal_eval({5, 2}, 1.5), domain_error);
}

TEST_CASE("zonal kernel is homogeneous in both arguments") {
  const std::vector<double> x = {0.3, -1.2, 0.5, 2.0, 0.1}, y = {1.0, 0.2, -0.4, 0.3, 0.9};
  std::vector<double> x2 = x;
  for (double& v : x2) v *= 2.0;
  for (int m = 0; m <= 5; ++m)
    CHECK(std::abs(zonal_eval({5, m}, x2, y) - std::pow(2.0, m) * zonal_eval({5, m}, x, y)) <
          1e-10 * (1.0 + std::abs(zonal_eval({5, m}, x2, y))));
}

TEST_CASE("zonal reproducing property, d = 5, m = 3") {
  std::mt19937_64 rng(7);
  const SphereQuadrature q = build_quadrature(5, 6);
  const HarmonicPoly u = HarmonicPoly::coordinate_product(5, {0, 1, 2});
  REQUIRE(u.is_harmonic());
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<double> w = random_unit(5, rng);
    const cplx s = integrate(q, [&](const double* z) {
      double t = 0.0;
      for (int i = 0; i < 5; ++i) t += z[i] * w[i];
      return cplx(u.eval(z) * zonal_eval({5, 3}, t));
    });
    CHECK(std::abs(s - u.eval(w)) < 1e-10);
  }
}

TEST_CASE("zonal kernels of different degree are orthogonal") {
  std::mt19937_64 rng(11);
  const SphereQuadrature q = build_quadrature(4, 14);
  const std::vector<double> a = random_unit(4, rng), b = random_unit(4, rng);
  for (int m = 0; m <= 7; ++m)
    for (int k = 0; k <= 7; ++k) {
      const cplx s = integrate(q, [&](const double* z) {
        double ta = 0.0, tb = 0.0;
        for (int i = 0; i < 4; ++i) {
          ta += z[i] * a[i];
          tb += z[i] * b[i];
        }
        return cplx(zonal_eval({4, m}, ta) * zonal_eval({4, k}, tb));
      });
      double ab = 0.0;
      for (int i = 0; i < 4; ++i) ab += a[i] * b[i];
      const double expect = m == k ? zonal_eval({4, m}, ab) : 0.0;
      CHECK(std::abs(s - expect) < 1e-10 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("sphere quadrature examples") {
  const SphereQuadrature q = build_quadrature(5, 8);
  CHECK(std::abs(q.weights.sum() - 1.0) < 1e-15);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const cplx s = integrate(q, [&](const double* z) { return cplx(z[i] * z[j]); });
      CHECK(std::abs(s.real() - (i == j ? 0.2 : 0.0)) < 1e-15);
    }
  const cplx m4 = integrate(q, [](const double* z) { return cplx(std::pow(z[0], 4)); });
  CHECK(std::abs(m4.real() - 3.0 / 35.0) < 1e-15);
  CHECK(std::abs(monomial_moment({4, 0, 0, 0, 0}) - 3.0 / 35.0) < 1e-16);
  CHECK(monomial_moment({1, 2, 0}) == 0.0);
  CHECK_THROWS_AS(build_quadrature(9, 4), domain_error);
}

TEST_CASE("quadrature nodes lie on the sphere") {
  for (int d = 2; d <= 8; ++d) {
    const SphereQuadrature q = build_quadrature(d, 6);
    CHECK(q.exact_degree >= 6);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(std::abs(q.nodes.col(i).norm() - 1.0) < 1e-14);
    CHECK((q.weights.array() > 0.0).all());
  }
}

TEST_CASE("harmonic polynomial algebra") {
  const HarmonicPoly a = HarmonicPoly::re_power(4, 3, 0, 2), b = HarmonicPoly::im_power(4, 3, 0, 2);
  CHECK(a.is_harmonic());
  CHECK(b.is_harmonic());
  CHECK(a.degree() == 3);
  CHECK(a.homogeneous());
  CHECK((a + b * Rational(-1, 2)).is_harmonic());
  HarmonicPoly sq(3);
  sq.add({2, 0, 0}, 1);
  CHECK_FALSE(sq.is_harmonic());
  CHECK(sq.laplacian().degree() == 0);
  CHECK((a + a * Rational(-1)).is_zero());
  CHECK(HarmonicPoly(3).degree() == -1);
  const double x[4] = {0.5, 7.0, -1.5, 2.0};
  // Re (x0 + i x2)^3 = x0^3 - 3 x0 x2^2
  CHECK(std::abs(a.eval(x) - (0.125 - 3 * 0.5 * 2.25)) < 1e-14);
}

TEST_CASE("inner products, exact and by quadrature") {
  const SphereQuadrature q = build_quadrature(5, 10);
  const HarmonicPoly u = HarmonicPoly::coordinate_product(5, {0, 1}), v = HarmonicPoly::re_power(5, 2, 2, 3);
  CHECK(std::abs(inner_product(u, u, q) - inner_product_exact(u, u)) < 1e-15);
  CHECK(std::abs(inner_product(u, v, q)) < 1e-15);
  CHECK(std::abs(inner_product_exact(u, u) - 1.0 / 35.0) < 1e-16);
}

TEST_CASE("harmonic gaussian rejects non-harmonic input") {
  HarmonicPoly sq(5);
  sq.add({2, 0, 0, 0, 0}, 1);
  CHECK_THROWS_AS(HarmonicGaussian(sq, HalfPlanePoint(0.0, 1.0)), domain_error);
  CHECK_THROWS_AS(HarmonicGaussian(HarmonicPoly(5), HalfPlanePoint(0.0, 1.0)), domain_error);
}

TEST_CASE("hecke-funk transform examples") {
  const HalfPlanePoint i(0.0, 1.0);
  const HarmonicGaussian g(HarmonicPoly::constant(5), i);
  const HarmonicGaussian gh = hecke_funk_transform(g);
  CHECK(std::abs(gh.amp - 1.0) < 1e-15);
  CHECK(std::abs(gh.tau.value() - i.value()) < 1e-15);
  const HarmonicGaussian f(HarmonicPoly::coordinate_product(5, {0}), HalfPlanePoint(0.0, 2.0));
  CHECK(std::abs(hecke_funk_transform(f).amp - cplx(0.0, -std::pow(2.0, -3.5))) < 1e-15);
  for (int m0 = 0; m0 <= 3; ++m0) {
    const HarmonicPoly u = m0 == 0 ? HarmonicPoly::constant(5) : HarmonicPoly::re_power(5, m0, 1, 3);
    for (const HalfPlanePoint& t : {i, HalfPlanePoint(0.4, 0.7)}) {
      const HarmonicGaussian h(u, t, cplx(0.3, -1.1));
      const HarmonicGaussian hh = hecke_funk_transform(hecke_funk_transform(h));
      const double sign = m0 % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(hh.amp - sign * h.amp) < 1e-13);
      CHECK(std::abs(hh.tau.value() - t.value()) < 1e-13);
    }
  }
}

TEST_CASE("hecke-funk transform matches a direct Fourier integral in d = 2") {
  // 2D transform of x0 e^{pi i tau |x|^2} at one point, by a tensor midpoint rule
  const HalfPlanePoint t(0.0, 1.3);
  const HarmonicGaussian f(HarmonicPoly::coordinate_product(2, {0}), t);
  const HarmonicGaussian fh = hecke_funk_transform(f);
  const double xi[2] = {0.4, -0.7};
  const double h = 0.02, L = 7.0;
  cplx s = 0.0;
  for (double a = -L + h / 2; a < L; a += h)
    for (double b = -L + h / 2; b < L; b += h) {
      const double x[2] = {a, b};
      s += f.eval(x) * std::exp(cplx(0.0, -2.0 * kPi * (a * xi[0] + b * xi[1])));
    }
  s *= h * h;
  CHECK(std::abs(s - fh.eval(xi)) < 1e-9);
}

TEST_CASE("lift examples") {
  const SphereQuadrature q = build_quadrature(5, 8);
  const HalfPlanePoint t(0.2, 0.9);
  HarmonicPoly u = HarmonicPoly::re_power(5, 2, 0, 1);
  const double nrm = std::sqrt(inner_product_exact(u, u));
  const HarmonicGaussian f(u, t, 1.0 / nrm);
  for (double y : {0.3, 1.0, 1.8}) {
    // u0 = u / |u|, so the lift against u0 is the lift against u divided by |u|
    const cplx expect = std::exp(cplx(0.0, kPi * y * y) * t.value());
    CHECK(std::abs(lift(f, u, 9, y, q) / nrm - expect) < 1e-12);
    CHECK(std::abs(lift_numeric([&](const double* x) { return f.eval(x); }, u, y, q) / nrm - expect) < 1e-12);
    const HarmonicPoly v = HarmonicPoly::coordinate_product(5, {2});
    CHECK(std::abs(lift_numeric([&](const double* x) { return f.eval(x); }, v, y, q)) < 1e-15);
    CHECK(lift(f, v, 7, y, q) == cplx(0.0));
  }
  CHECK_THROWS_AS(lift_numeric([&](const double* x) { return f.eval(x); }, u, 0.0, q), domain_error);
}

TEST_CASE("lift intertwines the Fourier transforms") {
  const int d = 5;
  for (int m = 0; m <= 3; ++m) {
    const HarmonicPoly u = m == 0 ? HarmonicPoly::constant(d) : HarmonicPoly::im_power(d, m, 2, 4);
    const SphereQuadrature q = build_quadrature(d, 2 * m + 2);
    const HalfPlanePoint t(-0.3, 1.2);
    const HarmonicGaussian f(u, t);
    const HarmonicGaussian fh = hecke_funk_transform(f);
    const int p = d + 2 * m;
    const RadialGaussian lf{p, t, lift_numeric([&](const double* x) { return f.eval(x); }, u, 1.0, q) /
                                      RadialGaussian{p, t, 1.0}.eval(1.0)};
    const RadialGaussian lfh = radial_transform(lf);
    const cplx im = std::pow(cplx(0.0, -1.0), m);
    for (double y : {0.4, 1.1, 2.0}) {
      const cplx lhs = lift_numeric([&](const double* x) { return fh.eval(x); }, u, y, q);
      CHECK(std::abs(lhs - im * lfh.eval(y)) < 1e-10);
    }
  }
}
