#pragma once
// Zonal harmonics, sphere quadrature, harmonic polynomials and lift operators.

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "fisph/modular.hpp"

namespace fisph {

using Rational = boost::rational<long long>;

// dim H_m(R^d), exact
std::int64_t dim_harmonics(int d, int m);
// same, as a double (no overflow for large m)
double dim_harmonics_real(int d, int m);

struct ZonalKernel {
  int d = 5;
  int m = 0;
};

// Z_m^d(zeta, omega) as a function of t = <zeta, omega>
double zonal_eval(const ZonalKernel& k, double t);
// Z_m^d(x, y) = |x|^m |y|^m Z(x^.y^)
double zonal_eval(const ZonalKernel& k, const std::vector<double>& x, const std::vector<double>& y);
// all Z_0..Z_{m_max} at t
std::vector<double> zonal_all(int d, int m_max, double t);

struct SphereQuadrature {
  int d = 2;
  int exact_degree = 0;
  Eigen::MatrixXd nodes;  // d x N, unit columns
  Eigen::VectorXd weights;
  std::size_t size() const { return static_cast<std::size_t>(weights.size()); }
};

SphereQuadrature build_quadrature(int d, int exact_degree);

// exact integral of zeta^alpha against the probability measure
double monomial_moment(const std::vector<int>& alpha);

// Gauss rule for (1 - t^2)^a on [-1, 1], weights summing to 1
void gauss_gegenbauer(int n, double a, std::vector<double>& t, std::vector<double>& w);

class HarmonicPoly {
 public:
  using Exponent = std::vector<int>;
  HarmonicPoly() = default;
  explicit HarmonicPoly(int d) : d_(d) {}

  int dim() const { return d_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  void add(const Exponent& e, Rational c);
  // -1 for the zero polynomial
  int degree() const;
  bool homogeneous() const;
  bool is_zero() const { return terms_.empty(); }

  double eval(const double* x) const;
  double eval(const std::vector<double>& x) const { return eval(x.data()); }
  HarmonicPoly laplacian() const;
  HarmonicPoly derivative(int i) const;
  bool is_harmonic() const { return laplacian().is_zero(); }

  HarmonicPoly operator+(const HarmonicPoly& o) const;
  HarmonicPoly operator*(Rational s) const;

  static HarmonicPoly constant(int d, Rational c = 1);
  // x_{i1} x_{i2} ... over distinct coordinates
  static HarmonicPoly coordinate_product(int d, const std::vector<int>& idx);
  // Re (x_i + sqrt(-1) x_j)^m
  static HarmonicPoly re_power(int d, int m, int i, int j);
  static HarmonicPoly im_power(int d, int m, int i, int j);

 private:
  int d_ = 0;
  std::map<Exponent, Rational> terms_;
};

// <u, v> in L^2 of the probability measure, by quadrature
double inner_product(const HarmonicPoly& u, const HarmonicPoly& v, const SphereQuadrature& q);
// same, exactly from the monomial moments
double inner_product_exact(const HarmonicPoly& u, const HarmonicPoly& v);

// amp * u0(x) * e^{pi i tau |x|^2}
struct HarmonicGaussian {
  int d = 5;
  int m0 = 0;
  HarmonicPoly u0;
  HalfPlanePoint tau;
  cplx amp = 1.0;

  HarmonicGaussian() = default;
  HarmonicGaussian(HarmonicPoly u, HalfPlanePoint t, cplx a = 1.0);
  cplx eval(const double* x) const;
  cplx eval(const std::vector<double>& x) const { return eval(x.data()); }
  HarmonicGaussian operator*(cplx s) const;
};

HarmonicGaussian hecke_funk_transform(const HarmonicGaussian& f);

// L_u^p f at |y| = y_norm, analytic branch
cplx lift(const HarmonicGaussian& f, const HarmonicPoly& u, int p, double y_norm, const SphereQuadrature& q);
// quadrature of f(y zeta) u(zeta / y) on the sphere, y_norm > 0
cplx lift_numeric(const std::function<cplx(const double*)>& f, const HarmonicPoly& u, double y_norm,
                  const SphereQuadrature& q);

// radial amp * e^{pi i tau |y|^2} on R^p and its transform
struct RadialGaussian {
  int p = 5;
  HalfPlanePoint tau;
  cplx amp = 1.0;
  cplx eval(double y_norm) const;
};
RadialGaussian radial_transform(const RadialGaussian& g);

}  // namespace fisph
