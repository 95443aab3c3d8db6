#pragma once
// Interpolation kernels A_n, A~_n and the end-to-end interpolation check.

#include <complex>
#include <vector>

#include "fisph/harmonics.hpp"
#include "fisph/series.hpp"

namespace fisph {

// floor(47 R^2 n) + 2 with R = max(1, |x|)
int default_m_max(double x_norm, int n);

struct KernelRequest {
  int d = 5;
  int n = 1;
  std::vector<double> x;
  int m_max = -1;  // -1: default_m_max
  double tol = 1e-13;
};

struct KernelValue {
  cplx value;
  int m_used = 0;        // last m summed
  int m_policy = 0;      // policy cap
  double tail = 0.0;     // envelope of the omitted terms
  bool flagged = false;  // a coefficient was flagged or the cap was hit first
  std::vector<cplx> partial;  // partial sums, if requested
};

class KernelEngine {
 public:
  KernelEngine(int d, CoefficientCache& cache, int n_cap = 1);

  KernelValue kernel_A(const KernelRequest& req, const std::vector<double>& zeta, bool tilde = false,
                       bool keep_partial = false);
  KernelValue kernel_A_tilde(const KernelRequest& req, const std::vector<double>& zeta, bool keep_partial = false) {
    return kernel_A(req, zeta, true, keep_partial);
  }
  // same, from |x| and t = <x^, zeta>
  KernelValue kernel_radial(int n, double x_norm, double t, bool tilde, int m_max, double tol, bool keep_partial);

  int d() const { return d_; }
  CoefficientCache& cache() { return cache_; }

 private:
  const CoefficientResult& coeff(int p, int n, double r, bool tilde);
  int d_;
  CoefficientCache& cache_;
  int n_cap_;
};

// majorant of |b_{p,n}(r)| and |b~_{p,n}(r)|
double coefficient_majorant(int p, int n);

struct InterpolationReport {
  std::vector<double> x;
  cplx f_true;
  cplx f_reconstructed;
  double residual = 0.0;
  int n_used = 0;
  int m_used = 0;        // kernel truncation actually summed
  int m_policy = 0;      // policy value for n = n_used
  double max_offdiag = 0.0;  // largest |m != m0 kernel term| after integration
  bool flagged = false;
  std::vector<cplx> per_n_contributions;
};

struct InterpolateOptions {
  int m_extra = 12;  // m runs over 0..m0 + m_extra
};

// exact_degree of the quadrature must be >= m_used + m0 + 2
InterpolationReport interpolate(const HarmonicGaussian& f, const std::vector<double>& x, int n_max,
                                const SphereQuadrature& quad, KernelEngine& engine,
                                const InterpolateOptions& opt = {});
int interpolation_quadrature_degree(int m0, const InterpolateOptions& opt = {});

struct GrowthRow {
  int n = 0;
  double sup_A = 0.0;
  double sup_A_tilde = 0.0;
  double ratio = 0.0;  // max(sup) / n^{5d/4 + 1/8}
  int m_used = 0;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  double exponent = 0.0;  // 5d/4 + 1/8
  double slope = 0.0;     // least-squares slope of log sup against log n
  double c_empirical = 0.0;
};

struct GrowthOptions {
  int radii = 7;
  int cosines = 17;
  double tol = 1e-12;
};

GrowthReport kernel_growth_probe(KernelEngine& engine, const std::vector<int>& ns, double delta, double R,
                                 const GrowthOptions& opt = {});

}  // namespace fisph
