#pragma once
// The generating series F_p, F~_p: truncated evaluation, functional equation,
// Fourier coefficients by the trapezoidal rule, radial interpolation residuals.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "fisph/coeff.hpp"
#include "fisph/kloosterman.hpp"
#include "fisph/modular.hpp"

namespace fisph {

struct SeriesTruncation {
  std::int64_t c_max = 64;
  std::int64_t d_halfwidth = 0;  // 0: coupled default
  double tail_bound = 0.0;       // filled in by the evaluators
};

std::int64_t coupled_halfwidth(std::int64_t c_max, double re_tau);

struct SeriesValue {
  cplx value;
  double tail_bound = 0.0;  // omitted-term majorant
  double error = 0.0;       // numerical error of the kept part
  bool flagged = false;
};

// Box enumeration of the rows (c, d), 0 < c <= c_max, |d| <= d_halfwidth.
SeriesValue eval_F_box(int p, const HalfPlanePoint& tau, double r, SeriesTruncation trunc, bool tilde,
                       double tol = 1e-6);
inline SeriesValue eval_F(int p, const HalfPlanePoint& tau, double r, SeriesTruncation trunc, double tol = 1e-6) {
  return eval_F_box(p, tau, r, trunc, false, tol);
}
inline SeriesValue eval_F_tilde(int p, const HalfPlanePoint& tau, double r, SeriesTruncation trunc,
                                double tol = 1e-6) {
  return eval_F_box(p, tau, r, trunc, true, tol);
}

// Rigorous majorant of sum |c tau + d|^{-p/2} over rows outside the box.
double box_tail_bound(int p, const HalfPlanePoint& tau, std::int64_t c_max, std::int64_t d_halfwidth);

// Sum over all d for every c <= c_max: each residue class mod 2c is summed
// directly near the pole and by Euler-Maclaurin beyond.
class CompletedSeries {
 public:
  struct Options {
    int direct = 10;     // |l| <= direct summed term by term
    int em_order = 8;    // Euler-Maclaurin correction terms
  };
  CompletedSeries(int p, double r, bool tilde, std::int64_t c_max);
  CompletedSeries(int p, double r, bool tilde, std::int64_t c_max, Options opt);

  // sum over c <= c_max
  SeriesValue eval(const HalfPlanePoint& tau) const;
  // contribution of a single c
  cplx eval_c(const HalfPlanePoint& tau, std::int64_t c) const;
  // majorant for c > c_max via the coefficient bound |S| <= c
  double c_tail_bound(const HalfPlanePoint& tau) const;

  int p() const { return p_; }
  double r() const { return r_; }
  bool tilde() const { return tilde_; }
  std::int64_t c_max() const { return c_max_; }

 private:
  struct Class {
    std::int64_t c;
    std::int64_t d0;
    cplx weight;  // +-c^{-p/2} (sqrt c / g)^p e^{pi i alpha r^2 / c} / c^{-p/2}... folded
  };
  cplx completed(cplx w, double beta, double* err) const;
  int p_;
  double r_;
  bool tilde_;
  std::int64_t c_max_;
  Options opt_;
  std::vector<Class> classes_;
  std::vector<std::size_t> c_begin_;  // index of first class for each c
};

// Shared store of closed-form coefficients, filled in batches.
class CoefficientCache {
 public:
  explicit CoefficientCache(ClosedFormOptions opt = {}) : opt_(opt) {}
  // make sure b (and b~) for n <= n_max are present for every (p, r)
  void ensure(const std::vector<int>& ps, const std::vector<double>& rs, int n_max, bool with_tilde = true);
  const CoefficientResult& get(int p, int n, double r, bool tilde);
  bool has(int p, int n, double r, bool tilde) const;
  const ClosedFormOptions& options() const { return opt_; }
  std::size_t size() const;

 private:
  using Key = std::tuple<int, int, double, bool>;
  ClosedFormOptions opt_;
  mutable std::mutex mu_;
  std::map<Key, CoefficientResult> store_;
};

struct FunctionalOptions {
  std::int64_t c_direct = 64;
  double tol = 1e-6;
  int n_tail_max = 60;
};

// F (or F~) = completed sum over c <= c_direct + sum_n e^{pi i n tau}(b_n - b_n^{<= c_direct}).
SeriesValue eval_F_accelerated(int p, const HalfPlanePoint& tau, double r, bool tilde, CoefficientCache& cache,
                               const FunctionalOptions& opt = {});

// |F(tau) + (-i tau)^{-p/2} F~(-1/tau) - e^{pi i r^2 tau}|
struct FunctionalResidual {
  double residual = 0.0;
  double bound = 0.0;
  bool flagged = false;
};
FunctionalResidual functional_equation_residual(int p, const HalfPlanePoint& tau, double r, CoefficientCache& cache,
                                                const FunctionalOptions& opt = {});

// Lemma-type majorant C0 eps^{-2} (y0^{-k} + y0^{-k/2}).
double tail_envelope(double k, double y0, double eps);
double tail_envelope_constant();
// brute force sum over B of |c tau + d|^{-k} plus a rigorous remainder
double theta_row_sum(double k, const HalfPlanePoint& tau, std::int64_t c_max, bool tilde = false);

struct ContourOptions {
  std::int64_t c_max = 32;  // truncation of the series being integrated
  double y_floor = 0.05;
  int n_start = 32;
  int n_nodes_max = 16384;
  double tol = 1e-9;
  bool shared_height = true;  // one height (the lowest) for a batch of n
  double height_scale = 1.0;
};

// Trapezoidal coefficients of the series truncated at c <= c_max.
std::vector<CoefficientResult> coeff_contour_batch(int p, const std::vector<int>& ns, double r, bool tilde,
                                                   const ContourOptions& opt = {});
CoefficientResult coeff_contour(int p, int n, double r, double tol, bool tilde = false, const ContourOptions& opt = {});

// Radial interpolation check on e^{pi i tau |x|^2}.
struct RadialResidual {
  double residual = 0.0;
  double coeff_error = 0.0;
  bool flagged = false;
};
RadialResidual radial_residual(int p, const HalfPlanePoint& tau, double r, int n_max, CoefficientCache& cache);

}  // namespace fisph
