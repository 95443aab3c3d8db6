#pragma once
// Bessel-Kloosterman expansions of b_{p,n}(r), b~_{p,n}(r) and the Poincare coefficients.

#include <complex>
#include <cstdint>
#include <vector>

#include "fisph/accel.hpp"
#include "fisph/coeff.hpp"

namespace fisph {

enum class SumKind { even_c, odd_c };

struct KloostermanSumValue {
  int p = 0;
  int n = 0;
  double r = 0.0;
  std::int64_t c = 1;
  std::complex<double> value;
  SumKind kind = SumKind::even_c;
};

// Full finite sum over d mod 2c (odd d for even c, even d for odd c).
KloostermanSumValue kloosterman_sum(int p, int n, double r, std::int64_t c, SumKind kind);

struct ResidueClass {
  std::int64_t d;
  std::int64_t alpha;
  int k;  // g_c(d) / sqrt(c) = e^{2 pi i k / 8}
};

// Representatives 0 < d < c (d = 0 for c = 1) of the admissible classes mod 2c
// up to d -> -d, with their alpha entries and Gauss-sum root indices.
std::vector<ResidueClass> half_residues(std::int64_t c, bool tilde);

// Default truncation in c for dimension p.
std::int64_t default_c_max(int p);

struct ClosedFormOptions {
  std::int64_t c_max = 0;  // 0: default_c_max(p)
  double c_max_scale = 1.0;
  bool accelerate = true;
  double tol = 1e-6;
  int threads = 1;
};

struct ClosedTask {
  int p = 5;
  bool tilde = false;
  double r = 0.0;
  int n_max = 1;
};

// Results are ordered task by task, n = 1..n_max within a task.
std::vector<CoefficientResult> coeff_closed_batch(const std::vector<ClosedTask>& tasks, const ClosedFormOptions& opt);

CoefficientResult coeff_closed(int p, int n, double r, bool tilde, const ClosedFormOptions& opt = {});

// the c-th summand (c even for b, odd for b~), computed from kloosterman_sum
double closed_form_term(int p, int n, double r, bool tilde, std::int64_t c);

// Rigorous majorant for the omitted c > c_max terms (|S| <= c, |Lambda| <= 1).
double closed_form_trivial_tail(int p, int n, std::int64_t c_max);

// S_{chi^k}(m, n, c) over d in (Z/c)^x
std::complex<double> classical_kloosterman(int k, int m, int n, std::int64_t c);

struct PoincareValue {
  std::complex<double> value;  // P^_m(n)
  std::complex<double> sigma;
  double error = 0.0;
  bool flagged = false;
};

struct PoincareOptions {
  std::int64_t c_max = 0;  // 0: 2 * default_c_max(2k)
  bool accelerate = true;
  double tol = 1e-6;
};

// P^_m(n) for n = 1..n_max
std::vector<PoincareValue> poincare_coeff_batch(int k, int m, int n_max, const PoincareOptions& opt = {});
PoincareValue poincare_coeff(int k, int m, int n, const PoincareOptions& opt = {});

}  // namespace fisph
