#include "fisph/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "fisph/bessel.hpp"
#include "fisph/modular.hpp"
#include "fisph/words.hpp"

namespace fisph {

namespace {

using cd = std::complex<double>;

cd unit(double phase) { return {std::cos(phase), std::sin(phase)}; }

// plain product, no inf/nan recovery
inline cd mul(cd a, cd b) { return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()}; }

// e^{pi i alpha r^2 / c} with the phase reduced mod 2
cd alpha_phase(std::int64_t alpha, double r2, std::int64_t c) {
  double t = double(alpha) * r2 / double(c);
  t = std::fmod(t, 2.0);
  return unit(kPi * t);
}

// tab[j] = e^{pi i j / c}, j in [0, 2c), from one quadrant of sincos calls
void fill_unit_table(std::int64_t c, std::vector<cd>& tab) {
  const std::int64_t m = 2 * c;
  tab.resize(m);
  const std::int64_t h = c / 2;
  for (std::int64_t j = 0; j <= h; ++j) {
    const cd z = unit(kPi * double(j) / double(c));
    tab[j] = z;
    tab[c - j] = {-z.real(), z.imag()};
    tab[(c + j) % m] = {-z.real(), -z.imag()};
    tab[(m - j) % m] = {z.real(), -z.imag()};
  }
}

}  // namespace

KloostermanSumValue kloosterman_sum(int p, int n, double r, std::int64_t c, SumKind kind) {
  const bool tilde = kind == SumKind::odd_c;
  if (c < 1) throw domain_error("kloosterman_sum: c must be >= 1");
  if (!tilde && c % 2 != 0) throw domain_error("kloosterman_sum: even_c needs even c");
  if (tilde && c % 2 == 0) throw domain_error("kloosterman_sum: odd_c needs odd c");
  const RowKind rk = tilde ? RowKind::Ptilde : RowKind::P;
  cd s = 0.0;
  const double r2 = r * r;
  for (std::int64_t d = 0; d < 2 * c; ++d) {
    if (!admissible(c, d, rk)) continue;
    const std::int64_t a = alpha_entry({c, d, rk});
    const int k = gauss_root_index(c, d);
    const std::int64_t j = (d * std::int64_t(floor_mod(n, 2 * c))) % (2 * c);
    s += eighth_root(-k * p) * alpha_phase(a, r2, c) * unit(kPi * double(j) / double(c));
  }
  KloostermanSumValue v;
  v.p = p;
  v.n = n;
  v.r = r;
  v.c = c;
  v.value = s;
  v.kind = kind;
  return v;
}

std::int64_t default_c_max(int p) {
  if (p <= 5) return 16384;
  if (p == 6) return 4096;
  if (p == 7) return 2048;
  if (p == 8) return 1024;
  if (p < 12) return 512;
  if (p < 20) return 256;
  return 64;
}

double closed_form_term(int p, int n, double r, bool tilde, std::int64_t c) {
  const KloostermanSumValue S = kloosterman_sum(p, n, r, c, tilde ? SumKind::odd_c : SumKind::even_c);
  const double nu = 0.5 * p - 1.0;
  const double pref = std::exp(nu * std::log(kPi * n) - std::lgamma(0.5 * p) - 0.5 * p * std::log(double(c)));
  const double x = 2.0 * kPi * r * std::sqrt(double(n)) / double(c);
  const double lam = bessel_lambda_hat(nu, x).value;
  return (tilde ? kPi : -kPi) * pref * S.value.real() * lam;
}

double closed_form_trivial_tail(int p, int n, std::int64_t c_max) {
  const double nu = 0.5 * p - 1.0;
  const double s = 0.5 * p;
  const double base = kPi * std::exp(nu * std::log(kPi * n) - std::lgamma(s));
  // sum_{c > C, step 2} c^{1-s} <= (C-1)^{2-s} / (2 (s-2))
  return base * std::pow(std::max(1.0, double(c_max) - 1.0), 2.0 - s) / (2.0 * (s - 2.0));
}

namespace {

struct Slot {
  int p;
  int n_max;
  std::int64_t c_max;
  std::size_t out_index;  // first result index
};

struct RGroup {
  double r;
  std::vector<Slot> slots;
};

// per-thread partial accumulators: [group][slot][n]
using AccTable = std::vector<std::vector<std::vector<RieszAccumulator>>>;

void sweep_range(bool tilde, const std::vector<RGroup>& groups, int N, std::int64_t C, int tid, int nthreads,
                 AccTable& acc) {
  const std::int64_t c0 = tilde ? 1 : 2;
  const std::size_t G = groups.size();
  std::vector<cd> tab;
  std::vector<cd> W(G * 8 * (N + 1));
  std::vector<double> r2(G);
  for (std::size_t g = 0; g < G; ++g) r2[g] = groups[g].r * groups[g].r;
  // per (p) constants
  std::map<int, double> lg;
  for (const auto& grp : groups)
    for (const auto& s : grp.slots) lg[s.p] = std::lgamma(0.5 * s.p);
  std::vector<double> logpin(N + 1);
  for (int n = 1; n <= N; ++n) logpin[n] = std::log(kPi * n);
  std::vector<double> sqn(N + 1);
  for (int n = 1; n <= N; ++n) sqn[n] = std::sqrt(double(n));

  std::vector<cd> ea;                  // [i][g]
  std::vector<std::int64_t> J;
  std::vector<cd> lo(64), hi;
  std::vector<cd> sums(G * 8);
  std::int64_t idx = 0;
  for (std::int64_t c = c0; c <= C; c += 2, ++idx) {
    if (idx % nthreads != tid) continue;
    const std::int64_t twoc = 2 * c;
    fill_unit_table(c, tab);
    const std::vector<ResidueClass> res = half_residues(c, tilde);
    const std::size_t K = res.size();
    ea.resize(K * G);
    for (std::size_t g = 0; g < G; ++g) {
      // e^{pi i alpha r^2 / c} for alpha in [-c, c] from two short tables
      const double th = kPi * r2[g] / double(c);
      const std::int64_t nhi = twoc / 64 + 1;
      hi.resize(nhi);
      for (int s = 0; s < 64; ++s) lo[s] = unit(th * s);
      for (std::int64_t q = 0; q < nhi; ++q) hi[q] = unit(std::fmod(th * double(64 * q - c), 2.0 * kPi));
      for (std::size_t i = 0; i < K; ++i) {
        const std::int64_t t = res[i].alpha + c;
        ea[i * G + g] = mul(hi[t / 64], lo[t % 64]);
      }
    }
    J.assign(K, 0);
    for (int n = 1; n <= N; ++n) {
      std::fill(sums.begin(), sums.end(), cd(0.0));
      for (std::size_t i = 0; i < K; ++i) {
        std::int64_t j = J[i] + res[i].d;
        if (j >= twoc) j -= twoc;
        J[i] = j;
        const double er = tab[j].real(), ei = tab[j].imag();
        const cd* a = &ea[i * G];
        cd* out = &sums[res[i].k];
        for (std::size_t g = 0; g < G; ++g) {
          const double ar = a[g].real(), ai = a[g].imag();
          out[8 * g] += cd(ar * er - ai * ei, ar * ei + ai * er);
        }
      }
      for (std::size_t g = 0; g < G; ++g)
        for (int k = 0; k < 8; ++k) W[(g * 8 + k) * (N + 1) + n] = sums[8 * g + k];
    }
    const double mult = (c == 1) ? 1.0 : 2.0;
    const double logc = std::log(double(c));
    for (std::size_t g = 0; g < G; ++g) {
      for (std::size_t si = 0; si < groups[g].slots.size(); ++si) {
        const Slot& s = groups[g].slots[si];
        if (c > s.c_max) continue;
        const double nu = 0.5 * s.p - 1.0;
        cd rot[8];
        for (int k = 0; k < 8; ++k) rot[k] = eighth_root(-k * s.p);
        for (int n = 1; n <= s.n_max; ++n) {
          double S = 0.0;
          for (int k = 0; k < 8; ++k) {
            const cd w = W[(g * 8 + k) * (N + 1) + n];
            S += rot[k].real() * w.real() - rot[k].imag() * w.imag();
          }
          S *= mult;
          const double pref = std::exp(nu * logpin[n] - lg[s.p] - 0.5 * s.p * logc);
          double lam = 1.0;
          if (groups[g].r != 0.0) {
            const double x = 2.0 * kPi * groups[g].r * sqn[n] / double(c);
            lam = bessel_lambda_hat(nu, x).value;
          }
          const double term = (tilde ? kPi : -kPi) * pref * S * lam;
          acc[g][si][n - 1].add(c, term);
        }
      }
    }
  }
}

void run_kind(bool tilde, const std::vector<ClosedTask>& tasks, const std::vector<std::size_t>& task_offsets,
              const ClosedFormOptions& opt, std::vector<CoefficientResult>& out) {
  std::vector<RGroup> groups;
  int N = 0;
  std::int64_t C = 0;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const ClosedTask& task = tasks[t];
    if (task.tilde != tilde || task.n_max < 1) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const RGroup& g) { return g.r == task.r; });
    if (it == groups.end()) {
      groups.push_back({task.r, {}});
      it = groups.end() - 1;
    }
    std::int64_t cm = opt.c_max > 0 ? opt.c_max : default_c_max(task.p);
    cm = std::max<std::int64_t>(1, std::llround(double(cm) * opt.c_max_scale));
    it->slots.push_back({task.p, task.n_max, cm, task_offsets[t]});
    N = std::max(N, task.n_max);
    C = std::max(C, cm);
  }
  if (groups.empty()) return;
  const int T = std::max(1, opt.threads);
  std::vector<AccTable> accs(T);
  for (auto& acc : accs) {
    acc.resize(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (const Slot& s : groups[g].slots) acc[g].emplace_back(s.n_max, RieszAccumulator(s.c_max));
  }
  if (T == 1) {
    sweep_range(tilde, groups, N, C, 0, 1, accs[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t)
      pool.emplace_back([&, t] { sweep_range(tilde, groups, N, C, t, T, accs[t]); });
    for (auto& th : pool) th.join();
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t si = 0; si < groups[g].slots.size(); ++si) {
      const Slot& s = groups[g].slots[si];
      for (int n = 1; n <= s.n_max; ++n) {
        // merge thread partials in fixed order
        AccelResult res;
        {
          RieszAccumulator merged = accs[0][g][si][n - 1];
          for (int t = 1; t < T; ++t) merged.merge(accs[t][g][si][n - 1]);
          res = merged.finish();
        }
        CoefficientResult& cr = out[s.out_index + (n - 1)];
        cr.p = s.p;
        cr.n = n;
        cr.r = groups[g].r;
        cr.tilde = tilde;
        cr.method = Method::closed_form;
        if (opt.accelerate) {
          cr.value = res.value;
          cr.error_estimate = res.error;
          cr.note = res.extrapolated ? "extrapolated" : "partial_sum";
        } else {
          cr.value = res.raw;
          cr.error_estimate = closed_form_trivial_tail(s.p, n, s.c_max);
          cr.note = "partial_sum";
        }
        cr.flagged = cr.error_estimate > opt.tol * (1.0 + std::abs(cr.value));
      }
    }
  }
}

}  // namespace

std::vector<CoefficientResult> coeff_closed_batch(const std::vector<ClosedTask>& tasks, const ClosedFormOptions& opt) {
  std::vector<std::size_t> offsets(tasks.size());
  std::size_t total = 0;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (tasks[t].p < 5) throw domain_error("coeff_closed: p must be >= 5");
    offsets[t] = total;
    total += std::max(0, tasks[t].n_max);
  }
  std::vector<CoefficientResult> out(total);
  run_kind(false, tasks, offsets, opt, out);
  run_kind(true, tasks, offsets, opt, out);
  return out;
}

CoefficientResult coeff_closed(int p, int n, double r, bool tilde, const ClosedFormOptions& opt) {
  if (n < 1) throw domain_error("coeff_closed: n must be >= 1");
  if (r < 0.0) throw domain_error("coeff_closed: r must be >= 0");
  const auto v = coeff_closed_batch({{p, tilde, r, n}}, opt);
  return v.back();
}

std::complex<double> classical_kloosterman(int k, int m, int n, std::int64_t c) {
  if (c < 1) throw domain_error("classical_kloosterman: c must be >= 1");
  cd s = 0.0;
  for (std::int64_t d = 1; d <= c; ++d) {
    if (std::gcd(c, d) != 1) continue;
    const std::int64_t db = mod_inverse(d, c);
    double chi = 1.0;
    if (k % 2 != 0 && d % 4 == 3) chi = -1.0;
    const std::int64_t j = floor_mod(floor_mod(db * (m % c), c) + floor_mod(d * (n % c), c), c);
    s += chi * unit(2.0 * kPi * double(j) / double(c));
  }
  return s;
}

std::vector<PoincareValue> poincare_coeff_batch(int k, int m, int n_max, const PoincareOptions& opt) {
  if (k < 3) throw domain_error("poincare_coeff: k must be >= 3");
  if (m < 1 || n_max < 1) throw domain_error("poincare_coeff: m, n must be >= 1");
  const std::int64_t C = opt.c_max > 0 ? opt.c_max : 2 * default_c_max(2 * k);
  std::vector<RieszAccumulator> re(n_max, RieszAccumulator(C)), im(n_max, RieszAccumulator(C));
  std::vector<cd> tab;
  std::vector<cd> S(n_max + 1);
  for (std::int64_t c = 4; c <= C; c += 4) {
    tab.resize(c);
    for (std::int64_t j = 0; j < c; ++j) tab[j] = unit(2.0 * kPi * double(j) / double(c));
    std::fill(S.begin(), S.end(), cd(0.0));
    for (std::int64_t d = 1; d < c; d += 2) {
      if (std::gcd(c, d) != 1) continue;
      const std::int64_t db = mod_inverse(d, c);
      const double chi = (k % 2 != 0 && d % 4 == 3) ? -1.0 : 1.0;
      std::int64_t j = floor_mod(db * std::int64_t(m % c), c);
      for (int n = 1; n <= n_max; ++n) {
        j += d;
        if (j >= c) j -= c;
        S[n] += chi * tab[j];
      }
    }
    for (int n = 1; n <= n_max; ++n) {
      const double x = 4.0 * kPi * std::sqrt(double(n) * m) / double(c);
      const double J = bessel_j(k - 1.0, x).value;
      const cd t = S[n] * J / double(c);
      re[n - 1].add(c, t.real());
      im[n - 1].add(c, t.imag());
    }
  }
  std::vector<PoincareValue> out(n_max);
  const cd ik = std::pow(cd(0.0, 1.0), -k);
  for (int n = 1; n <= n_max; ++n) {
    const AccelResult a = re[n - 1].finish(), b = im[n - 1].finish();
    PoincareValue& v = out[n - 1];
    if (opt.accelerate) {
      v.sigma = {a.value, b.value};
      v.error = std::hypot(a.error, b.error);
    } else {
      v.sigma = {a.raw, b.raw};
      v.error = std::hypot(a.raw_error, b.raw_error);
    }
    const double pre = 2.0 * kPi * std::pow(double(n) / m, 0.5 * (k - 1));
    v.value = pre * ik * ((n == m ? 1.0 : 0.0) + v.sigma);
    v.error *= pre;
    v.flagged = v.error > opt.tol * (1.0 + std::abs(v.value));
  }
  return out;
}

PoincareValue poincare_coeff(int k, int m, int n, const PoincareOptions& opt) {
  return poincare_coeff_batch(k, m, n, opt).back();
}

}  // namespace fisph
