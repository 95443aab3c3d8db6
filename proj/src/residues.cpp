#include <algorithm>
#include <mutex>
#include <vector>

#include "fisph/kloosterman.hpp"
#include "fisph/modular.hpp"

namespace fisph {

namespace {

std::mutex spf_mutex;
std::vector<std::int32_t> spf_table;

// smallest prime factors up to n
const std::vector<std::int32_t>& spf(std::int64_t n) {
  std::lock_guard<std::mutex> lock(spf_mutex);
  if (static_cast<std::int64_t>(spf_table.size()) <= n) {
    const std::int64_t m = std::max<std::int64_t>(n + 1, 2 * static_cast<std::int64_t>(spf_table.size()));
    spf_table.assign(m, 0);
    for (std::int64_t i = 2; i < m; ++i)
      if (spf_table[i] == 0)
        for (std::int64_t j = i; j < m; j += i)
          if (spf_table[j] == 0) spf_table[j] = static_cast<std::int32_t>(i);
  }
  return spf_table;
}

struct Factor {
  std::int64_t q;
  int e;
};

std::vector<Factor> factor_odd(std::int64_t n) {
  std::vector<Factor> f;
  if (n <= 1) return f;
  const auto& sp = spf(n);
  while (n > 1) {
    const std::int64_t q = sp[n];
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    f.push_back({q, e});
  }
  return f;
}

}  // namespace

std::vector<ResidueClass> half_residues(std::int64_t c, bool tilde) {
  if (c < 1) throw domain_error("half_residues: c must be >= 1");
  if (tilde != (c % 2 == 1)) throw domain_error("half_residues: parity of c does not match the kind");
  std::vector<ResidueClass> out;
  if (tilde && c == 1) {
    out.push_back({0, 0, 0});
    return out;
  }
  std::int64_t odd = c;
  int s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  const std::vector<Factor> fac = factor_odd(odd);
  // coprimality sieve on d in [0, c)
  std::vector<char> ok(c, 1);
  for (const Factor& f : fac)
    for (std::int64_t j = 0; j < c; j += f.q) ok[j] = 0;
  // Legendre tables for primes with odd exponent
  std::vector<std::vector<signed char>> leg;
  std::vector<std::int64_t> legq;
  for (const Factor& f : fac) {
    if (f.e % 2 == 0) continue;
    std::vector<signed char> t(f.q, -1);
    t[0] = 0;
    for (std::int64_t i = 1; i < f.q; ++i) t[(i * i) % f.q] = 1;
    leg.push_back(std::move(t));
    legq.push_back(f.q);
  }
  auto sym_odd = [&](std::int64_t d) {
    int v = 1;
    for (std::size_t i = 0; i < leg.size(); ++i) v *= leg[i][d % legq[i]];
    return v;
  };
  const std::int64_t M = tilde ? c : 2 * c;
  const std::int64_t d0 = tilde ? 2 : 1;
  for (std::int64_t d = d0; d < c; d += 2)
    if (ok[d]) out.push_back({d, 0, 0});
  // batch inversion mod M
  const std::size_t K = out.size();
  std::vector<std::int64_t> pre(K);
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < K; ++i) {
    acc = acc * out[i].d % M;
    pre[i] = acc;
  }
  std::int64_t inv = K ? mod_inverse(acc, M) : 1;
  for (std::size_t i = K; i-- > 0;) {
    const std::int64_t di = i ? inv * pre[i - 1] % M : inv;
    inv = inv * out[i].d % M;
    std::int64_t a = di;
    if (!tilde) {
      if (a > c) a -= 2 * c;
    } else if (a % 2 != 0) {
      a -= c;
    }
    out[i].alpha = a;
  }
  for (ResidueClass& rc : out) {
    const std::int64_t d = rc.d;
    int k;
    if (!tilde) {
      // (2c/d) = (2/d)^{s+1} (c'/d),  (c'/d) = (d/c') (-1)^{(d-1)(c'-1)/4}
      int j = sym_odd(d);
      if (((d - 1) / 2) % 2 == 1 && ((odd - 1) / 2) % 2 == 1) j = -j;
      if ((s + 1) % 2 == 1 && (d % 8 == 3 || d % 8 == 5)) j = -j;
      k = 1;
      if (d % 4 == 3) k -= 2;
      if (j < 0) k += 4;
    } else {
      // (2d/c) = (2/c) (d/c)
      int j = sym_odd(d);
      if (c % 8 == 3 || c % 8 == 5) j = -j;
      k = (c % 4 == 3) ? 2 : 0;
      if (j < 0) k += 4;
    }
    rc.k = static_cast<int>(floor_mod(k, 8));
  }
  return out;
}

}  // namespace fisph
