#include "fisph/words.hpp"

#include <cmath>
#include <numeric>

#include "fisph/modular.hpp"

namespace fisph {

namespace {

std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw overflow_error("integer overflow in matrix product");
  return r;
}

std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw overflow_error("integer overflow in matrix product");
  return r;
}

// nearest integer to num/den, den != 0
std::int64_t round_div(std::int64_t num, std::int64_t den) {
  const long double q = static_cast<long double>(num) / static_cast<long double>(den);
  return static_cast<std::int64_t>(std::llround(q));
}

}  // namespace

bool WordElement::reduced() const {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i].e == 0) return false;
    if (i > 0 && letters[i].g == letters[i - 1].g) return false;
  }
  return true;
}

WordElement normalize(WordElement w) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters) {
    if (l.e == 0) continue;
    if (!out.empty() && out.back().g == l.g) {
      out.back().e += l.e;
      if (out.back().e == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return {out};
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
  return {add(mul(a, o.a), mul(b, o.c)), add(mul(a, o.b), mul(b, o.d)),
          add(mul(c, o.a), mul(d, o.c)), add(mul(c, o.b), mul(d, o.d))};
}

std::int64_t UnimodularMatrix::det() const { return add(mul(a, d), -mul(b, c)); }

UnimodularMatrix gen_power(Gen g, std::int64_t e) {
  if (g == Gen::A) return {1, mul(2, e), 0, 1};
  return {1, 0, mul(-2, e), 1};
}

UnimodularMatrix word_to_matrix(const WordElement& w) {
  UnimodularMatrix m;
  for (const Letter& l : w.letters) m = m * gen_power(l.g, l.e);
  return m;
}

UnimodularMatrix s_bar() { return {0, -1, 1, 0}; }

bool admissible(std::int64_t c, std::int64_t d, RowKind kind) {
  if (c <= 0 || std::gcd(c, d) != 1) return false;
  if (kind == RowKind::P) return c % 2 == 0 && floor_mod(d, 2) == 1;
  return c % 2 == 1 && floor_mod(d, 2) == 0;
}

std::vector<BottomRow> enumerate_bottom_rows(RowKind kind, std::int64_t c_max, std::int64_t d_halfwidth) {
  std::vector<BottomRow> rows;
  for (std::int64_t c = 1; c <= c_max; ++c)
    for (std::int64_t d = -d_halfwidth; d <= d_halfwidth; ++d)
      if (admissible(c, d, kind)) rows.push_back({c, d, kind});
  return rows;
}

std::int64_t alpha_entry(const BottomRow& row) {
  if (!admissible(row.c, row.d, row.kind)) throw domain_error("alpha_entry: row violates the kind's constraints");
  const std::int64_t c = row.c;
  if (row.kind == RowKind::P) {
    std::int64_t a = mod_inverse(row.d, 2 * c);
    if (a > c) a -= 2 * c;
    if (a % 2 == 0 || a <= -c || a >= c) throw domain_error("alpha_entry: no admissible candidate");
    return a;
  }
  std::int64_t a = mod_inverse(row.d, c);
  if (a % 2 != 0) a -= c;
  if (a % 2 != 0 || a <= -c || a >= c) throw domain_error("alpha_entry: no admissible candidate");
  return a;
}

WordElement reduce_gamma2(const UnimodularMatrix& m0, int* sign, long max_steps) {
  if (m0.det() != 1) throw domain_error("reduce_gamma2: determinant != 1");
  if (floor_mod(m0.b, 2) != 0 || floor_mod(m0.c, 2) != 0)
    throw domain_error("reduce_gamma2: matrix not in Gamma(2)");
  UnimodularMatrix m = m0;
  std::vector<Letter> applied;
  long steps = 0;
  while (m.c != 0) {
    if (++steps > max_steps) throw std::runtime_error("reduce_gamma2: step limit exceeded");
    if (std::llabs(m.d) >= std::llabs(m.c)) {
      const std::int64_t k = round_div(-m.d, 2 * m.c);
      m = m * gen_power(Gen::A, k);
      applied.push_back({Gen::A, k});
    } else {
      const std::int64_t l = round_div(m.c, 2 * m.d);
      m = m * gen_power(Gen::B, l);
      applied.push_back({Gen::B, l});
    }
  }
  // m = +-A^j
  const int s = m.a > 0 ? 1 : -1;
  const std::int64_t j = s * m.b / 2;
  WordElement w;
  w.letters.push_back({Gen::A, j});
  for (auto it = applied.rbegin(); it != applied.rend(); ++it) w.letters.push_back({it->g, -it->e});
  if (sign) *sign = s;
  return normalize(w);
}

bool verify_membership(const UnimodularMatrix& m, WordSet set) {
  if (set == WordSet::B) {
    const WordElement w = reduce_gamma2(m);
    return w.starts_with_B();
  }
  if (m.det() != 1) throw domain_error("verify_membership: determinant != 1");
  if (floor_mod(m.a, 2) != 0 || floor_mod(m.d, 2) != 0)
    throw domain_error("verify_membership: matrix not congruent to S mod 2");
  const UnimodularMatrix n = m * UnimodularMatrix{0, 1, -1, 0};
  const WordElement w = reduce_gamma2(n);
  return w.letters.empty() || w.starts_with_B();
}

std::int64_t alpha_by_words(const BottomRow& row) {
  if (!admissible(row.c, row.d, row.kind)) throw domain_error("alpha_by_words: row violates the kind's constraints");
  const std::int64_t c = row.c, d = row.d;
  std::int64_t a = mod_inverse(d, c);
  if (row.kind == RowKind::Ptilde && a % 2 != 0) a += c;
  if (c == 1) a = 0;
  std::int64_t b = static_cast<std::int64_t>((static_cast<__int128>(a) * d - 1) / c);
  if (row.kind == RowKind::P && floor_mod(b, 2) != 0) {
    a += c;
    b += d;
  }
  UnimodularMatrix m{a, b, c, d};
  if (row.kind == RowKind::Ptilde) m = m * UnimodularMatrix{0, 1, -1, 0};
  const WordElement w = reduce_gamma2(m);
  if (!w.letters.empty() && w.letters.front().g == Gen::A) m = gen_power(Gen::A, -w.letters.front().e) * m;
  if (row.kind == RowKind::Ptilde) m = m * s_bar();
  if (m.c < 0) m = -m;
  if (m.c != c || m.d != d) throw std::logic_error("alpha_by_words: bottom row changed");
  return m.a;
}

std::vector<WordElement> enumerate_B_words(int L) {
  std::vector<WordElement> out;
  std::vector<Letter> cur;
  auto rec = [&](auto&& self, int budget, Gen next) -> void {
    for (int e = 1; e <= budget; ++e)
      for (int s : {1, -1}) {
        cur.push_back({next, s * e});
        out.push_back({cur});
        self(self, budget - e, next == Gen::A ? Gen::B : Gen::A);
        cur.pop_back();
      }
  };
  rec(rec, L, Gen::B);
  return out;
}

}  // namespace fisph
