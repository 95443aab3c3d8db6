#pragma once
// Words in A = T^2, B = S T^2 S^{-1}, bottom rows of the sets B and B~, alpha entries.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fisph {

struct overflow_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

enum class Gen { A, B };

struct Letter {
  Gen g;
  std::int64_t e;
  bool operator==(const Letter&) const = default;
};

struct WordElement {
  std::vector<Letter> letters;
  bool reduced() const;
  bool starts_with_B() const { return !letters.empty() && letters.front().g == Gen::B; }
  bool operator==(const WordElement&) const = default;
};

// merge neighbours with equal generator and drop zero exponents
WordElement normalize(WordElement w);

struct UnimodularMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  UnimodularMatrix operator*(const UnimodularMatrix& o) const;  // overflow-checked
  UnimodularMatrix operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const UnimodularMatrix&) const = default;
  std::int64_t det() const;
};

UnimodularMatrix gen_power(Gen g, std::int64_t e);
UnimodularMatrix word_to_matrix(const WordElement& w);

enum class RowKind { P, Ptilde };

struct BottomRow {
  std::int64_t c = 0;
  std::int64_t d = 0;
  RowKind kind = RowKind::P;
  bool operator==(const BottomRow&) const = default;
  auto operator<=>(const BottomRow& o) const {
    if (c != o.c) return c <=> o.c;
    return d <=> o.d;
  }
};

bool admissible(std::int64_t c, std::int64_t d, RowKind kind);

std::vector<BottomRow> enumerate_bottom_rows(RowKind kind, std::int64_t c_max, std::int64_t d_halfwidth);

// congruence rule, the hot path
std::int64_t alpha_entry(const BottomRow& row);

// Reduced word of +-M for M in Gamma(2); sign receives the +-1 factor.
WordElement reduce_gamma2(const UnimodularMatrix& m, int* sign = nullptr, long max_steps = 1000000);

enum class WordSet { B, Btilde };

bool verify_membership(const UnimodularMatrix& m, WordSet set);

// alpha by completing the row and stripping the leading A-power, the oracle
std::int64_t alpha_by_words(const BottomRow& row);

// all reduced words that start with B and have exponent l1-norm <= L
std::vector<WordElement> enumerate_B_words(int L);

// S-bar = [0 -1; 1 0]
UnimodularMatrix s_bar();

}  // namespace fisph
