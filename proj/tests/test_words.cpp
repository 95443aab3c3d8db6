#include <doctest.h>

#include <map>
#include <set>

#include "fisph/modular.hpp"
#include "fisph/words.hpp"

using namespace fisph;

namespace {

WordElement word(std::initializer_list<Letter> l) { return WordElement{std::vector<Letter>(l)}; }

UnimodularMatrix normalized(UnimodularMatrix m) { return m.c < 0 || (m.c == 0 && m.d < 0) ? -m : m; }

}  // namespace

TEST_CASE("word_to_matrix examples") {
  CHECK(word_to_matrix(word({})) == UnimodularMatrix{1, 0, 0, 1});
  CHECK(word_to_matrix(word({{Gen::B, -1}})) == UnimodularMatrix{1, 0, 2, 1});
  CHECK(word_to_matrix(word({{Gen::B, 1}, {Gen::A, 1}})) == UnimodularMatrix{1, 2, -2, -3});
}

TEST_CASE("generators multiply as powers") {
  for (Gen g : {Gen::A, Gen::B})
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) CHECK(gen_power(g, a) * gen_power(g, b) == gen_power(g, a + b));
}

TEST_CASE("normalize merges and drops letters") {
  const WordElement w = normalize(word({{Gen::B, 2}, {Gen::B, -2}, {Gen::A, 1}, {Gen::A, 3}}));
  CHECK(w == word({{Gen::A, 4}}));
  CHECK(word_to_matrix(w) == gen_power(Gen::A, 4));
}

TEST_CASE("enumerate_bottom_rows examples") {
  const auto rows = enumerate_bottom_rows(RowKind::P, 2, 3);
  std::set<std::pair<long, long>> got;
  for (const BottomRow& r : rows) got.insert({r.c, r.d});
  CHECK(got == std::set<std::pair<long, long>>{{2, -3}, {2, -1}, {2, 1}, {2, 3}});
  const auto t = enumerate_bottom_rows(RowKind::Ptilde, 1, 0);
  REQUIRE(t.size() == 1);
  CHECK(t[0].c == 1);
  CHECK(t[0].d == 0);
  for (RowKind k : {RowKind::P, RowKind::Ptilde})
    for (const BottomRow& r : enumerate_bottom_rows(k, 30, 50)) CHECK(gcd64(r.c, r.d) == 1);
}

TEST_CASE("alpha_entry examples") {
  CHECK(alpha_entry({2, 1, RowKind::P}) == 1);
  CHECK(alpha_entry({1, 0, RowKind::Ptilde}) == 0);
  CHECK(alpha_entry({2, -1, RowKind::P}) == -1);
  CHECK_THROWS_AS(alpha_entry({2, 2, RowKind::P}), domain_error);
}

TEST_CASE("alpha_entry completes to a determinant-one matrix of the right class") {
  for (RowKind k : {RowKind::P, RowKind::Ptilde})
    for (const BottomRow& r : enumerate_bottom_rows(k, 60, 130)) {
      const std::int64_t a = alpha_entry(r);
      CHECK(floor_mod(a * r.d - 1, r.c) == 0);
      CHECK(std::llabs(a) <= r.c);
      CHECK(a == alpha_by_words(r));
    }
}

TEST_CASE("verify_membership examples") {
  CHECK_FALSE(verify_membership({1, 2, 0, 1}, WordSet::B));
  CHECK(verify_membership({1, 0, 2, 1}, WordSet::B));
  CHECK(verify_membership({0, -1, 1, 0}, WordSet::Btilde));
}

TEST_CASE("reduce_gamma2 inverts word_to_matrix up to sign") {
  for (const WordElement& w : enumerate_B_words(7)) {
    int sign = 0;
    const WordElement back = reduce_gamma2(word_to_matrix(w), &sign);
    CHECK(back == normalize(w));
  }
}

TEST_CASE("B words and normalized bottom rows are in bijection on a box") {
  const std::int64_t C = 10, D = 21;
  std::map<std::pair<long, long>, int> seen;
  for (const WordElement& w : enumerate_B_words(10)) {
    const UnimodularMatrix m = normalized(word_to_matrix(w));
    CHECK(verify_membership(m, WordSet::B));
    CHECK(std::llabs(m.a) <= std::llabs(m.c));
    ++seen[{m.c, m.d}];
  }
  for (const auto& [row, count] : seen) CHECK(count == 1);
  for (const BottomRow& r : enumerate_bottom_rows(RowKind::P, C, D)) CHECK(seen.count({r.c, r.d}) == 1);
}

TEST_CASE("|a| <= |c| on B words times S-bar") {
  for (const WordElement& w : enumerate_B_words(9)) {
    const UnimodularMatrix m = word_to_matrix(w) * s_bar();
    CHECK(std::llabs(m.a) <= std::llabs(m.c));
  }
}

TEST_CASE("matrix products detect overflow") {
  const UnimodularMatrix big{1, 0, std::int64_t(1) << 40, 1};
  const UnimodularMatrix up{1, std::int64_t(1) << 40, 0, 1};
  CHECK_THROWS_AS(big * up * big, overflow_error);
}
