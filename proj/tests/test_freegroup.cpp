#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "canonical_oracle.hpp"
#include "ivy/freegroup.hpp"

using namespace ivy;
using namespace ivy::fg;

namespace {

const Alphabet abc({"a", "b", "c", "d"});

Word W(const char* text) { return parse_word(text, abc); }

WordSet S(std::initializer_list<const char*> words) {
  std::vector<Word> v;
  for (const char* w : words) v.push_back(W(w));
  return WordSet(std::move(v));
}

Letter L(int g, int sign) { return Letter(g, sign < 0); }

Word random_word(std::mt19937& rng, int generators, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> code(0, 2 * generators - 1);
  std::vector<Letter> raw;
  const std::size_t n = len(rng);
  while (raw.size() < n) {
    Letter l = Letter::from_code(static_cast<std::uint32_t>(code(rng)));
    if (!raw.empty() && raw.back() == l.inverse()) continue;
    raw.push_back(l);
  }
  return Word::reduce(raw);
}

}  // namespace

TEST_CASE("reduce") {
  CHECK(Word::reduce(std::vector{L(0, 1), L(0, -1)}).is_identity());
  CHECK(Word::reduce(std::vector{L(0, 1), L(1, 1), L(1, -1), L(0, 1)}) == W("a a"));
  CHECK(Word::reduce(std::vector{L(1, 1), L(0, -1), L(0, 1), L(1, 1), L(2, 1)}) == W("b b c"));
  CHECK(Word::reduce(std::vector{L(0, 1), L(1, 1), L(1, -1), L(0, -1), L(2, -1)}) == W("c^-1"));

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> code(0, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Letter> raw(static_cast<std::size_t>(trial % 17));
    for (auto& l : raw) l = Letter::from_code(static_cast<std::uint32_t>(code(rng)));
    const Word w = Word::reduce(raw);
    CHECK(Word::reduce(w.letters()) == w);
    CHECK((raw.size() - w.length()) % 2 == 0);
    for (std::size_t i = 0; i + 1 < w.length(); ++i) CHECK(w[i] != w[i + 1].inverse());
  }
}

TEST_CASE("letter order and packing") {
  CHECK(L(0, 1) < L(0, -1));
  CHECK(L(0, -1) < L(1, 1));
  CHECK(L(3, -1).inverse() == L(3, 1));
  CHECK(L(2, -1).generator() == 2);
  CHECK(L(2, -1).sign() == -1);
}

TEST_CASE("shortlex word order") {
  CHECK(Word{} < W("d"));
  CHECK(W("d") < W("a a"));
  CHECK(W("a b") < W("a b^-1"));
  CHECK(W("a^-1 a^-1") > W("a b"));
}

TEST_CASE("parse and format") {
  CHECK(W("1").is_identity());
  CHECK(W("a b^-1  c").length() == 3);
  CHECK(format_word(W("a b^-1 c"), abc) == "a b^-1 c");
  CHECK(format_word(Word{}, abc) == "1");
  CHECK(W("a a^-1 b") == W("b"));
  CHECK_THROWS_AS(W("e"), InputError);
  CHECK_THROWS_AS(W(""), InputError);
  CHECK_THROWS_AS(W("1 a"), InputError);
  CHECK_THROWS_AS(W("a^-2"), InputError);
  CHECK_THROWS_AS(W("a^"), InputError);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), InputError);
  CHECK_THROWS_AS(Alphabet({"9x"}), InputError);
  CHECK(abc.find("zz") == -1);
  CHECK_THROWS_AS(abc.index("zz"), InputError);
}

TEST_CASE("conjugate") {
  CHECK(conjugate(W("a"), W("b")) == W("a b a^-1"));
  CHECK(conjugate(W("a"), W("a")) == W("a"));
  CHECK(conjugate(W("a b"), W("b^-1")) == W("a b^-1 a^-1"));
  CHECK(conjugate(Word{}, W("c d")) == W("c d"));
  CHECK(conjugate(W("c d"), Word{}).is_identity());

  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Word u = random_word(rng, 3, 8), w = random_word(rng, 3, 8);
    CHECK(conjugate(u, conjugate(u.inverse(), w)) == w);
    CHECK(conjugate(u, w).cyclic_length() == w.cyclic_length());
  }
}

TEST_CASE("word set basics") {
  const WordSet s = S({"b", "a", "1", "a", "a^-1"});
  CHECK(s.size() == 4);
  CHECK(s.words().front().is_identity());
  CHECK(s.contains(W("a^-1")));
  CHECK(!s.contains(W("b^-1")));
  CHECK(!s.is_symmetric_with_id());
  CHECK(S({"1", "a", "a^-1"}).is_symmetric_with_id());
  CHECK(!S({"a", "a^-1"}).is_symmetric_with_id());
  CHECK(s.total_length() == 3);
}

TEST_CASE("canonical_form examples") {
  {
    auto [c, u] = canonical_form(S({"1", "a", "a^-1"}));
    CHECK(c == S({"1", "a", "a^-1"}));
    CHECK(u.is_identity());
  }
  {
    auto [c, u] = canonical_form(S({"1", "a b a^-1", "a b^-1 a^-1"}));
    CHECK(c == S({"1", "b", "b^-1"}));
    CHECK(u == W("a^-1"));
  }
  {
    auto [c, u] = canonical_form(S({"a b", "b a"}));
    CHECK(c == S({"a b", "b a"}));
    CHECK(u.is_identity());
  }
  {
    auto [c, u] = canonical_form(WordSet{});
    CHECK(c.size() == 0);
    CHECK(u.is_identity());
  }
}

TEST_CASE("canonical_form conjugation invariance, 200 random trials") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> count(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> words;
    std::size_t total = 0;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      Word w = random_word(rng, 3, 5);
      if (total + w.length() > 12) break;
      total += w.length();
      words.push_back(std::move(w));
    }
    if (trial % 2) words.push_back(Word{});
    const WordSet s(words);
    const Word u = random_word(rng, 3, 6);
    const CanonicalForm a = canonical_form(s);
    const CanonicalForm b = canonical_form(conjugate_set(u, s));
    CHECK(a.canonical == b.canonical);
    CHECK(conjugate_set(a.witness, s) == a.canonical);
    CHECK(conjugate_set(b.witness, conjugate_set(u, s)) == b.canonical);
  }
}

TEST_CASE("canonical_form agrees with exhaustive minimization, 2 generators, total length <= 8") {
  const ivy::testing::oracle::Sweep s = ivy::testing::oracle::sweep(8);
  MESSAGE("oracle compared " << s.checked << " word sets");
  CHECK(s.checked == 167582);
  CHECK(s.mismatches == 0);
}
