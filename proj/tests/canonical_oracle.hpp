#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ivy/freegroup.hpp"

// Exhaustive oracle. Words are strings of letter codes (2*gen + inverse).
namespace ivy::testing::oracle {

using Str = std::string;

inline char inv(char c) { return static_cast<char>(c ^ 1); }

inline Str conj(char x, const Str& w) {
  Str out;
  out.reserve(w.size() + 2);
  if (!w.empty() && w.front() == inv(x)) {
    out.assign(w.begin() + 1, w.end());
  } else {
    out.push_back(x);
    out += w;
  }
  if (!out.empty() && out.back() == x) out.pop_back();
  else out.push_back(inv(x));
  return out;
}

inline bool shortlex_less(const Str& a, const Str& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; }

struct Best {
  std::size_t total = SIZE_MAX;
  std::vector<Str> set;
};

inline void consider(const std::vector<Str>& cur, std::size_t total, Best& best) {
  if (total > best.total) return;
  std::vector<Str> sorted = cur;
  std::sort(sorted.begin(), sorted.end(), shortlex_less);
  if (total < best.total ||
      std::lexicographical_compare(sorted.begin(), sorted.end(), best.set.begin(), best.set.end(), shortlex_less)) {
    best.total = total;
    best.set = std::move(sorted);
  }
}

// Every conjugator u with |u| <= depth_left more letters, built by prepending.
// A single-letter conjugation moves each word length by at most 2, so the
// subtree is skipped only when it cannot reach best.total.
inline void search(const std::vector<Str>& cur, std::size_t total, char first, std::size_t depth_left, Best& best) {
  consider(cur, total, best);
  if (depth_left == 0) return;
  const std::size_t reach = 2 * cur.size() * depth_left;
  if (total > best.total + reach) return;
  for (char x = 0; x < 4; ++x) {
    if (first >= 0 && x == inv(first)) continue;
    std::vector<Str> next;
    next.reserve(cur.size());
    std::size_t t = 0;
    for (const auto& w : cur) {
      next.push_back(conj(x, w));
      t += next.back().size();
    }
    search(next, t, x, depth_left - 1, best);
  }
}

inline std::vector<Str> reduced_words(std::size_t len) {
  std::vector<Str> out{Str{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Str> next;
    for (const auto& w : out)
      for (char x = 0; x < 4; ++x)
        if (w.empty() || w.back() != inv(x)) next.push_back(w + x);
    out = std::move(next);
  }
  return out;
}

struct Sweep {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
};

// Every set of distinct non-identity words over two generators with total
// length <= max_total (every other one with the identity added), compared
// against canonical_form: same set, same total, sound witness.
inline Sweep sweep(std::size_t max_total) {
  using namespace ivy::fg;
  std::vector<Str> pool;
  for (std::size_t len = 1; len <= max_total; ++len)
    for (auto& w : reduced_words(len)) pool.push_back(std::move(w));

  auto to_word = [](const Str& s) {
    std::vector<Letter> v;
    for (char c : s) v.push_back(Letter::from_code(static_cast<std::uint32_t>(c)));
    return Word::reduce(v);
  };

  Sweep out;
  std::vector<Str> chosen;
  auto recurse = [&](auto&& self, std::size_t start, std::size_t total) -> void {
    if (!chosen.empty()) {
      Best best;
      search(chosen, total, -1, total, best);
      const bool with_id = out.checked % 2;
      std::vector<Word> words, expect;
      for (const auto& s : chosen) words.push_back(to_word(s));
      for (const auto& s : best.set) expect.push_back(to_word(s));
      if (with_id) {
        words.push_back(Word{});
        expect.push_back(Word{});
      }
      const CanonicalForm cf = canonical_form(WordSet(words));
      const bool ok = cf.canonical == WordSet(expect) && cf.canonical.total_length() == best.total &&
                      conjugate_set(cf.witness, WordSet(words)) == cf.canonical;
      if (!ok) ++out.mismatches;
      ++out.checked;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (total + pool[i].size() > max_total) break;
      chosen.push_back(pool[i]);
      self(self, i + 1, total + pool[i].size());
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

}  // namespace ivy::testing::oracle
