#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ivy/freegroup.hpp"

namespace ivy {

/// One of the two basis elements of the biset of a degree-2 map.
class Sheet {
 public:
  constexpr Sheet() = default;
  constexpr explicit Sheet(int v) : value_(static_cast<std::uint8_t>(v)) {
    if (v != 0 && v != 1) throw InputError("sheet must be 0 or 1");
  }
  constexpr int value() const { return value_; }
  constexpr Sheet other() const { return Sheet(1 - value_); }
  friend constexpr bool operator==(Sheet, Sheet) = default;

 private:
  std::uint8_t value_ = 0;
};

inline constexpr Sheet kSheet0{0};
inline constexpr Sheet kSheet1{1};

/// Result of reading a word from a sheet: the section word and the exit sheet.
struct Transition {
  fg::Word word;
  Sheet sheet;
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Word over the letters of a named generating set E (an element of E*).
/// Unlike fg::Word it is never reduced: g.g^-1 is a legitimate vertex word.
using VertexWord = std::vector<fg::Letter>;

/// Wreath recursion over a free basis: sigma and iota on positive letters.
///
/// Entries for inverse letters are derived from the positive ones:
/// if (a, x) -> (w, a') then (a', x^-1) -> (w^-1, a).
class WreathRecursion {
 public:
  WreathRecursion() = default;
  /// `positive[g][s]` is the transition of generator g read from sheet s.
  /// Throws InputError if some generator does not permute the sheets.
  WreathRecursion(fg::Alphabet alphabet, std::vector<std::array<Transition, 2>> positive);

  const fg::Alphabet& alphabet() const { return alphabet_; }
  int rank() const { return alphabet_.size(); }

  const Transition& step(Sheet a, fg::Letter x) const {
    return table_[x.code()][static_cast<std::size_t>(a.value())];
  }
  const Transition& entry(int generator, Sheet a) const { return step(a, fg::Letter(generator, false)); }

  /// (sigma(a, w), iota(a, w)), reading w leftmost letter first.
  Transition apply(Sheet a, const fg::Word& w) const;

  friend bool operator==(const WreathRecursion& x, const WreathRecursion& y) {
    return x.alphabet_ == y.alphabet_ && x.table_ == y.table_;
  }

 private:
  fg::Alphabet alphabet_;
  // Indexed by letter code, then sheet.
  std::vector<std::array<Transition, 2>> table_;
};

/// Basis change with lambda(0) = id, lambda(1) = h:
/// sigma'(a, x) = lambda(a) sigma(a, x) lambda(iota(a, x))^-1, iota unchanged.
WreathRecursion basis_change(const WreathRecursion& rec, const fg::Word& h);

/// { sigma(a, g) : a in {0,1}, g in E }. Throws ConsistencyError if the
/// result is not symmetric with the identity.
fg::WordSet pushforward_gens(const WreathRecursion& rec, const fg::WordSet& gens);

struct StarResult {
  std::vector<fg::Word> letters;  ///< non-identity sections, in reading order
  Sheet sheet;
};

/// Extension of the recursion to E*: consumes `v` leftmost-first, dropping
/// identity sections. `eval[i]` is the value of the i-th E-generator.
StarResult sigma_iota_star(const WreathRecursion& rec, Sheet a, const VertexWord& v,
                           std::span<const fg::Word> eval);

/// A vertex word whose letters are group elements of the pushed-forward set.
using WordSequence = std::vector<fg::Word>;

/// Push-forward of a vertex structure. Vertex words over a critical value
/// (iota*(0, v) = 1) produce the single word sigma*(0,v).sigma*(1,v); all
/// others produce sigma*(0,v) and sigma*(1,v). Empty results and words of the
/// form g.g^-1 are dropped. Throws ConsistencyError if a surviving letter is
/// not in `pushed`.
std::vector<WordSequence> pushforward_vertex_structure(const WreathRecursion& rec,
                                                       std::span<const VertexWord> vertex_words,
                                                       std::span<const fg::Word> eval,
                                                       const fg::WordSet& pushed);

}  // namespace ivy
