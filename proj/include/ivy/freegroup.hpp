#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ivy {

/// Malformed user input (bad word syntax, unknown names, schema violations).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated internal invariant; signals corrupted or inconsistent data.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace fg {

/// A signed generator, packed as 2*index + (inverse ? 1 : 0).
///
/// The packing makes the integer order coincide with the letter order
/// (generator index first, then +1 before -1) and turns inversion into a
/// single bit flip.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, bool inverse)
      : code_(static_cast<std::uint32_t>(generator) * 2u + (inverse ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr int generator() const { return static_cast<int>(code_ >> 1); }
  constexpr bool is_inverse() const { return (code_ & 1u) != 0; }
  constexpr int sign() const { return is_inverse() ? -1 : 1; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint32_t code_ = 0;
};

/// Ordered list of generator names. Declaration order is the generator order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int generator) const { return names_.at(generator); }
  const std::vector<std::string>& names() const { return names_; }

  /// Returns -1 when the name is not declared.
  int find(std::string_view name) const;
  /// Throws InputError when the name is not declared.
  int index(std::string_view name) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

/// A freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;

  /// Freely reduces the given letter sequence.
  static Word reduce(std::span<const Letter> letters);
  static Word letter(Letter l) { return reduce(std::span<const Letter>(&l, 1)); }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  /// Length of the cyclic reduction.
  std::size_t cyclic_length() const;
  /// Largest generator index used, or -1 for the identity.
  int max_generator() const;

  /// Shortlex: length first, then lexicographic on letters.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;

  friend Word operator*(const Word& a, const Word& b);
  Word& operator*=(const Word& rhs);

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Returns reduce(u w u^-1).
Word conjugate(const Word& u, const Word& w);

/// Parses whitespace-separated tokens NAME or NAME^-1; `1` is the identity.
Word parse_word(std::string_view text, const Alphabet& alphabet);
std::string format_word(const Word& w, const Alphabet& alphabet);

/// A finite set of distinct words, kept sorted in word order.
class WordSet {
 public:
  WordSet() = default;
  explicit WordSet(std::vector<Word> words);

  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool contains(const Word& w) const;
  std::size_t total_length() const;

  /// Contains the identity and is closed under inversion.
  bool is_symmetric_with_id() const;

  friend std::strong_ordering operator<=>(const WordSet& a, const WordSet& b);
  friend bool operator==(const WordSet& a, const WordSet& b) = default;

 private:
  std::vector<Word> words_;
};

struct WordSetHash {
  std::size_t operator()(const WordSet& s) const noexcept;
};

/// Conjugates every element of `s` by `u`.
WordSet conjugate_set(const Word& u, const WordSet& s);

struct CanonicalForm {
  WordSet canonical;
  Word witness;  ///< canonical == conjugate_set(witness, input)
};

/// Canonical representative of the simultaneous-conjugacy class of `s`:
/// the least set (in WordSet order) among conjugates of minimum total length.
CanonicalForm canonical_form(const WordSet& s);

}  // namespace fg
}  // namespace ivy
