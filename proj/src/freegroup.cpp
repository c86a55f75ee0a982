#include "ivy/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace ivy::fg {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_name(std::string_view s) {
  if (s.empty() || !is_name_start(s.front())) return false;
  return std::all_of(s.begin(), s.end(), is_name_char);
}

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < size(); ++i) {
    if (!valid_name(names_[i])) throw InputError("invalid generator name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], i).second)
      throw InputError("duplicate generator name '" + names_[i] + "'");
  }
}

int Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

int Alphabet::index(std::string_view name) const {
  int i = find(name);
  if (i < 0) throw InputError("unknown generator '" + std::string(name) + "'");
  return i;
}

Word Word::reduce(std::span<const Letter> letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!w.letters_.empty() && w.letters_.back() == l.inverse())
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

std::size_t Word::cyclic_length() const {
  std::size_t i = 0, j = letters_.size();
  while (j - i >= 2 && letters_[i] == letters_[j - 1].inverse()) {
    ++i;
    --j;
  }
  return j - i;
}

int Word::max_generator() const {
  int m = -1;
  for (Letter l : letters_) m = std::max(m, l.generator());
  return m;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t k = 0;
  while (k < rhs.letters_.size() && !letters_.empty() &&
         letters_.back() == rhs.letters_[k].inverse()) {
    letters_.pop_back();
    ++k;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(k),
                  rhs.letters_.end());
  return *this;
}

Word operator*(const Word& a, const Word& b) {
  Word r = a;
  r *= b;
  return r;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t seed = w.length();
  for (Letter l : w.letters()) hash_combine(seed, l.code());
  return seed;
}

Word conjugate(const Word& u, const Word& w) {
  if (w.is_identity()) return w;
  return u * w * u.inverse();
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  bool saw_one = false;
  int tokens = 0;
  while (in >> token) {
    ++tokens;
    if (token == "1") {
      saw_one = true;
      continue;
    }
    bool inverse = false;
    std::string_view name = token;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
      inverse = true;
      name.remove_suffix(3);
    }
    if (!valid_name(name)) throw InputError("malformed word token '" + token + "' in '" + std::string(text) + "'");
    letters.emplace_back(alphabet.index(name), inverse);
  }
  if (saw_one && tokens > 1)
    throw InputError("identity token '1' must stand alone in '" + std::string(text) + "'");
  if (tokens == 0) throw InputError("empty word text; use '1' for the identity");
  return Word::reduce(letters);
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.is_identity()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += alphabet.name(l.generator());
    if (l.is_inverse()) out += "^-1";
  }
  return out;
}

WordSet::WordSet(std::vector<Word> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool WordSet::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

std::size_t WordSet::total_length() const {
  std::size_t n = 0;
  for (const auto& w : words_) n += w.length();
  return n;
}

bool WordSet::is_symmetric_with_id() const {
  if (!contains(Word{})) return false;
  return std::all_of(words_.begin(), words_.end(),
                     [this](const Word& w) { return contains(w.inverse()); });
}

std::strong_ordering operator<=>(const WordSet& a, const WordSet& b) {
  return std::lexicographical_compare_three_way(a.words_.begin(), a.words_.end(),
                                                b.words_.begin(), b.words_.end());
}

std::size_t WordSetHash::operator()(const WordSet& s) const noexcept {
  std::size_t seed = s.size();
  WordHash h;
  for (const auto& w : s.words()) hash_combine(seed, h(w));
  return seed;
}

WordSet conjugate_set(const Word& u, const WordSet& s) {
  std::vector<Word> out;
  out.reserve(s.size());
  for (const auto& w : s.words()) out.push_back(conjugate(u, w));
  return WordSet(std::move(out));
}

// Total length of u S u^-1 is a convex function of u on the Cayley tree, so
// single-letter descent reaches the global minimum and the minimizing
// conjugates form a connected plateau under single-letter moves.
CanonicalForm canonical_form(const WordSet& s) {
  int max_gen = -1;
  for (const auto& w : s.words()) max_gen = std::max(max_gen, w.max_generator());
  if (max_gen < 0) return {s, Word{}};

  std::vector<Word> moves;
  for (int g = 0; g <= max_gen; ++g) {
    moves.push_back(Word::letter(Letter(g, false)));
    moves.push_back(Word::letter(Letter(g, true)));
  }

  WordSet current = s;
  Word witness;
  std::size_t length = current.total_length();
  for (;;) {
    std::size_t best_length = length;
    const Word* best_move = nullptr;
    WordSet best_set;
    for (const auto& x : moves) {
      WordSet next = conjugate_set(x, current);
      std::size_t l = next.total_length();
      if (l < best_length) {
        best_length = l;
        best_move = &x;
        best_set = std::move(next);
      }
    }
    if (best_move == nullptr) break;
    current = std::move(best_set);
    witness = *best_move * witness;
    length = best_length;
  }

  CanonicalForm best{current, witness};
  std::unordered_set<WordSet, WordSetHash> seen{current};
  std::deque<CanonicalForm> queue{best};
  while (!queue.empty()) {
    CanonicalForm state = std::move(queue.front());
    queue.pop_front();
    for (const auto& x : moves) {
      WordSet next = conjugate_set(x, state.canonical);
      if (next.total_length() != length || !seen.insert(next).second) continue;
      CanonicalForm reached{std::move(next), x * state.witness};
      if (reached.canonical < best.canonical) best = reached;
      queue.push_back(std::move(reached));
    }
  }
  return best;
}

}  // namespace ivy::fg
