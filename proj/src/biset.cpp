#include "ivy/biset.hpp"

#include <string>

namespace ivy {

WreathRecursion::WreathRecursion(fg::Alphabet alphabet,
                                 std::vector<std::array<Transition, 2>> positive)
    : alphabet_(std::move(alphabet)) {
  if (static_cast<int>(positive.size()) != alphabet_.size())
    throw InputError("recursion table must have one row per basis generator");
  table_.resize(positive.size() * 2);
  for (int g = 0; g < alphabet_.size(); ++g) {
    const auto& row = positive[static_cast<std::size_t>(g)];
    if (row[0].sheet == row[1].sheet)
      throw InputError("iota of generator '" + alphabet_.name(g) +
                       "' is not a permutation of the sheets");
    for (int s = 0; s < 2; ++s) {
      if (row[s].word.max_generator() >= alphabet_.size())
        throw InputError("recursion entry for '" + alphabet_.name(g) + "' uses an unknown generator");
      const fg::Letter x(g, false);
      table_[x.code()][s] = row[s];
      table_[x.inverse().code()][row[s].sheet.value()] = Transition{row[s].word.inverse(), Sheet(s)};
    }
  }
}

Transition WreathRecursion::apply(Sheet a, const fg::Word& w) const {
  Transition out{fg::Word{}, a};
  for (fg::Letter x : w.letters()) {
    if (x.generator() >= rank()) throw InputError("letter outside the recursion alphabet");
    const Transition& t = step(out.sheet, x);
    out.word *= t.word;
    out.sheet = t.sheet;
  }
  return out;
}

WreathRecursion basis_change(const WreathRecursion& rec, const fg::Word& h) {
  const std::array<fg::Word, 2> lambda{fg::Word{}, h};
  std::vector<std::array<Transition, 2>> positive(static_cast<std::size_t>(rec.rank()));
  for (int g = 0; g < rec.rank(); ++g) {
    for (int s = 0; s < 2; ++s) {
      const Transition& t = rec.entry(g, Sheet(s));
      positive[static_cast<std::size_t>(g)][static_cast<std::size_t>(s)] =
          Transition{lambda[s] * t.word * lambda[t.sheet.value()].inverse(), t.sheet};
    }
  }
  return WreathRecursion(rec.alphabet(), std::move(positive));
}

fg::WordSet pushforward_gens(const WreathRecursion& rec, const fg::WordSet& gens) {
  std::vector<fg::Word> out;
  out.reserve(gens.size() * 2);
  for (const auto& g : gens.words())
    for (Sheet a : {kSheet0, kSheet1}) out.push_back(rec.apply(a, g).word);
  fg::WordSet result(std::move(out));
  if (gens.is_symmetric_with_id() && !result.is_symmetric_with_id())
    throw ConsistencyError("push-forward of a symmetric generating set is not symmetric");
  return result;
}

namespace {

fg::Word evaluate_letter(fg::Letter l, std::span<const fg::Word> eval) {
  const auto i = static_cast<std::size_t>(l.generator());
  if (i >= eval.size()) throw InputError("vertex word letter has no value");
  return l.is_inverse() ? eval[i].inverse() : eval[i];
}

bool is_backtrack(const WordSequence& w) {
  return w.size() == 2 && w[0] == w[1].inverse();
}

}  // namespace

StarResult sigma_iota_star(const WreathRecursion& rec, Sheet a, const VertexWord& v,
                           std::span<const fg::Word> eval) {
  StarResult out{{}, a};
  for (fg::Letter l : v) {
    Transition t = rec.apply(out.sheet, evaluate_letter(l, eval));
    if (!t.word.is_identity()) out.letters.push_back(std::move(t.word));
    out.sheet = t.sheet;
  }
  return out;
}

std::vector<WordSequence> pushforward_vertex_structure(const WreathRecursion& rec,
                                                       std::span<const VertexWord> vertex_words,
                                                       std::span<const fg::Word> eval,
                                                       const fg::WordSet& pushed) {
  std::vector<WordSequence> candidates;
  for (const auto& v : vertex_words) {
    StarResult from0 = sigma_iota_star(rec, kSheet0, v, eval);
    StarResult from1 = sigma_iota_star(rec, kSheet1, v, eval);
    if (from0.sheet == kSheet1) {
      // Critical value: both halves belong to the single preimage vertex.
      WordSequence joined = std::move(from0.letters);
      joined.insert(joined.end(), from1.letters.begin(), from1.letters.end());
      candidates.push_back(std::move(joined));
    } else {
      candidates.push_back(std::move(from0.letters));
      candidates.push_back(std::move(from1.letters));
    }
  }

  std::vector<WordSequence> result;
  for (auto& w : candidates) {
    if (w.empty() || is_backtrack(w)) continue;
    for (const auto& letter : w)
      if (!pushed.contains(letter))
        throw ConsistencyError("pushed-forward vertex word uses an element outside the pushed-forward generating set");
    result.push_back(std::move(w));
  }
  return result;
}

}  // namespace ivy
