#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivy/biset.hpp"
#include "ivy/freegroup.hpp"

namespace ivy {

/// A generating set E with a vertex structure V.
///
/// `gens[i]` is the group value of the E-name `names[i]`; its inverse is the
/// implied element `names[i]^-1`. Vertex words use fg::Letter over E-indices.
struct TreeLikeGenSet {
  std::vector<std::string> names;
  std::vector<fg::Word> gens;
  std::vector<VertexWord> vertex_words;
};

/// Outcome of validate(). `axiom` names the first violated condition
/// ("distinct", "occurrence" or "tree"), `generator` the offending E-name.
struct Diagnostics {
  bool ok = true;
  std::string axiom;
  std::string generator;
  std::string message;

  explicit operator bool() const { return ok; }
};

/// Graph G(V): one vertex per vertex word, one undirected edge per pair
/// {g, g^-1}, joining the word containing g to the word containing g^-1.
struct AbstractRibbonTree {
  struct Edge {
    int from;  ///< vertex word containing g
    int to;    ///< vertex word containing g^-1
  };
  int vertex_count = 0;
  std::vector<Edge> edges;               ///< indexed by E-generator
  std::vector<VertexWord> rotations;     ///< cyclic order at each vertex
  bool connected = false;

  bool is_tree() const {
    return connected && static_cast<int>(edges.size()) + 1 == vertex_count;
  }
  int degree(int vertex) const { return static_cast<int>(rotations.at(vertex).size()); }
};

Diagnostics validate(const TreeLikeGenSet& t);

/// Requires the occurrence axiom (throws InputError otherwise).
AbstractRibbonTree build_tree(const TreeLikeGenSet& t);

/// Product of the letter values, freely reduced.
fg::Word evaluate(const VertexWord& v, std::span<const fg::Word> gens);

/// {id} together with every g and g^-1.
fg::WordSet generating_set(const TreeLikeGenSet& t);

/// Canonical form of generating_set(t) under simultaneous conjugation.
fg::WordSet canonical_key(const TreeLikeGenSet& t);

/// Number of vertex words with non-trivial peripheral product.
int marked_vertex_count(const TreeLikeGenSet& t);

/// Names a pushed-forward generating set: the positive representative of
/// each pair {w, w^-1} is the smaller word, and representatives are named
/// g1, g2, ... in word order. Vertex words are re-keyed accordingly.
TreeLikeGenSet name_pushforward(const fg::WordSet& pushed, std::span<const WordSequence> vertex_words);

/// Returns the signed E-letter whose value is `w`, if any.
std::optional<fg::Letter> find_generator(const TreeLikeGenSet& t, const fg::Word& w);

/// Formats an E-letter as NAME or NAME^-1.
std::string format_letter(const TreeLikeGenSet& t, fg::Letter l);

}  // namespace ivy
