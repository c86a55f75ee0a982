#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ivy/biset.hpp"
#include "ivy/freegroup.hpp"
#include "ivy/treestruct.hpp"

namespace ivy::compiler {

/// An edge with an orientation, packed like a letter: generator() is the
/// edge index, is_inverse() means traversed from `to` to `from`.
using OrientedEdge = fg::Letter;

struct TreeVertex {
  std::string name;
  bool marked = false;
  bool critical_point = false;
  int critical_value = 0;  ///< 0 for none, else 1 or 2
};

struct TreeEdge {
  std::string name;
  std::string generator;  ///< name of the edge generator, e.g. edge "A" -> "a"
  int from = -1;
  int to = -1;
};

/// An embedded tree: for every vertex the outgoing oriented edges in
/// counterclockwise order.
struct RibbonTree {
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
  std::vector<std::vector<OrientedEdge>> ribbon;

  int origin(OrientedEdge e) const;
  int terminus(OrientedEdge e) const;
  std::string edge_name(OrientedEdge e) const;
  int degree(int v) const { return static_cast<int>(ribbon.at(static_cast<std::size_t>(v)).size()); }
  /// Position of `e` in the ribbon at its origin.
  int position(OrientedEdge e) const;
};

/// A spanning tree T with the dynamics of a tree pair (T*, T).
///
/// When `source` is empty the pair is invariant and T-bar* is T itself.
/// Otherwise `source` is T-bar* and `source_generators[e]` expresses the
/// generator of source edge e as a word over the generators of T.
struct RibbonTreeMap {
  RibbonTree target;
  std::optional<RibbonTree> source;
  std::vector<fg::Word> source_generators;

  std::vector<std::optional<int>> pseudoaccess;                     ///< per target vertex
  std::vector<std::optional<std::pair<int, int>>> critical_splits;  ///< per source vertex
  std::vector<std::optional<int>> labels;                           ///< per source edge
  int base_edge = -1;                                               ///< target edge
  std::vector<int> vertex_map;                                      ///< source vertex -> target vertex
  std::vector<std::vector<OrientedEdge>> edge_map;                  ///< by source oriented-edge code

  const RibbonTree& domain() const { return source ? *source : target; }
  /// Alphabet of edge generators of T.
  fg::Alphabet target_alphabet() const;
  /// Generator of a source oriented edge as a word over target_alphabet().
  fg::Word source_generator(OrientedEdge e) const;
};

/// Checks the structural invariants; throws InputError naming the problem.
void validate(const RibbonTreeMap& m);

/// Clockwise walk around the tree starting with the first ribbon entry of
/// vertex 0; covers every oriented edge exactly once.
std::vector<OrientedEdge> boundary_circuit(const RibbonTree& t);

struct SignatureTable {
  std::vector<OrientedEdge> s0;  ///< from v1 to v2
  std::vector<OrientedEdge> s1;  ///< from v2 to v1
  /// By oriented-edge code: {segment of e, segment of e^-1}.
  std::vector<std::array<int, 2>> signature;

  std::array<int, 2> of(OrientedEdge e) const { return signature.at(e.code()); }
};

/// Gap index of the post-critical pseudoaccess at a target vertex.
int access_gap(const RibbonTreeMap& m, int vertex);

SignatureTable signatures(const RibbonTreeMap& m);

/// Labels of the edges of T-bar*, propagated from the in-tree pullback of
/// the base edge (label 0) or validated when supplied.
std::vector<int> propagate_labels(const RibbonTreeMap& m);

/// Automaton over E_T: entry(e, eps) for every oriented edge e of T.
struct EdgeTable {
  /// By oriented-edge code, then sheet; words over target_alphabet().
  std::vector<std::array<Transition, 2>> entries;
  /// Vertex words of T over the edge generators.
  std::vector<VertexWord> vertex_words;

  const Transition& entry(OrientedEdge e, Sheet s) const {
    return entries.at(e.code())[static_cast<std::size_t>(s.value())];
  }
};

/// Vertex word of a target vertex: outgoing generators in clockwise order,
/// starting right after the anchoring gap.
VertexWord vertex_word(const RibbonTreeMap& m, int vertex);

EdgeTable emit_table(const RibbonTreeMap& m, const SignatureTable& sig, const std::vector<int>& labels);

/// Result of rewriting the automaton over a free basis.
struct FreeBasisResult {
  WreathRecursion recursion;
  TreeLikeGenSet gens;                  ///< names of E_T, values over the basis
  std::vector<std::string> eliminated;  ///< generator names removed, in order
};

FreeBasisResult reduce_to_free_basis(const RibbonTreeMap& m, const EdgeTable& table);

struct Compiled {
  std::vector<OrientedEdge> circuit;
  SignatureTable signatures;
  std::vector<int> labels;
  EdgeTable table;
  FreeBasisResult free;
};

/// Full pipeline: validate, circuit, signatures, labels, table, free basis.
Compiled compile(const RibbonTreeMap& m);

}  // namespace ivy::compiler
