#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "ivy/biset.hpp"
#include "ivy/freegroup.hpp"
#include "ivy/treestruct.hpp"

namespace ivy {

/// A combinatorial ivy object: a tree-like generating set together with the
/// recursion expressed in the basis attached to it.
struct IvyNode {
  TreeLikeGenSet gens;
  WreathRecursion recursion;
  fg::WordSet key;
  int discovery_index = -1;
};

/// Validates the pieces and computes the canonical key.
IvyNode make_node(TreeLikeGenSet gens, WreathRecursion recursion);

struct IvyGraph {
  std::vector<IvyNode> nodes;                 ///< in discovery order
  std::set<std::pair<int, int>> edges;        ///< (source index, target index)
};

struct ExploreConfig {
  std::size_t max_nodes = 100000;
  std::size_t max_word_length = 64;
  std::size_t max_cycle_length = 8;
  unsigned threads = 1;  ///< 0 selects the hardware concurrency
};

struct ExploreReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::vector<int> self_loops;              ///< node indices with a self-loop
  std::vector<fg::WordSet> self_loop_keys;
  std::vector<std::vector<int>> cycles;     ///< simple cycles, each starting at its least index
  std::vector<std::vector<int>> periods;    ///< per node, sorted cycle lengths through it
  bool closure_complete = true;
  std::size_t max_word_length_seen = 0;
};

/// All E-letters g with iota(0, g) = 1. Throws InputError when there are none.
std::vector<fg::Letter> base_elements(const IvyNode& n);

/// One step of the ivy iteration along the base element `g`.
/// Throws InputError if g is not a base element, ConsistencyError if the
/// result is not tree-like.
IvyNode pullback_step(const IvyNode& n, fg::Letter g);

/// Breadth-first closure of `start` under pullback steps, followed by analyze().
std::pair<IvyGraph, ExploreReport> explore(const IvyNode& start, const ExploreConfig& cfg);

/// Self-loops, simple cycles up to cfg.max_cycle_length and node periods.
/// closure_complete is left true; explore() overrides it.
ExploreReport analyze(const IvyGraph& g, const ExploreConfig& cfg);

/// Longest generator word of a node.
std::size_t max_word_length(const IvyNode& n);

}  // namespace ivy
