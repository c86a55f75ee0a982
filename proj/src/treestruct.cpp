#include "ivy/treestruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ivy {

namespace {

Diagnostics fail(std::string axiom, std::string generator, std::string message) {
  return Diagnostics{false, std::move(axiom), std::move(generator), std::move(message)};
}

// Position (vertex word index) of every signed E-letter; -1 when absent.
struct Occurrences {
  std::vector<int> where;      // indexed by letter code
  std::vector<int> count;      // indexed by letter code
};

Occurrences count_occurrences(const TreeLikeGenSet& t) {
  Occurrences occ;
  occ.where.assign(t.gens.size() * 2, -1);
  occ.count.assign(t.gens.size() * 2, 0);
  for (std::size_t v = 0; v < t.vertex_words.size(); ++v) {
    for (fg::Letter l : t.vertex_words[v]) {
      if (l.code() >= occ.where.size()) continue;
      occ.where[l.code()] = static_cast<int>(v);
      ++occ.count[l.code()];
    }
  }
  return occ;
}

}  // namespace

std::string format_letter(const TreeLikeGenSet& t, fg::Letter l) {
  const auto i = static_cast<std::size_t>(l.generator());
  std::string name = i < t.names.size() ? t.names[i] : "#" + std::to_string(i);
  return l.is_inverse() ? name + "^-1" : name;
}

Diagnostics validate(const TreeLikeGenSet& t) {
  if (t.names.size() != t.gens.size())
    return fail("distinct", "", "name list and generator list differ in length");

  std::map<fg::Word, std::size_t> seen;
  for (std::size_t i = 0; i < t.gens.size(); ++i) {
    if (t.gens[i].is_identity())
      return fail("distinct", t.names[i], "generator '" + t.names[i] + "' is the identity");
    for (const auto& w : {t.gens[i], t.gens[i].inverse()}) {
      auto [it, inserted] = seen.emplace(w, i);
      if (!inserted)
        return fail("distinct", t.names[i],
                    "generator '" + t.names[i] + "' coincides with '" + t.names[it->second] +
                        "' or its inverse");
    }
  }

  for (std::size_t v = 0; v < t.vertex_words.size(); ++v)
    for (fg::Letter l : t.vertex_words[v])
      if (static_cast<std::size_t>(l.generator()) >= t.gens.size())
        return fail("occurrence", "", "vertex word " + std::to_string(v) + " uses an undeclared generator");

  const Occurrences occ = count_occurrences(t);
  for (std::size_t g = 0; g < t.gens.size(); ++g) {
    for (bool inv : {false, true}) {
      const fg::Letter l(static_cast<int>(g), inv);
      const int c = occ.count[l.code()];
      if (c != 1)
        return fail("occurrence", format_letter(t, l),
                    "'" + format_letter(t, l) + "' occurs " + std::to_string(c) +
                        " times in the vertex structure (expected exactly once)");
    }
  }

  const AbstractRibbonTree tree = build_tree(t);
  if (!tree.is_tree())
    return fail("tree", "",
                "graph of the vertex structure is not a tree (" + std::to_string(tree.vertex_count) +
                    " vertices, " + std::to_string(tree.edges.size()) + " edges, " +
                    (tree.connected ? "connected" : "disconnected") + ")");
  return Diagnostics{};
}

AbstractRibbonTree build_tree(const TreeLikeGenSet& t) {
  const Occurrences occ = count_occurrences(t);
  AbstractRibbonTree tree;
  tree.vertex_count = static_cast<int>(t.vertex_words.size());
  tree.rotations = t.vertex_words;
  for (std::size_t g = 0; g < t.gens.size(); ++g) {
    const fg::Letter pos(static_cast<int>(g), false);
    if (occ.count[pos.code()] != 1 || occ.count[pos.inverse().code()] != 1)
      throw InputError("vertex structure violates the occurrence axiom at '" + format_letter(t, pos) + "'");
    tree.edges.push_back({occ.where[pos.code()], occ.where[pos.inverse().code()]});
  }

  // Connectivity by union-find.
  std::vector<int> parent(static_cast<std::size_t>(tree.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = tree.vertex_count;
  for (const auto& e : tree.edges) {
    int a = find(e.from), b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  tree.connected = components <= 1;
  return tree;
}

fg::Word evaluate(const VertexWord& v, std::span<const fg::Word> gens) {
  fg::Word out;
  for (fg::Letter l : v) {
    const auto i = static_cast<std::size_t>(l.generator());
    if (i >= gens.size()) throw InputError("vertex word letter has no value");
    out *= l.is_inverse() ? gens[i].inverse() : gens[i];
  }
  return out;
}

fg::WordSet generating_set(const TreeLikeGenSet& t) {
  std::vector<fg::Word> words{fg::Word{}};
  for (const auto& g : t.gens) {
    words.push_back(g);
    words.push_back(g.inverse());
  }
  return fg::WordSet(std::move(words));
}

fg::WordSet canonical_key(const TreeLikeGenSet& t) {
  return fg::canonical_form(generating_set(t)).canonical;
}

int marked_vertex_count(const TreeLikeGenSet& t) {
  return static_cast<int>(std::count_if(t.vertex_words.begin(), t.vertex_words.end(),
                                        [&](const VertexWord& v) { return !evaluate(v, t.gens).is_identity(); }));
}

std::optional<fg::Letter> find_generator(const TreeLikeGenSet& t, const fg::Word& w) {
  for (std::size_t i = 0; i < t.gens.size(); ++i) {
    if (t.gens[i] == w) return fg::Letter(static_cast<int>(i), false);
    if (t.gens[i] == w.inverse()) return fg::Letter(static_cast<int>(i), true);
  }
  return std::nullopt;
}

TreeLikeGenSet name_pushforward(const fg::WordSet& pushed, std::span<const WordSequence> vertex_words) {
  TreeLikeGenSet t;
  std::map<fg::Word, fg::Letter> lookup;
  for (const auto& w : pushed.words()) {
    if (w.is_identity()) continue;
    const fg::Word inv = w.inverse();
    if (inv < w) continue;
    const fg::Letter l(static_cast<int>(t.gens.size()), false);
    t.gens.push_back(w);
    t.names.push_back("g" + std::to_string(t.gens.size()));
    lookup.emplace(w, l);
    lookup.emplace(inv, l.inverse());
  }
  for (const auto& seq : vertex_words) {
    VertexWord v;
    v.reserve(seq.size());
    for (const auto& w : seq) {
      auto it = lookup.find(w);
      if (it == lookup.end())
        throw ConsistencyError("vertex word letter is not an element of the generating set");
      v.push_back(it->second);
    }
    t.vertex_words.push_back(std::move(v));
  }
  return t;
}

}  // namespace ivy
