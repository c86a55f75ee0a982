#include "ivy/compiler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace ivy::compiler {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

int mod(int x, int n) { return ((x % n) + n) % n; }

// Is `pos` inside the arc [i, j) of a cyclic sequence of length n?
bool in_arc(int pos, int i, int j, int n) {
  const int len = mod(j - i, n);
  return mod(pos - i, n) < len;
}

void check_tree(const RibbonTree& t, const std::string& what) {
  const int nv = static_cast<int>(t.vertices.size());
  if (nv == 0) throw InputError(what + " tree has no vertices");
  if (static_cast<int>(t.edges.size()) != nv - 1)
    throw InputError(what + " tree has " + std::to_string(t.edges.size()) + " edges for " + std::to_string(nv) +
                     " vertices");
  if (t.ribbon.size() != t.vertices.size()) throw InputError(what + " ribbon does not cover every vertex");

  std::vector<int> parent(idx(nv));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[idx(x)] != x) x = parent[idx(x)] = parent[idx(parent[idx(x)])];
    return x;
  };
  for (const auto& e : t.edges) {
    if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv)
      throw InputError(what + " edge '" + e.name + "' has an unknown endpoint");
    if (e.from == e.to) throw InputError(what + " edge '" + e.name + "' is a loop");
    const int a = find(e.from), b = find(e.to);
    if (a == b) throw InputError(what + " graph has a cycle through edge '" + e.name + "'");
    parent[idx(a)] = b;
  }

  std::vector<int> seen(t.edges.size() * 2, 0);
  for (int v = 0; v < nv; ++v) {
    for (OrientedEdge e : t.ribbon[idx(v)]) {
      if (idx(e.generator()) >= t.edges.size()) throw InputError(what + " ribbon names an unknown edge");
      if (t.origin(e) != v)
        throw InputError(what + " ribbon at '" + t.vertices[idx(v)].name + "' lists '" + t.edge_name(e) +
                         "', which does not start there");
      if (seen[e.code()]++) throw InputError(what + " ribbon lists '" + t.edge_name(e) + "' twice");
    }
  }
  for (std::size_t c = 0; c < seen.size(); ++c)
    if (!seen[c])
      throw InputError(what + " ribbon misses '" + t.edge_name(OrientedEdge::from_code(static_cast<std::uint32_t>(c))) +
                       "'");

  for (int v = 0; v < nv; ++v)
    if (t.degree(v) == 1 && !t.vertices[idx(v)].marked)
      throw InputError(what + " endpoint '" + t.vertices[idx(v)].name + "' is not marked");
}

int critical_value_vertex(const RibbonTree& t, int which) {
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    if (t.vertices[v].critical_value == which) return static_cast<int>(v);
  throw InputError("no vertex carries critical value " + std::to_string(which));
}

// Vertex sequence of the unique path between two vertices, as oriented edges.
std::vector<OrientedEdge> tree_path(const RibbonTree& t, int from, int to) {
  std::vector<OrientedEdge> via(t.vertices.size());
  std::vector<char> reached(t.vertices.size(), 0);
  std::deque<int> queue{from};
  reached[idx(from)] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (OrientedEdge e : t.ribbon[idx(v)]) {
      const int w = t.terminus(e);
      if (reached[idx(w)]) continue;
      reached[idx(w)] = 1;
      via[idx(w)] = e;
      queue.push_back(w);
    }
  }
  std::vector<OrientedEdge> path;
  for (int v = to; v != from; v = t.origin(via[idx(v)])) path.push_back(via[idx(v)]);
  std::reverse(path.begin(), path.end());
  return path;
}

const std::vector<OrientedEdge>& image(const RibbonTreeMap& m, OrientedEdge f) { return m.edge_map.at(f.code()); }

}  // namespace

int RibbonTree::origin(OrientedEdge e) const {
  const TreeEdge& te = edges.at(idx(e.generator()));
  return e.is_inverse() ? te.to : te.from;
}

int RibbonTree::terminus(OrientedEdge e) const { return origin(e.inverse()); }

std::string RibbonTree::edge_name(OrientedEdge e) const {
  const std::string& n = edges.at(idx(e.generator())).name;
  return e.is_inverse() ? n + "^-1" : n;
}

int RibbonTree::position(OrientedEdge e) const {
  const auto& r = ribbon.at(idx(origin(e)));
  auto it = std::find(r.begin(), r.end(), e);
  if (it == r.end()) throw InputError("edge '" + edge_name(e) + "' missing from its ribbon");
  return static_cast<int>(it - r.begin());
}

fg::Alphabet RibbonTreeMap::target_alphabet() const {
  std::vector<std::string> names;
  for (const auto& e : target.edges) names.push_back(e.generator);
  return fg::Alphabet(std::move(names));
}

fg::Word RibbonTreeMap::source_generator(OrientedEdge e) const {
  if (!source) return fg::Word::letter(e);
  const fg::Word& w = source_generators.at(idx(e.generator()));
  return e.is_inverse() ? w.inverse() : w;
}

void validate(const RibbonTreeMap& m) {
  check_tree(m.target, "target");
  if (m.source) {
    check_tree(*m.source, "source");
    if (m.source_generators.size() != m.source->edges.size())
      throw InputError("every source edge needs a generator word");
    for (const auto& w : m.source_generators)
      if (w.max_generator() >= static_cast<int>(m.target.edges.size()))
        throw InputError("source generator word uses an unknown target generator");
  }
  const RibbonTree& dom = m.domain();
  const RibbonTree& tgt = m.target;

  int ones = 0, twos = 0;
  for (const auto& v : tgt.vertices) {
    if (v.critical_value == 1) ++ones;
    else if (v.critical_value == 2) ++twos;
    else if (v.critical_value != 0) throw InputError("critical value of '" + v.name + "' must be 1 or 2");
  }
  if (ones != 1 || twos != 1) throw InputError("exactly one vertex must carry each critical value 1 and 2");

  if (m.pseudoaccess.size() != tgt.vertices.size()) throw InputError("pseudoaccess table has the wrong size");
  for (std::size_t v = 0; v < tgt.vertices.size(); ++v)
    if (m.pseudoaccess[v] && (*m.pseudoaccess[v] < 0 || *m.pseudoaccess[v] >= tgt.degree(static_cast<int>(v))))
      throw InputError("pseudoaccess index out of range at '" + tgt.vertices[v].name + "'");

  if (m.vertex_map.size() != dom.vertices.size()) throw InputError("vertex_map must cover every source vertex");
  for (std::size_t v = 0; v < dom.vertices.size(); ++v) {
    const int w = m.vertex_map[v];
    if (w < 0 || idx(w) >= tgt.vertices.size()) throw InputError("vertex_map of '" + dom.vertices[v].name + "' is unknown");
    if (dom.vertices[v].critical_point && tgt.vertices[idx(w)].critical_value == 0)
      throw InputError("critical point '" + dom.vertices[v].name + "' does not map to a critical value");
  }

  if (m.critical_splits.size() != dom.vertices.size()) throw InputError("critical_splits table has the wrong size");
  for (std::size_t v = 0; v < dom.vertices.size(); ++v) {
    const int k = dom.degree(static_cast<int>(v));
    if (const auto& s = m.critical_splits[v]) {
      if (!dom.vertices[v].critical_point)
        throw InputError("critical split given at '" + dom.vertices[v].name + "', which is not a critical point");
      if (s->first < 0 || s->first >= k || s->second < 0 || s->second >= k || s->first == s->second)
        throw InputError("critical split out of range at '" + dom.vertices[v].name + "'");
    } else if (dom.vertices[v].critical_point && k > 1) {
      throw InputError("critical point '" + dom.vertices[v].name + "' needs a critical split");
    }
  }

  if (m.labels.size() != dom.edges.size()) throw InputError("label table has the wrong size");
  for (const auto& l : m.labels)
    if (l && *l != 0 && *l != 1) throw InputError("labels must be 0 or 1");

  if (m.base_edge < 0 || idx(m.base_edge) >= tgt.edges.size()) throw InputError("base edge is unknown");
  const auto z = tree_path(tgt, critical_value_vertex(tgt, 1), critical_value_vertex(tgt, 2));
  if (std::none_of(z.begin(), z.end(), [&](OrientedEdge e) { return e.generator() == m.base_edge; }))
    throw InputError("base edge '" + tgt.edges[idx(m.base_edge)].name + "' does not separate the critical values");

  if (m.edge_map.size() != dom.edges.size() * 2) throw InputError("edge_map must cover every oriented source edge");
  for (std::size_t c = 0; c < m.edge_map.size(); ++c) {
    const OrientedEdge f = OrientedEdge::from_code(static_cast<std::uint32_t>(c));
    const auto& path = m.edge_map[c];
    const std::string fname = dom.edge_name(f);
    if (path.empty()) throw InputError("edge_map of '" + fname + "' is empty");
    for (OrientedEdge e : path)
      if (idx(e.generator()) >= tgt.edges.size()) throw InputError("edge_map of '" + fname + "' names an unknown edge");
    if (tgt.origin(path.front()) != m.vertex_map[idx(dom.origin(f))] ||
        tgt.terminus(path.back()) != m.vertex_map[idx(dom.terminus(f))])
      throw InputError("edge_map of '" + fname + "' disagrees with vertex_map at its endpoints");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (tgt.terminus(path[i]) != tgt.origin(path[i + 1]))
        throw InputError("edge_map of '" + fname + "' is not a connected path");
    const auto& back = m.edge_map[c ^ 1u];
    if (back.size() != path.size() ||
        !std::equal(path.begin(), path.end(), back.rbegin(), [](OrientedEdge a, OrientedEdge b) { return a == b.inverse(); }))
      throw InputError("edge_map of '" + fname + "' is not the reverse of its inverse");
  }
}

std::vector<OrientedEdge> boundary_circuit(const RibbonTree& t) {
  std::vector<OrientedEdge> circuit;
  if (t.edges.empty()) return circuit;
  const OrientedEdge first = t.ribbon.at(0).at(0);
  OrientedEdge e = first;
  do {
    circuit.push_back(e);
    if (circuit.size() > t.edges.size() * 2) throw InputError("boundary walk does not close; ribbon is inconsistent");
    const int a = t.terminus(e);
    e = t.ribbon[idx(a)][idx(mod(t.position(e.inverse()) - 1, t.degree(a)))];
  } while (e != first);
  if (circuit.size() != t.edges.size() * 2) throw InputError("boundary walk misses edges; ribbon is inconsistent");
  return circuit;
}

int access_gap(const RibbonTreeMap& m, int vertex) {
  if (auto p = m.pseudoaccess.at(idx(vertex))) return *p;
  const TreeVertex& v = m.target.vertices.at(idx(vertex));
  if (v.critical_value != 0 && m.target.degree(vertex) > 1)
    throw InputError("critical value '" + v.name + "' needs a pseudoaccess");
  return 0;
}

SignatureTable signatures(const RibbonTreeMap& m) {
  const RibbonTree& t = m.target;
  const int v1 = critical_value_vertex(t, 1), v2 = critical_value_vertex(t, 2);
  const OrientedEdge start = t.ribbon[idx(v1)][idx(mod(access_gap(m, v1) - 1, t.degree(v1)))];
  const OrientedEdge stop = t.ribbon[idx(v2)][idx(access_gap(m, v2))].inverse();

  std::vector<OrientedEdge> circuit = boundary_circuit(t);
  std::rotate(circuit.begin(), std::find(circuit.begin(), circuit.end(), start), circuit.end());
  const auto cut = std::find(circuit.begin(), circuit.end(), stop) + 1;

  SignatureTable s;
  s.s0.assign(circuit.begin(), cut);
  s.s1.assign(cut, circuit.end());
  std::vector<int> segment(circuit.size(), 0);
  for (OrientedEdge e : s.s1) segment[e.code()] = 1;
  s.signature.resize(circuit.size());
  for (std::size_t c = 0; c < circuit.size(); ++c) s.signature[c] = {segment[c], segment[c ^ 1u]};
  return s;
}

std::vector<int> propagate_labels(const RibbonTreeMap& m) {
  const RibbonTree& t = m.domain();
  const std::size_t ne = t.edges.size();

  std::vector<int> anchors;
  for (std::size_t f = 0; f < ne; ++f)
    for (OrientedEdge e : image(m, OrientedEdge(static_cast<int>(f), false)))
      if (e.generator() == m.base_edge) {
        anchors.push_back(static_cast<int>(f));
        break;
      }

  int seed = -1, seed_label = 0;
  if (anchors.size() == 1) {
    seed = anchors.front();
  } else {
    for (std::size_t f = 0; f < ne; ++f)
      if (m.labels[f]) {
        seed = static_cast<int>(f);
        seed_label = *m.labels[f];
        break;
      }
    if (seed < 0)
      throw InputError(anchors.empty() ? "no edge maps over the base edge; labels must be supplied"
                                       : "several edges map over the base edge; labels must be supplied");
  }

  std::vector<int> label(ne, -1);
  label[idx(seed)] = seed_label;
  std::deque<int> queue{t.edges[idx(seed)].from, t.edges[idx(seed)].to};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const auto& r = t.ribbon[idx(v)];
    const int k = static_cast<int>(r.size());
    const auto& split = m.critical_splits[idx(v)];
    auto arc = [&](int pos) { return split && !in_arc(pos, split->first, split->second, k) ? 1 : 0; };

    int ref = -1;
    for (int p = 0; p < k; ++p)
      if (label[idx(r[idx(p)].generator())] >= 0) ref = p;
    if (ref < 0) continue;
    const int ref_label = label[idx(r[idx(ref)].generator())];
    for (int p = 0; p < k; ++p) {
      const int f = r[idx(p)].generator();
      const int want = ref_label ^ (arc(p) != arc(ref) ? 1 : 0);
      if (label[idx(f)] < 0) {
        label[idx(f)] = want;
        queue.push_back(t.terminus(r[idx(p)]));
      } else if (label[idx(f)] != want) {
        throw InputError("label conflict at vertex '" + t.vertices[idx(v)].name + "'");
      }
    }
  }

  for (std::size_t f = 0; f < ne; ++f) {
    if (label[f] < 0) throw InputError("edge '" + t.edges[f].name + "' is unreachable during label propagation");
    if (m.labels[f] && *m.labels[f] != label[f])
      throw InputError("supplied label of '" + t.edges[f].name + "' contradicts the critical splits");
  }
  return label;
}

VertexWord vertex_word(const RibbonTreeMap& m, int vertex) {
  const auto& r = m.target.ribbon.at(idx(vertex));
  const int k = static_cast<int>(r.size());
  const int gap = k > 0 ? access_gap(m, vertex) : 0;
  VertexWord w;
  for (int s = 1; s <= k; ++s) w.push_back(r[idx(mod(gap - s, k))]);
  return w;
}

EdgeTable emit_table(const RibbonTreeMap& m, const SignatureTable& sig, const std::vector<int>& labels) {
  const RibbonTree& dom = m.domain();
  const std::size_t n = m.target.edges.size() * 2;
  EdgeTable table;
  table.entries.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    const OrientedEdge e = OrientedEdge::from_code(static_cast<std::uint32_t>(c));
    const auto [si, sj] = sig.of(e);
    for (int delta : {0, 1}) {
      const Sheet eps((si + delta) % 2), eps_star((sj + delta) % 2);
      std::vector<OrientedEdge> over;
      for (std::size_t fc = 0; fc < dom.edges.size() * 2; ++fc) {
        const OrientedEdge f = OrientedEdge::from_code(static_cast<std::uint32_t>(fc));
        if (labels[idx(f.generator())] != delta) continue;
        const auto& path = image(m, f);
        if (std::find(path.begin(), path.end(), e) != path.end()) over.push_back(f);
      }
      if (over.size() > 1)
        throw InputError("edges '" + dom.edge_name(over[0]) + "' and '" + dom.edge_name(over[1]) +
                         "' with the same label both map over '" + m.target.edge_name(e) + "'");
      fg::Word w = over.empty() ? fg::Word{} : m.source_generator(over.front());
      table.entries[c][idx(eps.value())] = Transition{std::move(w), eps_star};
    }
  }
  for (std::size_t v = 0; v < m.target.vertices.size(); ++v)
    table.vertex_words.push_back(vertex_word(m, static_cast<int>(v)));
  return table;
}

FreeBasisResult reduce_to_free_basis(const RibbonTreeMap& m, const EdgeTable& table) {
  const RibbonTree& t = m.target;
  const std::size_t nv = t.vertices.size(), ne = t.edges.size();

  int root = -1;
  for (std::size_t v = 0; v < nv; ++v)
    if (t.vertices[v].marked) {
      root = static_cast<int>(v);
      break;
    }
  if (root < 0) throw InputError("tree has no marked vertex");

  // Parent edge and depth of every vertex, rooted at `root`.
  std::vector<int> depth(nv, -1), parent_edge(nv, -1);
  std::vector<int> order{root};
  depth[idx(root)] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    for (OrientedEdge e : t.ribbon[idx(v)]) {
      const int w = t.terminus(e);
      if (depth[idx(w)] >= 0) continue;
      depth[idx(w)] = depth[idx(v)] + 1;
      parent_edge[idx(w)] = e.generator();
      order.push_back(w);
    }
  }

  std::vector<int> branch;
  for (std::size_t v = 0; v < nv; ++v)
    if (!t.vertices[v].marked) branch.push_back(static_cast<int>(v));
  std::stable_sort(branch.begin(), branch.end(), [&](int a, int b) { return depth[idx(a)] > depth[idx(b)]; });

  // Expressions over E_T letters; eliminated generators get rewritten.
  std::vector<fg::Word> expr(ne);
  for (std::size_t g = 0; g < ne; ++g) expr[g] = fg::Word::letter(fg::Letter(static_cast<int>(g), false));
  auto value = [&](fg::Letter l) { return l.is_inverse() ? expr[idx(l.generator())].inverse() : expr[idx(l.generator())]; };

  std::vector<char> eliminated(ne, 0);
  FreeBasisResult out;
  for (int v : branch) {
    const int x = parent_edge[idx(v)];
    const VertexWord& w = table.vertex_words[idx(v)];
    auto it = std::find_if(w.begin(), w.end(), [&](fg::Letter l) { return l.generator() == x; });
    if (it == w.end() || std::count_if(w.begin(), w.end(), [&](fg::Letter l) { return l.generator() == x; }) != 1)
      throw ConsistencyError("elimination failed at '" + t.vertices[idx(v)].name + "'");
    fg::Word u1, u2;
    for (auto p = w.begin(); p != it; ++p) u1 *= value(*p);
    for (auto p = it + 1; p != w.end(); ++p) u2 *= value(*p);
    // u1 x^s u2 = id
    expr[idx(x)] = it->is_inverse() ? u2 * u1 : u1.inverse() * u2.inverse();
    eliminated[idx(x)] = 1;
    out.eliminated.push_back(t.edges[idx(x)].generator);
  }

  // Renumber over the surviving generators.
  std::vector<int> basis_index(ne, -1);
  std::vector<std::string> basis_names;
  for (std::size_t g = 0; g < ne; ++g)
    if (!eliminated[g]) {
      basis_index[g] = static_cast<int>(basis_names.size());
      basis_names.push_back(t.edges[g].generator);
    }
  auto rewrite = [&](const fg::Word& w) {
    std::vector<fg::Letter> letters;
    for (fg::Letter l : w.letters()) {
      const fg::Word v = value(l);
      for (fg::Letter k : v.letters()) {
        if (basis_index[idx(k.generator())] < 0) throw ConsistencyError("eliminated generator survived rewriting");
        letters.emplace_back(basis_index[idx(k.generator())], k.is_inverse());
      }
    }
    return fg::Word::reduce(letters);
  };

  std::vector<std::array<Transition, 2>> positive;
  for (std::size_t g = 0; g < ne; ++g) {
    if (eliminated[g]) continue;
    const fg::Letter l(static_cast<int>(g), false);
    std::array<Transition, 2> row;
    for (int a : {0, 1}) {
      const Transition& tr = table.entry(l, Sheet(a));
      row[idx(a)] = Transition{rewrite(tr.word), tr.sheet};
    }
    positive.push_back(std::move(row));
  }
  out.recursion = WreathRecursion(fg::Alphabet(basis_names), std::move(positive));

  for (std::size_t g = 0; g < ne; ++g) {
    out.gens.names.push_back(t.edges[g].generator);
    out.gens.gens.push_back(rewrite(fg::Word::letter(fg::Letter(static_cast<int>(g), false))));
  }
  out.gens.vertex_words = table.vertex_words;

  for (std::size_t c = 0; c < ne * 2; ++c) {
    const fg::Letter l = fg::Letter::from_code(static_cast<std::uint32_t>(c));
    const fg::Word lw = l.is_inverse() ? out.gens.gens[idx(l.generator())].inverse() : out.gens.gens[idx(l.generator())];
    for (int a : {0, 1}) {
      const Transition& tr = table.entry(l, Sheet(a));
      if (out.recursion.apply(Sheet(a), lw) != Transition{rewrite(tr.word), tr.sheet})
        throw InputError("automaton table is inconsistent with the vertex relations at '" + t.edge_name(l) +
                         "', sheet " + std::to_string(a));
    }
  }
  return out;
}

Compiled compile(const RibbonTreeMap& m) {
  validate(m);
  Compiled c;
  c.circuit = boundary_circuit(m.target);
  c.signatures = signatures(m);
  c.labels = propagate_labels(m);
  c.table = emit_table(m, c.signatures, c.labels);
  c.free = reduce_to_free_basis(m, c.table);
  return c;
}

}  // namespace ivy::compiler
