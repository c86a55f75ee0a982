#include "ivy/engine.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>

namespace ivy {

IvyNode make_node(TreeLikeGenSet gens, WreathRecursion recursion) {
  if (Diagnostics d = validate(gens); !d)
    throw InputError("generating set is not tree-like: " + d.message);
  for (const auto& g : gens.gens)
    if (g.max_generator() >= recursion.rank())
      throw InputError("generator value uses a letter outside the recursion alphabet");
  IvyNode n{std::move(gens), std::move(recursion), {}, -1};
  n.key = canonical_key(n.gens);
  return n;
}

std::size_t max_word_length(const IvyNode& n) {
  std::size_t m = 0;
  for (const auto& g : n.gens.gens) m = std::max(m, g.length());
  return m;
}

std::vector<fg::Letter> base_elements(const IvyNode& n) {
  std::vector<fg::Letter> out;
  for (std::size_t i = 0; i < n.gens.gens.size(); ++i) {
    for (bool inv : {false, true}) {
      const fg::Word w = inv ? n.gens.gens[i].inverse() : n.gens.gens[i];
      if (n.recursion.apply(kSheet0, w).sheet == kSheet1) out.emplace_back(static_cast<int>(i), inv);
    }
  }
  if (out.empty())
    throw InputError("no base element: no generator separates the critical values");
  return out;
}

IvyNode pullback_step(const IvyNode& n, fg::Letter g) {
  if (static_cast<std::size_t>(g.generator()) >= n.gens.gens.size())
    throw InputError("base element index out of range");
  const fg::Word gw = g.is_inverse() ? n.gens.gens[static_cast<std::size_t>(g.generator())].inverse()
                                     : n.gens.gens[static_cast<std::size_t>(g.generator())];
  const Transition t = n.recursion.apply(kSheet0, gw);
  if (t.sheet != kSheet1)
    throw InputError("'" + format_letter(n.gens, g) + "' is not a base element");

  WreathRecursion rec = basis_change(n.recursion, t.word);
  const fg::WordSet pushed = pushforward_gens(rec, generating_set(n.gens));
  const auto words = pushforward_vertex_structure(rec, n.gens.vertex_words, n.gens.gens, pushed);
  TreeLikeGenSet next = name_pushforward(pushed, words);
  if (Diagnostics d = validate(next); !d)
    throw ConsistencyError("inconsistent biset data: pullback along '" + format_letter(n.gens, g) +
                           "' is not tree-like (" + d.message + ")");
  IvyNode out{std::move(next), std::move(rec), {}, -1};
  out.key = canonical_key(out.gens);
  return out;
}

namespace {

struct Expansion {
  std::vector<IvyNode> successors;  // distinct keys, in base-element order
  bool truncated = false;
};

Expansion expand(const IvyNode& n, std::size_t max_len) {
  Expansion e;
  for (fg::Letter g : base_elements(n)) {
    IvyNode s = pullback_step(n, g);
    if (max_word_length(s) > max_len) {
      e.truncated = true;
      continue;
    }
    bool seen = std::any_of(e.successors.begin(), e.successors.end(),
                            [&](const IvyNode& m) { return m.key == s.key; });
    if (!seen) e.successors.push_back(std::move(s));
  }
  return e;
}

std::vector<Expansion> expand_all(const IvyGraph& graph, const std::vector<int>& frontier,
                                  const ExploreConfig& cfg) {
  std::vector<Expansion> results(frontier.size());
  std::vector<std::exception_ptr> errors(frontier.size());
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, frontier.size()));

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < frontier.size(); i += stride) {
      try {
        results[i] = expand(graph.nodes[static_cast<std::size_t>(frontier[i])], cfg.max_word_length);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace

std::pair<IvyGraph, ExploreReport> explore(const IvyNode& start, const ExploreConfig& cfg) {
  if (cfg.max_nodes == 0 || cfg.max_word_length == 0 || cfg.max_cycle_length == 0)
    throw InputError("exploration budgets must be positive");

  IvyGraph graph;
  std::map<fg::WordSet, int> index;
  bool complete = true;

  graph.nodes.push_back(start);
  graph.nodes.back().discovery_index = 0;
  index.emplace(start.key, 0);
  std::vector<int> frontier{0};

  while (!frontier.empty()) {
    std::vector<Expansion> results = expand_all(graph, frontier, cfg);

    // New keys in key order; the representative comes from the earliest
    // frontier node that reached the key.
    std::map<fg::WordSet, const IvyNode*> fresh;
    for (auto& r : results) {
      complete = complete && !r.truncated;
      for (auto& s : r.successors)
        if (!index.contains(s.key)) fresh.try_emplace(s.key, &s);
    }

    std::vector<int> next;
    for (auto& [key, node] : fresh) {
      if (graph.nodes.size() >= cfg.max_nodes) {
        complete = false;
        break;
      }
      const int id = static_cast<int>(graph.nodes.size());
      graph.nodes.push_back(*node);
      graph.nodes.back().discovery_index = id;
      index.emplace(key, id);
      next.push_back(id);
    }

    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (const auto& s : results[i].successors)
        if (auto it = index.find(s.key); it != index.end())
          graph.edges.emplace(frontier[i], it->second);

    frontier = std::move(next);
  }

  ExploreReport report = analyze(graph, cfg);
  report.closure_complete = complete;
  return {std::move(graph), std::move(report)};
}

ExploreReport analyze(const IvyGraph& g, const ExploreConfig& cfg) {
  ExploreReport r;
  const int n = static_cast<int>(g.nodes.size());
  r.node_count = g.nodes.size();
  r.edge_count = g.edges.size();
  for (const auto& node : g.nodes) r.max_word_length_seen = std::max(r.max_word_length_seen, max_word_length(node));

  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (auto [a, b] : g.edges) out[static_cast<std::size_t>(a)].push_back(b);
  for (auto& succ : out) std::sort(succ.begin(), succ.end());

  for (int v = 0; v < n; ++v) {
    if (std::binary_search(out[v].begin(), out[v].end(), v)) {
      r.self_loops.push_back(v);
      r.self_loop_keys.push_back(g.nodes[static_cast<std::size_t>(v)].key);
    }
  }

  // Simple cycles whose least vertex is `start`, by bounded depth-first search.
  const std::size_t limit = cfg.max_cycle_length;
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  auto dfs = [&](auto&& self, int start, int v) -> void {
    for (int w : out[static_cast<std::size_t>(v)]) {
      if (w == start) {
        r.cycles.push_back(path);
      } else if (w > start && !on_path[static_cast<std::size_t>(w)] && path.size() < limit) {
        on_path[static_cast<std::size_t>(w)] = 1;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path[static_cast<std::size_t>(w)] = 0;
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(dfs, s, s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }

  std::vector<std::set<int>> periods(static_cast<std::size_t>(n));
  for (const auto& c : r.cycles)
    for (int v : c) periods[static_cast<std::size_t>(v)].insert(static_cast<int>(c.size()));
  for (const auto& p : periods) r.periods.emplace_back(p.begin(), p.end());
  return r;
}

}  // namespace ivy
