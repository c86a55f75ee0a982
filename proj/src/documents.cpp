#include "ivy/documents.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ivy::doc {

using json = nlohmann::ordered_json;
using compiler::OrientedEdge;
using compiler::RibbonTree;
using compiler::RibbonTreeMap;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw InputError("field '" + where + "' must be an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw InputError("missing field '" + (where.empty() ? "" : where + ".") + name + "'");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError("field '" + where + "' must be a string");
  return j.get<std::string>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError("field '" + where + "' must be an integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw InputError("field '" + where + "' must be a boolean");
  return j.get<bool>();
}

void check_format(const json& doc, std::string_view expected) {
  const std::string f = as_string(field(doc, "format", ""), "format");
  if (f != expected) throw InputError("field 'format' is '" + f + "', expected '" + std::string(expected) + "'");
}

// "NAME" or "NAME^-1".
std::pair<std::string, bool> split_signed(const std::string& token) {
  constexpr std::string_view suffix = "^-1";
  if (token.size() > suffix.size() && token.ends_with(suffix))
    return {token.substr(0, token.size() - suffix.size()), true};
  return {token, false};
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct NamedTree {
  RibbonTree tree;
  std::map<std::string, int> vertex;
  std::map<std::string, int> edge;

  int vertex_index(const std::string& name, const std::string& where) const {
    auto it = vertex.find(name);
    if (it == vertex.end()) throw InputError("field '" + where + "' names unknown vertex '" + name + "'");
    return it->second;
  }
  OrientedEdge oriented(const json& j, const std::string& where) const {
    auto [name, inv] = split_signed(as_string(j, where));
    auto it = edge.find(name);
    if (it == edge.end()) throw InputError("field '" + where + "' names unknown edge '" + name + "'");
    return OrientedEdge(it->second, inv);
  }
};

NamedTree parse_tree(const json& obj, const std::string& prefix) {
  NamedTree nt;
  const json& vs = field(obj, "vertices", prefix);
  if (!vs.is_array()) throw InputError("field '" + prefix + "vertices' must be a list");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = prefix + "vertices[" + std::to_string(i) + "]";
    const json& v = vs[i];
    compiler::TreeVertex tv;
    tv.name = as_string(field(v, "name", where), where + ".name");
    if (v.contains("marked")) tv.marked = as_bool(v["marked"], where + ".marked");
    if (v.contains("critical_point")) tv.critical_point = as_bool(v["critical_point"], where + ".critical_point");
    if (v.contains("critical_value") && !v["critical_value"].is_null()) {
      tv.critical_value = as_int(v["critical_value"], where + ".critical_value");
      if (tv.critical_value != 1 && tv.critical_value != 2)
        throw InputError("field '" + where + ".critical_value' must be null, 1 or 2");
    }
    if (!nt.vertex.emplace(tv.name, static_cast<int>(i)).second)
      throw InputError("field '" + where + "' repeats vertex '" + tv.name + "'");
    nt.tree.vertices.push_back(std::move(tv));
  }

  const json& es = field(obj, "edges", prefix);
  if (!es.is_array()) throw InputError("field '" + prefix + "edges' must be a list");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = prefix + "edges[" + std::to_string(i) + "]";
    const json& e = es[i];
    compiler::TreeEdge te;
    te.name = as_string(field(e, "name", where), where + ".name");
    if (te.name.ends_with("^-1")) throw InputError("field '" + where + ".name' may not end in ^-1");
    te.from = nt.vertex_index(as_string(field(e, "from", where), where + ".from"), where + ".from");
    te.to = nt.vertex_index(as_string(field(e, "to", where), where + ".to"), where + ".to");
    te.generator = e.contains("generator") ? as_string(e["generator"], where + ".generator") : lowercase(te.name);
    if (!nt.edge.emplace(te.name, static_cast<int>(i)).second)
      throw InputError("field '" + where + "' repeats edge '" + te.name + "'");
    nt.tree.edges.push_back(std::move(te));
  }

  // Missing rotations are filled in where the cyclic order is forced.
  nt.tree.ribbon.assign(nt.tree.vertices.size(), {});
  std::vector<std::vector<OrientedEdge>> incident(nt.tree.vertices.size());
  for (std::size_t i = 0; i < nt.tree.edges.size(); ++i) {
    incident[static_cast<std::size_t>(nt.tree.edges[i].from)].emplace_back(static_cast<int>(i), false);
    incident[static_cast<std::size_t>(nt.tree.edges[i].to)].emplace_back(static_cast<int>(i), true);
  }
  const json empty = json::object();
  const json& ribbon = obj.contains("ribbon") ? obj["ribbon"] : empty;
  if (!ribbon.is_object()) throw InputError("field '" + prefix + "ribbon' must be an object");
  for (auto it = ribbon.begin(); it != ribbon.end(); ++it) {
    const std::string where = prefix + "ribbon." + it.key();
    const int v = nt.vertex_index(it.key(), where);
    if (!it.value().is_array()) throw InputError("field '" + where + "' must be a list");
    for (const auto& tok : it.value()) nt.tree.ribbon[static_cast<std::size_t>(v)].push_back(nt.oriented(tok, where));
  }
  for (std::size_t v = 0; v < nt.tree.vertices.size(); ++v) {
    if (!ribbon.contains(nt.tree.vertices[v].name)) {
      if (incident[v].size() > 2)
        throw InputError("field '" + prefix + "ribbon." + nt.tree.vertices[v].name + "' is required at a branch point");
      nt.tree.ribbon[v] = incident[v];
    }
  }
  return nt;
}

template <class F>
void for_each_entry(const json& obj, const std::string& where, F&& f) {
  if (!obj.is_object()) throw InputError("field '" + where + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) f(it.key(), it.value(), where + "." + it.key());
}

std::string letter_name(const std::vector<std::string>& names, fg::Letter l) {
  const std::string& n = names.at(static_cast<std::size_t>(l.generator()));
  return l.is_inverse() ? n + "^-1" : n;
}

json word_sequence(const TreeLikeGenSet& t, const VertexWord& v) {
  json out = json::array();
  for (fg::Letter l : v) out.push_back(letter_name(t.names, l));
  return out;
}

json node_body(const IvyNode& n) {
  const fg::Alphabet& alpha = n.recursion.alphabet();
  json gens = json::object();
  for (std::size_t i = 0; i < n.gens.gens.size(); ++i) gens[n.gens.names[i]] = fg::format_word(n.gens.gens[i], alpha);
  json vws = json::array();
  for (const auto& v : n.gens.vertex_words) vws.push_back(word_sequence(n.gens, v));
  json key = json::array();
  for (const auto& w : n.key.words()) key.push_back(fg::format_word(w, alpha));
  return json{{"generators", gens}, {"vertex_words", vws}, {"key", key}};
}

// Edges ordered by (source key, target key).
std::vector<std::pair<int, int>> edges_in_key_order(const IvyGraph& g) {
  std::vector<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
  auto key = [&](int i) -> const fg::WordSet& { return g.nodes[static_cast<std::size_t>(i)].key; };
  std::sort(edges.begin(), edges.end(), [&](const auto& a, const auto& b) {
    if (auto c = key(a.first) <=> key(b.first); c != 0) return c < 0;
    return key(a.second) < key(b.second);
  });
  return edges;
}

}  // namespace

std::string document_format(std::string_view text) {
  const json doc = parse(text);
  if (doc.is_object() && doc.contains("format") && doc["format"].is_string()) return doc["format"].get<std::string>();
  return "";
}

RibbonTreeMap parse_treemap(std::string_view text) {
  const json doc = parse(text);
  check_format(doc, kTreemapFormat);

  RibbonTreeMap m;
  NamedTree target = parse_tree(doc, "");
  m.target = target.tree;
  std::optional<NamedTree> source;
  if (doc.contains("source")) {
    source = parse_tree(doc["source"], "source.");
    m.source = source->tree;
    const json& gens = field(doc["source"], "generators", "source");
    const fg::Alphabet alpha = m.target_alphabet();
    m.source_generators.assign(m.source->edges.size(), fg::Word{});
    std::vector<char> given(m.source->edges.size(), 0);
    for_each_entry(gens, "source.generators", [&](const std::string& k, const json& v, const std::string& where) {
      auto it = source->edge.find(k);
      if (it == source->edge.end()) throw InputError("field '" + where + "' names unknown source edge");
      m.source_generators[static_cast<std::size_t>(it->second)] = fg::parse_word(as_string(v, where), alpha);
      given[static_cast<std::size_t>(it->second)] = 1;
    });
    for (std::size_t i = 0; i < given.size(); ++i)
      if (!given[i]) throw InputError("missing field 'source.generators." + m.source->edges[i].name + "'");
  }
  const NamedTree& dom = source ? *source : target;

  m.pseudoaccess.assign(m.target.vertices.size(), std::nullopt);
  if (doc.contains("pseudoaccess"))
    for_each_entry(doc["pseudoaccess"], "pseudoaccess", [&](const std::string& k, const json& v, const std::string& w) {
      m.pseudoaccess[static_cast<std::size_t>(target.vertex_index(k, w))] = as_int(v, w);
    });

  m.critical_splits.assign(dom.tree.vertices.size(), std::nullopt);
  if (doc.contains("critical_splits"))
    for_each_entry(doc["critical_splits"], "critical_splits", [&](const std::string& k, const json& v, const std::string& w) {
      if (!v.is_array() || v.size() != 2) throw InputError("field '" + w + "' must be a pair of gap indices");
      m.critical_splits[static_cast<std::size_t>(dom.vertex_index(k, w))] =
          std::pair{as_int(v[0], w + "[0]"), as_int(v[1], w + "[1]")};
    });

  m.labels.assign(dom.tree.edges.size(), std::nullopt);
  if (doc.contains("labels"))
    for_each_entry(doc["labels"], "labels", [&](const std::string& k, const json& v, const std::string& w) {
      auto it = dom.edge.find(k);
      if (it == dom.edge.end()) throw InputError("field '" + w + "' names unknown edge");
      m.labels[static_cast<std::size_t>(it->second)] = as_int(v, w);
    });

  const std::string base = as_string(field(doc, "base_edge", ""), "base_edge");
  auto bit = target.edge.find(base);
  if (bit == target.edge.end()) throw InputError("field 'base_edge' names unknown edge '" + base + "'");
  m.base_edge = bit->second;

  m.vertex_map.assign(dom.tree.vertices.size(), -1);
  for_each_entry(field(doc, "vertex_map", ""), "vertex_map", [&](const std::string& k, const json& v, const std::string& w) {
    m.vertex_map[static_cast<std::size_t>(dom.vertex_index(k, w))] = target.vertex_index(as_string(v, w), w);
  });
  for (std::size_t v = 0; v < m.vertex_map.size(); ++v)
    if (m.vertex_map[v] < 0) throw InputError("missing field 'vertex_map." + dom.tree.vertices[v].name + "'");

  m.edge_map.assign(dom.tree.edges.size() * 2, {});
  std::vector<char> given(dom.tree.edges.size() * 2, 0);
  for_each_entry(field(doc, "edge_map", ""), "edge_map", [&](const std::string& k, const json& v, const std::string& w) {
    const OrientedEdge f = dom.oriented(json(k), w);
    if (!v.is_array()) throw InputError("field '" + w + "' must be a list");
    std::vector<OrientedEdge> path;
    for (const auto& tok : v) path.push_back(target.oriented(tok, w));
    m.edge_map[f.code()] = std::move(path);
    given[f.code()] = 1;
  });
  for (std::size_t c = 0; c < given.size(); c += 2) {
    if (!given[c] && !given[c + 1])
      throw InputError("missing field 'edge_map." + dom.tree.edges[c / 2].name + "'");
    for (std::size_t s : {c, c + 1}) {
      if (given[s]) continue;
      const auto& other = m.edge_map[s ^ 1u];
      for (auto it = other.rbegin(); it != other.rend(); ++it) m.edge_map[s].push_back(it->inverse());
    }
  }
  return m;
}

IvyNode parse_biset(std::string_view text) {
  const json doc = parse(text);
  check_format(doc, kBisetFormat);

  const json& basis = field(doc, "basis", "");
  if (!basis.is_array()) throw InputError("field 'basis' must be a list");
  std::vector<std::string> names;
  for (const auto& b : basis) names.push_back(as_string(b, "basis"));
  const fg::Alphabet alpha(names);

  const json& rec = field(doc, "recursion", "");
  auto read_row = [&](const json& row, const std::string& where) {
    std::array<Transition, 2> out;
    for (int a : {0, 1}) {
      const std::string sw = where + "." + std::to_string(a);
      const json& pair = field(row, a == 0 ? "0" : "1", where);
      if (!pair.is_array() || pair.size() != 2) throw InputError("field '" + sw + "' must be [word, sheet]");
      const int sheet = as_int(pair[1], sw + "[1]");
      if (sheet != 0 && sheet != 1) throw InputError("field '" + sw + "[1]' must be 0 or 1");
      out[static_cast<std::size_t>(a)] = Transition{fg::parse_word(as_string(pair[0], sw + "[0]"), alpha), Sheet(sheet)};
    }
    return out;
  };
  std::vector<std::array<Transition, 2>> positive;
  for (const auto& n : names) positive.push_back(read_row(field(rec, n.c_str(), "recursion"), "recursion." + n));
  WreathRecursion recursion(alpha, std::move(positive));

  for_each_entry(rec, "recursion", [&](const std::string& k, const json& v, const std::string& w) {
    auto [name, inv] = split_signed(k);
    const int g = alpha.find(name);
    if (g < 0) throw InputError("field '" + w + "' names unknown basis letter");
    if (!inv) return;
    const auto row = read_row(v, w);
    for (int a : {0, 1})
      if (recursion.step(Sheet(a), fg::Letter(g, true)) != row[static_cast<std::size_t>(a)])
        throw InputError("field '" + w + "' contradicts the entries derived from '" + name + "'");
  });

  TreeLikeGenSet t;
  std::map<std::string, int> index;
  std::map<std::string, bool> identity;
  for_each_entry(field(doc, "generators", ""), "generators", [&](const std::string& k, const json& v, const std::string& w) {
    if (k.ends_with("^-1")) throw InputError("field '" + w + "' must name a positive generator");
    fg::Word word = fg::parse_word(as_string(v, w), alpha);
    if (word.is_identity()) {
      identity[k] = true;
      return;
    }
    index[k] = static_cast<int>(t.names.size());
    t.names.push_back(k);
    t.gens.push_back(std::move(word));
  });

  const json& vws = field(doc, "vertex_words", "");
  if (!vws.is_array()) throw InputError("field 'vertex_words' must be a list");
  for (std::size_t i = 0; i < vws.size(); ++i) {
    const std::string where = "vertex_words[" + std::to_string(i) + "]";
    if (!vws[i].is_array()) throw InputError("field '" + where + "' must be a list");
    VertexWord v;
    for (const auto& tok : vws[i]) {
      auto [name, inv] = split_signed(as_string(tok, where));
      if (identity.contains(name)) continue;
      auto it = index.find(name);
      if (it == index.end()) throw InputError("field '" + where + "' names unknown generator '" + name + "'");
      v.emplace_back(it->second, inv);
    }
    if (v.empty() && !vws[i].empty()) continue;
    t.vertex_words.push_back(std::move(v));
  }
  return make_node(std::move(t), std::move(recursion));
}

std::string write_biset(const IvyNode& n) {
  const fg::Alphabet& alpha = n.recursion.alphabet();
  json rec = json::object();
  for (int g = 0; g < alpha.size(); ++g) {
    json row = json::object();
    for (int a : {0, 1}) {
      const Transition& t = n.recursion.entry(g, Sheet(a));
      row[a == 0 ? "0" : "1"] = json::array({fg::format_word(t.word, alpha), t.sheet.value()});
    }
    rec[alpha.name(g)] = row;
  }
  json body = node_body(n);
  json doc{{"format", kBisetFormat},
           {"basis", alpha.names()},
           {"recursion", rec},
           {"generators", body["generators"]},
           {"vertex_words", body["vertex_words"]}};
  return doc.dump(2) + "\n";
}

IvyNode load_node(std::string_view text) {
  const std::string f = document_format(text);
  if (f == kTreemapFormat) {
    compiler::Compiled c = compiler::compile(parse_treemap(text));
    return make_node(std::move(c.free.gens), std::move(c.free.recursion));
  }
  if (f == kBisetFormat) return parse_biset(text);
  throw InputError("field 'format' must be '" + std::string(kTreemapFormat) + "' or '" + std::string(kBisetFormat) + "'");
}

std::string write_report(const IvyGraph& g, const ExploreReport& r) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    json n{{"index", i}};
    n.update(node_body(g.nodes[i]));
    n["invariant"] = std::binary_search(r.self_loops.begin(), r.self_loops.end(), static_cast<int>(i));
    n["periods"] = i < r.periods.size() ? json(r.periods[i]) : json::array();
    nodes.push_back(std::move(n));
  }
  json edges = json::array();
  for (auto [a, b] : edges_in_key_order(g)) edges.push_back(json::array({a, b}));
  json doc{{"format", kReportFormat},
           {"node_count", r.node_count},
           {"edge_count", r.edge_count},
           {"closure_complete", r.closure_complete},
           {"max_word_length_seen", r.max_word_length_seen},
           {"self_loops", r.self_loops},
           {"cycles", r.cycles},
           {"nodes", nodes},
           {"edges", edges}};
  return doc.dump(2) + "\n";
}

std::string write_dot(const IvyGraph& g, const ExploreReport& r) {
  std::ostringstream out;
  out << "digraph ivy {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << "  n" << i;
    if (std::binary_search(r.self_loops.begin(), r.self_loops.end(), static_cast<int>(i))) out << " [invariant=true]";
    out << ";\n";
  }
  for (auto [a, b] : edges_in_key_order(g)) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string format_key(const fg::WordSet& key, const fg::Alphabet& alphabet) {
  std::string out = "{";
  for (std::size_t i = 0; i < key.words().size(); ++i) {
    if (i) out += ", ";
    out += fg::format_word(key.words()[i], alphabet);
  }
  return out + "}";
}

}  // namespace ivy::doc
