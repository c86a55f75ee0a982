#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "ivy/compiler.hpp"

using namespace ivy;
using namespace ivy::compiler;
using ivy::testing::read_fixture;
using ivy::testing::treemap;

namespace {

// Expected automaton tables as text, keyed by signed generator name.
using TextTable = std::map<std::string, std::array<std::pair<std::string, int>, 2>>;

std::string name(const RibbonTreeMap& m, OrientedEdge e) {
  const std::string& g = m.target.edges.at(static_cast<std::size_t>(e.generator())).generator;
  return e.is_inverse() ? g + "^-1" : g;
}

TextTable as_text(const RibbonTreeMap& m, const EdgeTable& t) {
  const fg::Alphabet alpha = m.target_alphabet();
  TextTable out;
  for (std::uint32_t c = 0; c < t.entries.size(); ++c) {
    const OrientedEdge e = OrientedEdge::from_code(c);
    for (int a : {0, 1}) {
      const Transition& tr = t.entry(e, Sheet(a));
      out[name(m, e)][static_cast<std::size_t>(a)] = {fg::format_word(tr.word, alpha), tr.sheet.value()};
    }
  }
  return out;
}

std::vector<std::string> names(const RibbonTree& t, const std::vector<OrientedEdge>& es) {
  std::vector<std::string> out;
  for (OrientedEdge e : es) out.push_back(t.edge_name(e));
  return out;
}

OrientedEdge edge(const RibbonTree& t, const std::string& n) {
  const bool inv = n.ends_with("^-1");
  const std::string base = inv ? n.substr(0, n.size() - 3) : n;
  for (std::size_t i = 0; i < t.edges.size(); ++i)
    if (t.edges[i].name == base) return OrientedEdge(static_cast<int>(i), inv);
  throw std::runtime_error("no edge " + n);
}

std::array<int, 2> sig(const RibbonTreeMap& m, const SignatureTable& s, const std::string& e) {
  return s.of(edge(m.target, e));
}

int label(const RibbonTreeMap& m, const std::vector<int>& labels, const std::string& e) {
  return labels.at(static_cast<std::size_t>(edge(m.domain(), e).generator()));
}

void check_inverse_consistency(const EdgeTable& t) {
  for (std::uint32_t c = 0; c < t.entries.size(); ++c) {
    const OrientedEdge e = OrientedEdge::from_code(c);
    CHECK(t.entry(e, kSheet0).sheet != t.entry(e, kSheet1).sheet);
    for (int a : {0, 1}) {
      const Transition& tr = t.entry(e, Sheet(a));
      CHECK(t.entry(e.inverse(), tr.sheet) == Transition{tr.word.inverse(), Sheet(a)});
    }
  }
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto p = s.find(from);
  REQUIRE(p != std::string::npos);
  return s.replace(p, from.size(), to);
}

}  // namespace

TEST_CASE("basilica: circuit, signatures, labels, table") {
  const RibbonTreeMap m = treemap("basilica.json");
  const Compiled c = compile(m);
  CHECK(names(m.target, c.circuit) == std::vector<std::string>{"A", "B", "B^-1", "A^-1"});
  CHECK(sig(m, c.signatures, "A") == std::array{0, 1});
  CHECK(sig(m, c.signatures, "B") == std::array{0, 1});
  CHECK(sig(m, c.signatures, "A^-1") == std::array{1, 0});
  CHECK(sig(m, c.signatures, "B^-1") == std::array{1, 0});
  CHECK(label(m, c.labels, "B") == 0);
  CHECK(label(m, c.labels, "A") == 1);

  const TextTable expect{{"a", {{{"b", 1}, {"a^-1", 0}}}},
                         {"b", {{{"b", 1}, {"1", 0}}}},
                         {"a^-1", {{{"a", 1}, {"b^-1", 0}}}},
                         {"b^-1", {{{"1", 1}, {"b^-1", 0}}}}};
  CHECK(as_text(m, c.table) == expect);
  check_inverse_consistency(c.table);

  CHECK(c.free.eliminated.empty());
  CHECK(c.free.recursion.alphabet().names() == std::vector<std::string>{"a", "b"});
  CHECK(c.free.gens.vertex_words ==
        std::vector<VertexWord>{{OrientedEdge(0, false)}, {OrientedEdge(0, true), OrientedEdge(1, false)},
                                {OrientedEdge(1, true)}});
}

TEST_CASE("rabbit: circuit, signatures, labels, table, free basis") {
  const RibbonTreeMap m = treemap("rabbit.json");
  const Compiled c = compile(m);
  CHECK(c.circuit.size() == 8);
  CHECK(names(m.target, c.signatures.s0) == std::vector<std::string>{"B^-1", "A", "D"});
  CHECK(names(m.target, c.signatures.s1) == std::vector<std::string>{"D^-1", "A^-1", "C", "C^-1", "B"});
  CHECK(sig(m, c.signatures, "C") == std::array{1, 1});
  CHECK(sig(m, c.signatures, "A") == std::array{0, 1});
  CHECK(sig(m, c.signatures, "D") == std::array{0, 1});
  CHECK(sig(m, c.signatures, "B") == std::array{1, 0});
  for (const char* e : {"A", "B", "C"}) CHECK(label(m, c.labels, e) == 1);
  CHECK(label(m, c.labels, "D") == 0);

  const TextTable expect{{"a", {{{"d", 1}, {"c", 0}}}},         {"b", {{{"a", 1}, {"d^-1", 0}}}},
                         {"c", {{{"b", 0}, {"1", 1}}}},         {"d", {{{"d", 1}, {"1", 0}}}},
                         {"a^-1", {{{"c^-1", 1}, {"d^-1", 0}}}}, {"b^-1", {{{"d", 1}, {"a^-1", 0}}}},
                         {"c^-1", {{{"b^-1", 0}, {"1", 1}}}},    {"d^-1", {{{"1", 1}, {"d^-1", 0}}}}};
  CHECK(as_text(m, c.table) == expect);
  check_inverse_consistency(c.table);

  // vertex words a.c.b and a^-1.d
  const fg::Alphabet alpha = m.target_alphabet();
  CHECK(c.table.vertex_words[4] == VertexWord{OrientedEdge(0, false), OrientedEdge(2, false), OrientedEdge(1, false)});
  CHECK(c.table.vertex_words[1] == VertexWord{OrientedEdge(0, true), OrientedEdge(3, false)});

  CHECK(c.free.eliminated == std::vector<std::string>{"a"});
  const fg::Alphabet& basis = c.free.recursion.alphabet();
  CHECK(basis.names() == std::vector<std::string>{"b", "c", "d"});
  CHECK(c.free.gens.gens[0] == fg::parse_word("b^-1 c^-1", basis));
  CHECK(c.free.recursion.entry(0, kSheet0) == Transition{fg::parse_word("b^-1 c^-1", basis), kSheet1});
  CHECK(c.free.recursion.entry(1, kSheet0) == Transition{fg::parse_word("b", basis), kSheet0});
  CHECK(c.free.recursion.entry(2, kSheet1) == Transition{fg::Word{}, kSheet0});
  CHECK(evaluate(c.free.gens.vertex_words[4], c.free.gens.gens).is_identity());
}

TEST_CASE("capture at sqrt2: signatures, labels, table") {
  const RibbonTreeMap m = treemap("capture_sqrt2.json");
  const Compiled c = compile(m);
  for (const char* e : {"A", "B", "C"}) CHECK(sig(m, c.signatures, e) == std::array{0, 1});
  CHECK(label(m, c.labels, "A") == 0);
  CHECK(label(m, c.labels, "B") == 1);
  CHECK(label(m, c.labels, "C") == 1);

  const TextTable expect{{"a", {{{"a^-1", 1}, {"b", 0}}}},  {"b", {{{"1", 1}, {"c", 0}}}},
                         {"c", {{{"1", 1}, {"1", 0}}}},     {"a^-1", {{{"b^-1", 1}, {"a", 0}}}},
                         {"b^-1", {{{"c^-1", 1}, {"1", 0}}}}, {"c^-1", {{{"1", 1}, {"1", 0}}}}};
  CHECK(as_text(m, c.table) == expect);
  check_inverse_consistency(c.table);
  CHECK(c.free.eliminated.empty());
  CHECK(c.free.recursion.rank() == 3);
}

TEST_CASE("Chebyshev capture as a general tree pair") {
  const RibbonTreeMap m = treemap("chebyshev_capture_pair.json");
  const Compiled c = compile(m);
  CHECK(names(m.target, c.signatures.s0) == std::vector<std::string>{"A", "B"});
  CHECK(names(m.target, c.signatures.s1) == std::vector<std::string>{"C", "C^-1", "B^-1", "A^-1"});
  CHECK(sig(m, c.signatures, "C") == std::array{1, 1});
  for (const char* e : {"As", "Bs", "Cs"}) CHECK(label(m, c.labels, e) == 0);
  CHECK(label(m, c.labels, "Ds") == 1);

  // a* = b a^-1, b* = c a^-1, c* = a c^-1 a^-1, d* = a^-1
  const TextTable expect{{"a", {{{"b a^-1", 1}, {"1", 0}}}},     {"b", {{{"c a^-1", 1}, {"1", 0}}}},
                         {"c", {{{"a^-1", 0}, {"a c a^-1", 1}}}}, {"a^-1", {{{"1", 1}, {"a b^-1", 0}}}},
                         {"b^-1", {{{"1", 1}, {"a c^-1", 0}}}},  {"c^-1", {{{"a", 0}, {"a c^-1 a^-1", 1}}}}};
  CHECK(as_text(m, c.table) == expect);
  check_inverse_consistency(c.table);

  // agrees with the shipped biset document
  CHECK(c.free.recursion == testing::node("chebyshev_capture.json").recursion);
}

TEST_CASE("boundary circuit of a single edge") {
  RibbonTree t;
  t.vertices = {{"p", true, false, 1}, {"q", true, false, 2}};
  t.edges = {{"E", "e", 0, 1}};
  t.ribbon = {{OrientedEdge(0, false)}, {OrientedEdge(0, true)}};
  CHECK(names(t, boundary_circuit(t)) == std::vector<std::string>{"E", "E^-1"});
}

TEST_CASE("compiler rejects inconsistent data") {
  const std::string basilica = read_fixture("basilica.json");
  const std::string rabbit = read_fixture("rabbit.json");
  const std::string capture = read_fixture("capture_sqrt2.json");

  SUBCASE("missing base edge") {
    CHECK_THROWS_AS(doc::parse_treemap(replace(basilica, "\"base_edge\": \"B\",", "")), InputError);
  }
  SUBCASE("base edge off the critical arc") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(rabbit, "\"base_edge\": \"D\"", "\"base_edge\": \"C\""))),
                    InputError);
  }
  SUBCASE("missing labels when no edge maps over the base edge") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(capture, "\"labels\": {\"A\": 0, \"B\": 1, \"C\": 1},", ""))),
                    InputError);
  }
  SUBCASE("labels contradicting the critical split") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(capture, "\"B\": 1, \"C\": 1", "\"B\": 0, \"C\": 0"))),
                    InputError);
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(basilica, "\"pseudoaccess\": {},", "\"labels\": {\"A\": 0},"))),
                    InputError);
  }
  SUBCASE("pseudoaccess out of range") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(basilica, "\"pseudoaccess\": {}", "\"pseudoaccess\": {\"-1\": 3}"))),
                    InputError);
  }
  SUBCASE("critical point without a split") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(basilica, "\"critical_splits\": {\"0\": [0, 1]},", ""))),
                    InputError);
  }
  SUBCASE("edge image inconsistent with the vertex map") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(basilica, "\"A\": [\"A^-1\"]", "\"A\": [\"B\"]"))), InputError);
  }
  SUBCASE("broken ribbon") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(basilica, "\"0\": [\"B\", \"A^-1\"]", "\"0\": [\"B\", \"A\"]"))),
                    InputError);
  }
  SUBCASE("unmarked endpoint") {
    CHECK_THROWS_AS(compile(doc::parse_treemap(replace(
                        rabbit, "{\"name\": \"f_c\", \"marked\": true", "{\"name\": \"f_c\", \"marked\": false"))),
                    InputError);
  }
  SUBCASE("two edges of one label over the same edge") {
    RibbonTreeMap m = doc::parse_treemap(capture);
    const Compiled c = compile(m);
    m.edge_map[edge(m.target, "C").code()] = {edge(m.target, "A")};
    m.edge_map[edge(m.target, "C^-1").code()] = {edge(m.target, "A^-1")};
    CHECK_THROWS_AS(emit_table(m, c.signatures, c.labels), InputError);
  }
  SUBCASE("table inconsistent with the vertex relation") {
    RibbonTreeMap m = doc::parse_treemap(rabbit);
    Compiled c = compile(m);
    c.table.entries[edge(m.target, "A").code()][0].word = fg::Word{};
    c.table.entries[edge(m.target, "A^-1").code()][1].word = fg::Word{};
    CHECK_THROWS_AS(reduce_to_free_basis(m, c.table), InputError);
  }
  SUBCASE("unknown names") {
    CHECK_THROWS_AS(doc::parse_treemap(replace(basilica, "\"base_edge\": \"B\"", "\"base_edge\": \"Q\"")), InputError);
    CHECK_THROWS_AS(doc::parse_treemap(replace(basilica, "\"from\": \"-1\"", "\"from\": \"nowhere\"")), InputError);
    CHECK_THROWS_AS(doc::parse_treemap(replace(basilica, "ivy-treemap/1", "ivy-treemap/2")), InputError);
    CHECK_THROWS_AS(doc::parse_treemap("{not json"), InputError);
  }
}
