#include "ivy/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivy/documents.hpp"

namespace ivy::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

fg::Letter resolve_base(const IvyNode& n, const std::string& token) {
  std::string name = token;
  bool inv = false;
  if (name.ends_with("^-1")) {
    name.resize(name.size() - 3);
    inv = true;
  }
  for (std::size_t i = 0; i < n.gens.names.size(); ++i)
    if (n.gens.names[i] == name) return fg::Letter(static_cast<int>(i), inv);
  throw InputError("unknown generator '" + token + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ivy iteration for quadratic Thurston maps", "ivy"};
  app.require_subcommand(1);

  std::string input, output, format = "json", base;
  ExploreConfig cfg;

  auto* compile = app.add_subcommand("compile", "compile a tree map into a biset document");
  compile->add_option("input", input, "ivy-treemap/1 document")->required();
  compile->add_option("-o,--output", output, "output path (default stdout)");

  auto* explore = app.add_subcommand("explore", "explore the ivy graph from a biset or tree map");
  explore->add_option("input", input, "ivy-biset/1 or ivy-treemap/1 document")->required();
  explore->add_option("-o,--output", output, "output path (default stdout)");
  explore->add_option("--max-nodes", cfg.max_nodes, "node budget")->check(CLI::PositiveNumber);
  explore->add_option("--max-word-len", cfg.max_word_length, "generator length budget")->check(CLI::PositiveNumber);
  explore->add_option("--max-cycle-len", cfg.max_cycle_length, "longest cycle to enumerate")->check(CLI::PositiveNumber);
  explore->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  explore->add_option("--threads", cfg.threads, "worker threads, 0 for all cores");

  auto* step = app.add_subcommand("step", "apply one pullback along a base element");
  step->add_option("input", input, "ivy-biset/1 or ivy-treemap/1 document")->required();
  step->add_option("--base", base, "generator name, optionally with ^-1")->required();
  step->add_option("-o,--output", output, "output path (default stdout)");

  auto* canon = app.add_subcommand("canon", "print the canonical key of a node");
  canon->add_option("input", input, "ivy-biset/1 or ivy-treemap/1 document")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const std::string text = read_file(input);
    if (*compile) {
      if (doc::document_format(text) != doc::kTreemapFormat)
        throw InputError("field 'format' must be '" + std::string(doc::kTreemapFormat) + "'");
      compiler::Compiled c = compiler::compile(doc::parse_treemap(text));
      emit(doc::write_biset(make_node(std::move(c.free.gens), std::move(c.free.recursion))), output, out);
      return kExitOk;
    }
    const IvyNode node = doc::load_node(text);
    if (*explore) {
      auto [graph, report] = ivy::explore(node, cfg);
      emit(format == "dot" ? doc::write_dot(graph, report) : doc::write_report(graph, report), output, out);
      if (!output.empty() && output != "-")
        out << report.node_count << " nodes, " << report.edge_count << " edges, " << report.self_loops.size()
            << " invariant, closure " << (report.closure_complete ? "complete" : "incomplete") << "\n";
      return report.closure_complete ? kExitOk : kExitBudget;
    }
    if (*step) {
      emit(doc::write_biset(pullback_step(node, resolve_base(node, base))), output, out);
      return kExitOk;
    }
    if (*canon) {
      const fg::CanonicalForm cf = fg::canonical_form(generating_set(node.gens));
      const fg::Alphabet& alpha = node.recursion.alphabet();
      nlohmann::ordered_json j;
      j["key"] = nlohmann::ordered_json::array();
      for (const auto& w : cf.canonical.words()) j["key"].push_back(fg::format_word(w, alpha));
      j["witness"] = fg::format_word(cf.witness, alpha);
      out << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "ivy: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConsistencyError& e) {
    err << "ivy: inconsistent data: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace ivy::cli
