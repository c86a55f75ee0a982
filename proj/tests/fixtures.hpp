#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "ivy/documents.hpp"

namespace ivy::testing {

inline std::string fixture_path(const std::string& name) { return std::string(IVY_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline compiler::RibbonTreeMap treemap(const std::string& name) { return doc::parse_treemap(read_fixture(name)); }

inline IvyNode node(const std::string& name) { return doc::load_node(read_fixture(name)); }

}  // namespace ivy::testing
