#pragma once

#include <string>
#include <string_view>

#include "ivy/compiler.hpp"
#include "ivy/engine.hpp"

namespace ivy::doc {

inline constexpr std::string_view kTreemapFormat = "ivy-treemap/1";
inline constexpr std::string_view kBisetFormat = "ivy-biset/1";
inline constexpr std::string_view kReportFormat = "ivy-report/1";

/// Value of the top-level "format" field, or "" when absent.
std::string document_format(std::string_view text);

/// Parses an ivy-treemap/1 document. Throws InputError naming the field.
compiler::RibbonTreeMap parse_treemap(std::string_view text);

/// Parses an ivy-biset/1 document into a validated node.
IvyNode parse_biset(std::string_view text);

/// Serializes a node as an ivy-biset/1 document.
std::string write_biset(const IvyNode& node);

/// Start node from either document kind (a treemap is compiled first).
IvyNode load_node(std::string_view text);

std::string write_report(const IvyGraph& g, const ExploreReport& r);
std::string write_dot(const IvyGraph& g, const ExploreReport& r);

/// Key words in the node's alphabet, e.g. ["1", "a", "a^-1"].
std::string format_key(const fg::WordSet& key, const fg::Alphabet& alphabet);

}  // namespace ivy::doc
