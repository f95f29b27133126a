#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "physarum/graph.hpp"

namespace physarum {

/// Edge-list text format, one-based ids:
///
///   # optional comment lines
///   p sp <n> <m> <source> <sink>
///   <u> <v> <w>        (m lines)
///
/// Blank lines are ignored. Throws ParseError (with line number) for
/// malformed text and the Graph::build errors for invalid content.
Graph parse_edge_list(std::string_view text);

/// Canonical edge-list text: header, then edges in (u, v) order with u < v and
/// weights in shortest round-trip form. parse_edge_list(format_edge_list(g)) == g.
std::string format_edge_list(const Graph& g);

struct TntpOptions {
  /// Column used as edge length: a column name (capacity, length,
  /// free_flow_time / fft, b, power, speed, toll, type) or a zero-based
  /// index into the link row.
  std::string weight_column = "length";
  /// One-based terminal overrides. Defaults: node 1 and node <NUMBER OF NODES>.
  std::optional<std::size_t> source;
  std::optional<std::size_t> sink;
};

struct TntpNetwork {
  Graph graph;
  std::size_t declared_nodes = 0;
  std::size_t declared_links = 0;
  /// Directed link rows read from the table.
  std::size_t link_rows = 0;
  std::size_t first_thru_node = 1;
};

/// TransportationNetworks ".tntp" network file. Directed link pairs collapse to
/// one undirected edge carrying the smaller weight. Throws ParseError, and
/// MetadataMismatch when the declared node or link counts disagree with the
/// table.
TntpNetwork parse_tntp(std::string_view text, const TntpOptions& options = {});

/// Shortest decimal form of `value` that reads back to the same double.
std::string format_number(double value);

/// Whole file as a string. Throws IoError naming the path.
std::string read_file(const std::string& path);

/// Writes `content` to `path` through a sibling temporary file and a rename, so
/// a failed write never leaves a partial file. Throws IoError naming the path.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace physarum
