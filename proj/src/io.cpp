#include "physarum/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>
#include <vector>

#include "physarum/error.hpp"

namespace physarum {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Calls fn(line_number, line) for every line, one-based numbering.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    fn(line_no, text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_real(std::string_view tok, std::size_t line, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

NodeId to_node(std::size_t one_based, std::size_t node_count, std::size_t line) {
  if (one_based == 0 || one_based > node_count) {
    throw ParseError(line, "node id " + std::to_string(one_based) + " outside 1.." +
                               std::to_string(node_count));
  }
  return static_cast<NodeId>(one_based - 1);
}

// Position of a named column within a link row (after init and term node).
std::size_t tntp_column(const std::string& name) {
  static const std::map<std::string, std::size_t, std::less<>> kNames = {
      {"capacity", 2}, {"length", 3}, {"free_flow_time", 4}, {"fft", 4}, {"b", 5},
      {"power", 6},    {"speed", 7},  {"speed_limit", 7},    {"toll", 8}, {"type", 9},
      {"link_type", 9}};
  if (const auto it = kNames.find(name); it != kNames.end()) return it->second;
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  if (ec != std::errc{} || ptr != name.data() + name.size() || index < 2) {
    throw ParseError(0, "unknown TNTP weight column '" + name + "'");
  }
  return index;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

Graph parse_edge_list(std::string_view text) {
  std::optional<std::array<std::size_t, 4>> header;  // n, m, source, sink
  std::vector<Edge> edges;
  std::size_t last_line = 0;

  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    last_line = line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto tok = split_ws(line);
    if (!header) {
      if (tok.size() != 6 || tok[0] != "p" || tok[1] != "sp") {
        throw ParseError(line_no, "expected header 'p sp <n> <m> <source> <sink>'");
      }
      header = std::array{parse_count(tok[2], line_no, "node count"),
                          parse_count(tok[3], line_no, "edge count"),
                          parse_count(tok[4], line_no, "source id"),
                          parse_count(tok[5], line_no, "sink id")};
      edges.reserve((*header)[1]);
      return;
    }
    if (tok.size() != 3) throw ParseError(line_no, "expected '<u> <v> <w>'");
    if (edges.size() == (*header)[1]) {
      throw ParseError(line_no, "more edge lines than the declared " + std::to_string(edges.size()));
    }
    const std::size_t n = (*header)[0];
    edges.push_back({to_node(parse_count(tok[0], line_no, "node id"), n, line_no),
                     to_node(parse_count(tok[1], line_no, "node id"), n, line_no),
                     parse_real(tok[2], line_no, "edge weight")});
  });

  if (!header) throw ParseError(last_line, "missing 'p sp' header");
  const auto [n, m, source, sink] = *header;
  if (edges.size() != m) {
    throw ParseError(last_line, "declared " + std::to_string(m) + " edges, found " +
                                    std::to_string(edges.size()));
  }
  if (source == 0 || sink == 0 || source > n || sink > n) {
    throw InvalidTerminal("terminal outside 1.." + std::to_string(n));
  }
  return Graph::build(n, std::move(edges), static_cast<NodeId>(source - 1),
                      static_cast<NodeId>(sink - 1));
}

std::string format_edge_list(const Graph& g) {
  std::string out = "p sp " + std::to_string(g.node_count()) + " " +
                    std::to_string(g.edge_count()) + " " + std::to_string(g.source() + 1) + " " +
                    std::to_string(g.sink() + 1) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u + 1);
    out += ' ';
    out += std::to_string(e.v + 1);
    out += ' ';
    out += format_number(e.weight);
    out += '\n';
  }
  return out;
}

TntpNetwork parse_tntp(std::string_view text, const TntpOptions& options) {
  const std::size_t column = tntp_column(options.weight_column);
  std::map<std::string, std::string, std::less<>> meta;
  bool in_table = false;
  std::size_t rows = 0;
  std::size_t last_line = 0;
  std::map<std::pair<std::size_t, std::size_t>, double> undirected;
  std::set<std::size_t> ids;

  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    last_line = line_no;
    auto line = trim(raw);
    if (line.empty()) return;
    if (!in_table) {
      if (line.front() == '~') {
        in_table = true;  // header row without an explicit end tag
        return;
      }
      if (line.front() != '<') throw ParseError(line_no, "expected a <TAG> metadata line");
      const auto close = line.find('>');
      if (close == std::string_view::npos) throw ParseError(line_no, "unterminated metadata tag");
      const auto tag = line.substr(1, close - 1);
      if (tag == "END OF METADATA") {
        in_table = true;
        return;
      }
      meta.emplace(std::string(tag), std::string(trim(line.substr(close + 1))));
      return;
    }
    if (line.front() == '~') return;
    if (line.back() == ';') line = trim(line.substr(0, line.size() - 1));
    const auto tok = split_ws(line);
    if (tok.size() <= column) {
      throw ParseError(line_no, "link row has " + std::to_string(tok.size()) +
                                    " fields, weight column is " + std::to_string(column));
    }
    const auto a = parse_count(tok[0], line_no, "init node");
    const auto b = parse_count(tok[1], line_no, "term node");
    const double w = parse_real(tok[column], line_no, "link weight");
    if (a == b) throw ParseError(line_no, "self-loop link at node " + std::to_string(a));
    ++rows;
    ids.insert(a);
    ids.insert(b);
    const auto key = std::minmax(a, b);
    const auto [it, fresh] = undirected.emplace(key, w);
    if (!fresh) it->second = std::min(it->second, w);
  });

  auto required = [&](const char* tag) {
    const auto it = meta.find(tag);
    if (it == meta.end()) throw ParseError(last_line, std::string("missing <") + tag + ">");
    return parse_count(it->second, 0, tag);
  };
  const std::size_t declared_nodes = required("NUMBER OF NODES");
  const std::size_t declared_links = required("NUMBER OF LINKS");
  const std::size_t first_thru_node = required("FIRST THRU NODE");

  if (rows != declared_links) {
    throw MetadataMismatch("declared " + std::to_string(declared_links) + " links, table has " +
                           std::to_string(rows));
  }
  if (ids.size() != declared_nodes || (!ids.empty() && *ids.rbegin() > declared_nodes) ||
      (!ids.empty() && *ids.begin() == 0)) {
    throw MetadataMismatch("declared " + std::to_string(declared_nodes) +
                           " nodes, links reference " + std::to_string(ids.size()) +
                           " distinct ids");
  }

  std::vector<Edge> edges;
  edges.reserve(undirected.size());
  for (const auto& [key, w] : undirected) {
    edges.push_back({static_cast<NodeId>(key.first - 1), static_cast<NodeId>(key.second - 1), w});
  }
  const std::size_t source = options.source.value_or(1);
  const std::size_t sink = options.sink.value_or(declared_nodes);
  if (source == 0 || sink == 0 || source > declared_nodes || sink > declared_nodes) {
    throw InvalidTerminal("terminal outside 1.." + std::to_string(declared_nodes));
  }
  return TntpNetwork{Graph::build(declared_nodes, std::move(edges), static_cast<NodeId>(source - 1),
                                  static_cast<NodeId>(sink - 1)),
                     declared_nodes, declared_links, rows, first_thru_node};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw IoError("error writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw IoError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
  }
}

}  // namespace physarum
