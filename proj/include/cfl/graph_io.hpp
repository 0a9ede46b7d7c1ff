#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cfl/graph.hpp"

namespace cfl {

enum class ParseErrorKind {
  kMalformedHeader,
  kMalformedLine,
  kVertexOutOfRange,
  kDuplicateEdge,
  kLoop,
  kEdgeCountMismatch,
  kMalformedGraph6,
};

const char* to_string(ParseErrorKind kind);

/// Carries the 1-based line number and the 0-based byte offset of the
/// offending token in the payload.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t offset, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t offset_;
};

enum class GraphFormat { kEdgeList, kGraph6 };

// Edge list: "n m\n" followed by m lines "u v\n" with 0 <= u < v < n.
Graph parse_edge_list(std::string_view payload);
std::string serialize_edge_list(const Graph& g);

// graph6: a single graph on one line; a trailing '\n' is accepted.
Graph parse_graph6(std::string_view payload);
std::string serialize_graph6(const Graph& g);

Graph parse_graph(std::string_view payload, GraphFormat format);
std::string serialize_graph(const Graph& g, GraphFormat format);

/// ".g6" selects graph6; anything else is an edge list.
GraphFormat format_for_path(std::string_view path);
Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace cfl
