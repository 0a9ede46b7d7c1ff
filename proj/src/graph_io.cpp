#include "cfl/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cfl {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader: return "malformed header";
    case ParseErrorKind::kMalformedLine: return "malformed edge line";
    case ParseErrorKind::kVertexOutOfRange: return "vertex index out of range";
    case ParseErrorKind::kDuplicateEdge: return "duplicate edge";
    case ParseErrorKind::kLoop: return "loop";
    case ParseErrorKind::kEdgeCountMismatch: return "edge count mismatch";
    case ParseErrorKind::kMalformedGraph6: return "malformed graph6";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t offset, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at line " + std::to_string(line) + ", byte " +
                         std::to_string(offset) + (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      line_(line),
      offset_(offset) {}

namespace {

struct Line {
  std::string_view text;
  std::size_t offset;
  std::size_t number;
};

// Splits "a b" with exactly one space into two non-negative decimals.
bool split_pair(std::string_view s, std::int64_t& a, std::int64_t& b) {
  auto space = s.find(' ');
  if (space == std::string_view::npos || space == 0 || space + 1 >= s.size()) return false;
  auto parse = [](std::string_view t, std::int64_t& out) {
    if (t.empty() || t.front() == '-' || t.front() == '+') return false;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && p == t.data() + t.size();
  };
  return parse(s.substr(0, space), a) && parse(s.substr(space + 1), b);
}

}  // namespace

Graph parse_edge_list(std::string_view payload) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  std::size_t number = 1;
  while (pos < payload.size()) {
    std::size_t end = payload.find('\n', pos);
    if (end == std::string_view::npos) end = payload.size();
    lines.push_back({payload.substr(pos, end - pos), pos, number++});
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError(ParseErrorKind::kMalformedHeader, 1, 0, "empty payload");

  std::int64_t n = 0;
  std::int64_t m = 0;
  if (!split_pair(lines[0].text, n, m) || n > (1 << 24)) {
    throw ParseError(ParseErrorKind::kMalformedHeader, 1, 0, "expected \"n m\"");
  }
  if (static_cast<std::int64_t>(lines.size()) - 1 != m) {
    std::size_t at = lines.size() < 2 ? payload.size() : lines.back().offset;
    throw ParseError(ParseErrorKind::kEdgeCountMismatch, lines.size(), at,
                     "header announces " + std::to_string(m) + " edges, found " + std::to_string(lines.size() - 1));
  }

  GraphBuilder builder(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (!split_pair(ln.text, u, v)) throw ParseError(ParseErrorKind::kMalformedLine, ln.number, ln.offset, "expected \"u v\"");
    if (u >= n || v >= n) {
      throw ParseError(ParseErrorKind::kVertexOutOfRange, ln.number, ln.offset,
                       "vertex " + std::to_string(std::max(u, v)) + " >= n=" + std::to_string(n));
    }
    if (u == v) throw ParseError(ParseErrorKind::kLoop, ln.number, ln.offset, "at vertex " + std::to_string(u));
    if (!builder.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
      throw ParseError(ParseErrorKind::kDuplicateEdge, ln.number, ln.offset,
                       std::to_string(u) + " " + std::to_string(v));
    }
  }
  return std::move(builder).build();
}

std::string serialize_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

Graph parse_graph6(std::string_view payload) {
  if (!payload.empty() && payload.back() == '\n') payload.remove_suffix(1);
  if (payload.starts_with(">>graph6<<")) payload.remove_prefix(10);
  auto bad = [](std::size_t offset, const std::string& what) {
    return ParseError(ParseErrorKind::kMalformedGraph6, 1, offset, what);
  };
  for (std::size_t i = 0; i < payload.size(); ++i) {
    if (payload[i] < 63 || payload[i] > 126) throw bad(i, "byte outside printable range 63..126");
  }
  if (payload.empty()) throw bad(0, "empty payload");

  std::size_t pos = 0;
  std::int64_t n = 0;
  auto read6 = [&](int count) {
    std::int64_t v = 0;
    for (int i = 0; i < count; ++i) {
      if (pos >= payload.size()) throw bad(pos, "truncated size field");
      v = (v << 6) | (payload[pos++] - 63);
    }
    return v;
  };
  if (payload[0] != 126) {
    n = read6(1);
  } else if (payload.size() > 1 && payload[1] != 126) {
    pos = 1;
    n = read6(3);
  } else {
    pos = 2;
    n = read6(6);
  }
  if (n > (1 << 24)) throw bad(0, "vertex count too large");

  std::int64_t bits = n * (n - 1) / 2;
  std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
  if (payload.size() - pos != need) {
    throw bad(pos, "expected " + std::to_string(need) + " data bytes, found " + std::to_string(payload.size() - pos));
  }
  GraphBuilder builder(static_cast<int>(n));
  std::int64_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      int byte = payload[pos + static_cast<std::size_t>(k / 6)] - 63;
      if ((byte >> (5 - k % 6)) & 1) builder.add_edge(i, j);
    }
  }
  if (k % 6 != 0) {
    int byte = payload[pos + static_cast<std::size_t>(k / 6)] - 63;
    if (byte & ((1 << (6 - k % 6)) - 1)) throw bad(pos + static_cast<std::size_t>(k / 6), "nonzero padding bits");
  }
  return std::move(builder).build();
}

std::string serialize_graph6(const Graph& g) {
  std::string out;
  const std::int64_t n = g.order();
  auto put6 = [&](std::int64_t v, int count) {
    for (int i = count - 1; i >= 0; --i) out += static_cast<char>(((v >> (6 * i)) & 63) + 63);
  };
  if (n < 63) {
    put6(n, 1);
  } else if (n <= 258047) {
    out += '~';
    put6(n, 3);
  } else {
    out += "~~";
    put6(n, 6);
  }
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out += static_cast<char>(acc + 63);
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out += static_cast<char>((acc << (6 - filled)) + 63);
  out += '\n';
  return out;
}

Graph parse_graph(std::string_view payload, GraphFormat format) {
  return format == GraphFormat::kGraph6 ? parse_graph6(payload) : parse_edge_list(payload);
}

std::string serialize_graph(const Graph& g, GraphFormat format) {
  return format == GraphFormat::kGraph6 ? serialize_graph6(g) : serialize_edge_list(g);
}

GraphFormat format_for_path(std::string_view path) {
  return path.ends_with(".g6") ? GraphFormat::kGraph6 : GraphFormat::kEdgeList;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str(), format_for_path(path));
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file '" + path + "'");
  out << serialize_graph(g, format_for_path(path));
}

}  // namespace cfl
