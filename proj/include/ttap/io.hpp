#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ttap/chain_graph.hpp"
#include "ttap/vdw.hpp"
#include "ttap/width4.hpp"

namespace ttap {

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    const std::size_t s = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(s, i - s), static_cast<int>(s) + 1});
  }
  return out;
}

inline int parse_int(const Token& t, int line, bool allow_negative = false) {
  if (t.text.empty()) throw ParseError(line, t.column, "expected a number");
  std::size_t i = 0;
  if (allow_negative && t.text[0] == '-') i = 1;
  if (i == t.text.size() || t.text.size() - i > 9) throw ParseError(line, t.column, "bad number '" + t.text + "'");
  for (std::size_t k = i; k < t.text.size(); ++k)
    if (t.text[k] < '0' || t.text[k] > '9') throw ParseError(line, t.column, "bad number '" + t.text + "'");
  return std::stoi(t.text);
}

// Reads the magic line and the "<h> <w>" line.
class FormatReader {
 public:
  FormatReader(std::istream& is, const std::string& magic) : is_(is) {
    std::string l;
    if (!next(l)) throw ParseError(1, 1, "empty input");
    const auto toks = tokenize(l);
    if (toks.size() != 2 || toks[0].text != magic) throw ParseError(line_, 1, "expected '" + magic + " 1'");
    if (toks[1].text != "1") throw ParseError(line_, toks[1].column, "unsupported version " + toks[1].text);
    if (!next(l)) throw ParseError(line_ + 1, 1, "missing size line");
    const auto dims = tokenize(l);
    if (dims.size() != 2) throw ParseError(line_, 1, "expected '<h> <w>'");
    height = parse_int(dims[0], line_);
    width = parse_int(dims[1], line_);
    if (height < 1 || width < 1) throw ParseError(line_, 1, "dimensions must be positive");
  }

  bool next(std::string& l) {
    if (!std::getline(is_, l)) return false;
    ++line_;
    return true;
  }
  std::string require_line(const char* what) {
    std::string l;
    if (!next(l)) throw ParseError(line_ + 1, 1, std::string("unexpected end of input: expected ") + what);
    return l;
  }
  // Trailing blank lines are fine; anything else is not.
  void expect_end() {
    std::string l;
    while (next(l))
      if (!tokenize(l).empty()) throw ParseError(line_, 1, "unexpected trailing content");
  }
  int line() const { return line_; }

  int height = 0, width = 0;

 private:
  std::istream& is_;
  int line_ = 0;
};

}  // namespace detail

// --- TTILING ---

inline void write_tiling(std::ostream& os, const Tiling& t) {
  os << "TTILING 1\n" << t.height() << ' ' << t.width() << '\n';
  for (int r = 0; r < t.height(); ++r) {
    for (int c = 0; c < t.width(); ++c) os << (c ? " " : "") << t.owner({r, c});
    os << '\n';
  }
}

inline std::string write_tiling(const Tiling& t) {
  std::ostringstream os;
  write_tiling(os, t);
  return os.str();
}

// Regions of equal id that are not T shapes raise InvalidTiling with a
// BAD_SHAPE violation; syntax problems and non-canonical ids raise ParseError.
inline Tiling read_tiling(std::istream& is) {
  detail::FormatReader in(is, "TTILING");
  const int h = in.height, w = in.width;
  std::vector<int> ids(static_cast<std::size_t>(h * w));
  std::vector<std::pair<int, int>> where(ids.size());  // line, column of each cell
  for (int r = 0; r < h; ++r) {
    const std::string l = in.require_line("grid row");
    const auto toks = detail::tokenize(l);
    if (static_cast<int>(toks.size()) != w)
      throw ParseError(in.line(), 1, "expected " + std::to_string(w) + " ids, got " + std::to_string(toks.size()));
    for (int c = 0; c < w; ++c) {
      const auto k = static_cast<std::size_t>(r * w + c);
      ids[k] = detail::parse_int(toks[static_cast<std::size_t>(c)], in.line());
      where[k] = {in.line(), toks[static_cast<std::size_t>(c)].column};
    }
  }
  in.expect_end();

  std::map<int, std::vector<Cell>> regions;
  std::vector<int> first_seen;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      auto& reg = regions[ids[static_cast<std::size_t>(r * w + c)]];
      if (reg.empty()) first_seen.push_back(ids[static_cast<std::size_t>(r * w + c)]);
      reg.push_back({r, c});
    }
  ValidityReport rep;
  std::vector<Tile> tiles;
  for (int id : first_seen) {
    const auto& cells = regions[id];
    std::optional<Tile> t;
    if (cells.size() == 4) t = recognize_tile({cells[0], cells[1], cells[2], cells[3]});
    if (!t)
      rep.violations.push_back({ViolationKind::BadShape, cells.front(), id});
    else
      tiles.push_back(*t);
  }
  if (!rep.ok()) throw InvalidTiling(std::move(rep));
  for (std::size_t i = 0; i < first_seen.size(); ++i)
    if (first_seen[i] != static_cast<int>(i)) {
      const Cell c = regions[first_seen[i]].front();
      const auto [ln, col] = where[static_cast<std::size_t>(c.row * w + c.col)];
      throw ParseError(ln, col, "tile ids must be 0.." + std::to_string(first_seen.size() - 1) +
                                    " in row-major order of first appearance");
    }
  return Tiling({h, w}, std::move(tiles));
}

inline Tiling read_tiling(const std::string& text) {
  std::istringstream is(text);
  return read_tiling(is);
}

// --- TCOLOR (A = 0, B = 1) ---

inline void write_coloring(std::ostream& os, const GridColoring& g) {
  os << "TCOLOR 1\n" << g.height << ' ' << g.width << '\n';
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) os << (g.at({r, c}) ? 'B' : 'A');
    os << '\n';
  }
}

inline std::string write_coloring(const GridColoring& g) {
  std::ostringstream os;
  write_coloring(os, g);
  return os.str();
}

inline GridColoring read_coloring(std::istream& is) {
  detail::FormatReader in(is, "TCOLOR");
  GridColoring g(in.height, in.width);
  for (int r = 0; r < in.height; ++r) {
    std::string l = in.require_line("colour row");
    if (!l.empty() && l.back() == '\r') l.pop_back();
    if (static_cast<int>(l.size()) != in.width)
      throw ParseError(in.line(), 1, "expected " + std::to_string(in.width) + " colours");
    for (int c = 0; c < in.width; ++c) {
      const char x = l[static_cast<std::size_t>(c)];
      if (x != 'A' && x != 'B') throw ParseError(in.line(), c + 1, std::string("bad colour '") + x + "'");
      g.set({r, c}, x == 'B');
    }
  }
  in.expect_end();
  return g;
}

inline GridColoring read_coloring(const std::string& text) {
  std::istringstream is(text);
  return read_coloring(is);
}

inline GridColoring to_grid(const TwoColoring& c) {
  std::vector<std::uint8_t> v;
  for (char x : c.colors) v.push_back(x == 'B');
  const int n = static_cast<int>(v.size());  // read before v is moved from
  return GridColoring(1, n, std::move(v));
}

inline TwoColoring to_two_coloring(const GridColoring& g) {
  if (g.height != 1) throw PreconditionError("to_two_coloring: colouring must have one row");
  std::string s;
  for (auto x : g.colors) s += x ? 'B' : 'A';
  return TwoColoring(s);
}

// --- CHAIN (rect dimensions in cells; edges as block indices) ---

inline void write_chain(std::ostream& os, const ChainGraph& g) {
  os << "CHAIN 1\n" << g.rect.height << ' ' << g.rect.width << '\n';
  for (const auto& e : g.edges)
    os << e.from.row << ' ' << e.from.col << ' ' << e.to.row << ' ' << e.to.col << '\n';
}

inline std::string write_chain(const ChainGraph& g) {
  std::ostringstream os;
  write_chain(os, g);
  return os.str();
}

inline ChainGraph read_chain(std::istream& is) {
  detail::FormatReader in(is, "CHAIN");
  ChainGraph g{{in.height, in.width}, {}};
  const int bh = in.height / 2, bw = in.width / 2;
  std::string l;
  while (in.next(l)) {
    const auto toks = detail::tokenize(l);
    if (toks.empty()) continue;
    if (toks.size() != 4) throw ParseError(in.line(), 1, "expected 'r1 c1 r2 c2'");
    int v[4];
    for (std::size_t i = 0; i < 4; ++i) {
      v[i] = detail::parse_int(toks[i], in.line());
      if (v[i] >= (i % 2 ? bw : bh)) throw ParseError(in.line(), toks[i].column, "block index out of range");
    }
    const ChainEdge e{{v[0], v[1]}, {v[2], v[3]}};
    if (std::abs(v[0] - v[2]) + std::abs(v[1] - v[3]) != 1)
      throw ParseError(in.line(), 1, "edge endpoints are not adjacent blocks");
    if (!g.edges.empty() && !(g.edges.back() < e))
      throw ParseError(in.line(), 1, "edges must be strictly sorted");
    g.edges.push_back(e);
  }
  return g;
}

inline ChainGraph read_chain(const std::string& text) {
  std::istringstream is(text);
  return read_chain(is);
}

}  // namespace ttap
