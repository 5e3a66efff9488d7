#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "ttap/ap.hpp"
#include "ttap/chain_graph.hpp"
#include "ttap/vdw.hpp"

namespace ttap {

enum class RenderFormat { Ascii, Svg };

struct RenderOptions {
  RenderFormat format = RenderFormat::Ascii;
  int cell_size = 20;  // px, svg only
  std::array<std::string, 4> palette = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3"};  // U D L R
  std::vector<APWitness> highlight;
  bool boundaries = false;  // ascii only: draw tile borders
};

namespace detail {

inline void check_render_options(const RenderOptions& o) {
  if (o.cell_size <= 0) throw PreconditionError("render: cell size must be positive");
  for (const auto& c : o.palette)
    if (c.empty()) throw PreconditionError("render: palette entry is empty");
}

inline std::string render_ascii(const Tiling& t, const RenderOptions& o) {
  std::string out;
  if (!o.boundaries) {
    for (int r = 0; r < t.height(); ++r) {
      for (int c = 0; c < t.width(); ++c) out += orientation_lower(t.tile_at({r, c}).orientation);
      out += '\n';
    }
    return out;
  }
  // Letters at odd positions of a (2h+1) x (2w+1) character grid; walls
  // between cells of different tiles.
  auto differ = [&](Cell a, Cell b) {
    const bool ia = t.rect().contains(a), ib = t.rect().contains(b);
    if (ia != ib) return true;
    return ia && t.owner(a) != t.owner(b);
  };
  for (int gr = 0; gr <= 2 * t.height(); ++gr) {
    for (int gc = 0; gc <= 2 * t.width(); ++gc) {
      const int r = gr / 2, c = gc / 2;
      char ch = ' ';
      if (gr % 2 && gc % 2) {
        ch = orientation_lower(t.tile_at({r, c}).orientation);
      } else if (gr % 2) {
        if (differ({r, c - 1}, {r, c})) ch = '|';
      } else if (gc % 2) {
        if (differ({r - 1, c}, {r, c})) ch = '-';
      } else {
        const bool any = differ({r - 1, c - 1}, {r - 1, c}) || differ({r, c - 1}, {r, c}) ||
                         differ({r - 1, c - 1}, {r, c - 1}) || differ({r - 1, c}, {r, c});
        if (any) ch = '+';
      }
      out += ch;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

// Outline of a set of cells as SVG path segments along boundary edges.
inline std::string outline_path(const std::vector<Cell>& cells, int s) {
  auto in = [&](Cell c) { return std::find(cells.begin(), cells.end(), c) != cells.end(); };
  std::ostringstream d;
  for (Cell c : cells) {
    const int x = c.col * s, y = c.row * s;
    if (!in(c + Cell{-1, 0})) d << 'M' << x << ' ' << y << 'h' << s;
    if (!in(c + Cell{1, 0})) d << 'M' << x << ' ' << y + s << 'h' << s;
    if (!in(c + Cell{0, -1})) d << 'M' << x << ' ' << y << 'v' << s;
    if (!in(c + Cell{0, 1})) d << 'M' << x + s << ' ' << y << 'v' << s;
  }
  return d.str();
}

inline std::string render_svg(const Tiling& t, const RenderOptions& o) {
  const int s = o.cell_size;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << t.width() * s << "\" height=\""
     << t.height() * s << "\" viewBox=\"0 0 " << t.width() * s << ' ' << t.height() * s << "\">\n";
  os << "<g class=\"cells\" stroke=\"none\">\n";
  for (int r = 0; r < t.height(); ++r)
    for (int c = 0; c < t.width(); ++c)
      os << "<rect class=\"cell\" x=\"" << c * s << "\" y=\"" << r * s << "\" width=\"" << s << "\" height=\"" << s
         << "\" fill=\"" << o.palette[static_cast<std::size_t>(t.tile_at({r, c}).orientation)] << "\"/>\n";
  os << "</g>\n<g class=\"tiles\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << std::max(1, s / 10)
     << "\">\n";
  for (const Tile& x : t.tiles()) {
    const auto cells = tile_cells(x);
    os << "<path class=\"tile\" d=\"" << outline_path({cells.begin(), cells.end()}, s) << "\"/>\n";
  }
  os << "</g>\n";
  if (!o.highlight.empty()) {
    os << "<g class=\"highlight\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << std::max(3, s / 4)
       << "\">\n";
    for (const auto& ap : o.highlight)
      for (int i = 0; i < ap.length; ++i) {
        const Tile x = ap.term(i);
        if (!t.contains(x)) throw PreconditionError("render: highlighted AP term is not in the tiling");
        const auto cells = tile_cells(x);
        os << "<path class=\"ap\" d=\"" << outline_path({cells.begin(), cells.end()}, s) << "\"/>\n";
      }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace detail

inline std::string render(const Tiling& t, const RenderOptions& o = {}) {
  detail::check_render_options(o);
  return o.format == RenderFormat::Ascii ? detail::render_ascii(t, o) : detail::render_svg(t, o);
}

inline std::string render(const GridColoring& g, const RenderOptions& o = {}) {
  detail::check_render_options(o);
  std::ostringstream os;
  if (o.format == RenderFormat::Ascii) {
    for (int r = 0; r < g.height; ++r) {
      for (int c = 0; c < g.width; ++c) os << (g.at({r, c}) ? 'B' : 'A');
      os << '\n';
    }
    return os.str();
  }
  const int s = o.cell_size;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.width * s << "\" height=\"" << g.height * s
     << "\">\n";
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c)
      os << "<rect class=\"cell\" x=\"" << c * s << "\" y=\"" << r * s << "\" width=\"" << s << "\" height=\"" << s
         << "\" fill=\"" << (g.at({r, c}) ? "#000000" : "#ffffff") << "\" stroke=\"#808080\"/>\n";
  os << "</svg>\n";
  return os.str();
}

// Arrows drawn between block centres: '>' '<' 'v' '^' between 'o' vertices.
inline std::string render(const ChainGraph& g, const RenderOptions& o = {}) {
  detail::check_render_options(o);
  if (o.format != RenderFormat::Ascii) throw PreconditionError("render: chain graphs render as ascii only");
  const int bh = g.rect.height / 2, bw = g.rect.width / 2;
  std::vector<std::string> canvas(static_cast<std::size_t>(2 * bh - 1), std::string(static_cast<std::size_t>(2 * bw - 1), ' '));
  for (int r = 0; r < bh; ++r)
    for (int c = 0; c < bw; ++c) canvas[static_cast<std::size_t>(2 * r)][static_cast<std::size_t>(2 * c)] = 'o';
  for (const auto& e : g.edges) {
    const Cell d = e.to - e.from;
    const char ch = d.row ? (d.row > 0 ? 'v' : '^') : (d.col > 0 ? '>' : '<');
    canvas[static_cast<std::size_t>(e.from.row + e.to.row)][static_cast<std::size_t>(e.from.col + e.to.col)] = ch;
  }
  std::string out;
  for (auto& line : canvas) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

}  // namespace ttap
