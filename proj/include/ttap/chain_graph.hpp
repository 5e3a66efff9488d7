#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ttap/ap.hpp"

namespace ttap {

// Chain graphs live on the lattice of 2x2 cell blocks; block (i, j) covers
// cells rows 2i..2i+1, cols 2j..2j+1. Antiblock (a, b) is the 2x2 box of block
// centres around grid point (2a, 2b). Interior antiblocks have
// 1 <= a < h/2 and 1 <= b < w/2; the half-boxes on the border carry the same
// checkerboard colouring so that every chain edge sits between one gray and
// one white box.

using Block = Cell;

struct ChainEdge {
  Block from;  // majority block
  Block to;    // minority block
  friend auto operator<=>(const ChainEdge&, const ChainEdge&) = default;
};

struct ChainGraph {
  Rect rect;
  std::vector<ChainEdge> edges;  // sorted lexicographically
  friend bool operator==(const ChainGraph&, const ChainGraph&) = default;
  friend bool operator<(const ChainGraph& a, const ChainGraph& b) { return a.edges < b.edges; }
};

enum class Shade : std::uint8_t { Left = 0, Right = 1 };

struct ShadedArrow {
  ChainEdge edge;
  Shade side = Shade::Left;  // side of the gray antiblock, walking along the arrow
  friend auto operator<=>(const ShadedArrow&, const ShadedArrow&) = default;
};

struct Antiblock {
  Cell index;  // (a, b); centre is grid point (2a, 2b)
  bool gray = false;
};

// Gray antiblocks are those with a + b even, i.e. centred on cut points
// (0,0 mod 4) and cornerless points (2,2 mod 4). Calibrated against the
// exhaustive tiling enumerator; see tests/chain_graph_test.cpp.
inline constexpr int kGrayParity = 0;

inline bool antiblock_gray(Cell index, int gray_parity = kGrayParity) {
  return ((index.row + index.col) % 2 + 2) % 2 == gray_parity;
}

namespace detail {

inline void require_walkup(const Rect& r, const char* op) {
  if (r.height % 4 != 0 || r.width % 4 != 0 || r.height < 4 || r.width < 4)
    throw PreconditionError(std::string(op) + ": sides must be positive multiples of 4");
}

inline bool adjacent(Block a, Block b) {
  const Cell d = b - a;
  return std::abs(d.row) + std::abs(d.col) == 1;
}

// The two antiblocks flanking the edge between adjacent blocks a and b.
inline std::array<Cell, 2> flanks(Block a, Block b) {
  if (a.row == b.row) {
    const int col = std::max(a.col, b.col);
    return {Cell{a.row, col}, Cell{a.row + 1, col}};
  }
  const int row = std::max(a.row, b.row);
  return {Cell{row, a.col}, Cell{row, a.col + 1}};
}

inline Shade side_of(const ChainEdge& e, int gray_parity) {
  const auto f = flanks(e.from, e.to);
  const Cell g = antiblock_gray(f[0], gray_parity) ? f[0] : f[1];
  // Doubled coordinates: block centre (2i+1, 2j+1), antiblock centre (2a, 2b).
  const Cell mid2{2 * (e.from.row + e.to.row) + 2, 2 * (e.from.col + e.to.col) + 2};
  const Cell rel = 4 * g - mid2;
  const Cell d = e.to - e.from;
  const Cell left{-d.col, d.row};  // rows grow downwards
  return rel.row * left.row + rel.col * left.col > 0 ? Shade::Left : Shade::Right;
}

// Tile for an arrow leaving the block whose top-left cell is the origin:
// indexed by direction (up, left, right, down) then shade (left, right).
// Derived once by brute force over enumerated tilings and frozen.
struct ArrowTile {
  Orientation orientation;
  Cell offset;
};
inline constexpr std::array<std::array<ArrowTile, 2>, 4> kArrowTiles = {{
    {{{Orientation::L, {-1, 0}}, {Orientation::R, {-1, 0}}}},  // up
    {{{Orientation::D, {0, -1}}, {Orientation::U, {0, -1}}}},  // left
    {{{Orientation::U, {0, 0}}, {Orientation::D, {0, 0}}}},    // right
    {{{Orientation::R, {0, 0}}, {Orientation::L, {0, 0}}}},    // down
}};

inline int direction_index(Cell d) {
  if (d == Cell{-1, 0}) return 0;
  if (d == Cell{0, -1}) return 1;
  if (d == Cell{0, 1}) return 2;
  if (d == Cell{1, 0}) return 3;
  return -1;
}

}  // namespace detail

inline ChainEdge chain_edge(const Tile& t) {
  std::array<std::pair<Block, int>, 4> counts{};
  int n = 0;
  for (Cell c : tile_cells(t)) {
    const Block b{c.row >> 1, c.col >> 1};
    int i = 0;
    while (i < n && counts[static_cast<std::size_t>(i)].first != b) ++i;
    if (i == n) counts[static_cast<std::size_t>(n++)] = {b, 0};
    ++counts[static_cast<std::size_t>(i)].second;
  }
  if (n == 2) {
    auto [b0, c0] = counts[0];
    auto [b1, c1] = counts[1];
    if (c1 == 3) std::swap(b0, b1), std::swap(c0, c1);
    if (c0 == 3 && detail::adjacent(b0, b1)) return {b0, b1};
  }
  std::ostringstream os;
  os << "tile " << t << " does not split 3+1 across adjacent 2x2 blocks";
  throw InvariantViolation(os.str());
}

inline ChainGraph build_chain_graph(const Tiling& t) {
  detail::require_walkup(t.rect(), "build_chain_graph");
  ChainGraph g{t.rect(), {}};
  g.edges.reserve(t.size());
  for (const Tile& x : t.tiles()) g.edges.push_back(chain_edge(x));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// Interior antiblocks, row-major.
inline std::vector<Antiblock> antiblock_coloring(const Rect& rect, int gray_parity = kGrayParity) {
  detail::require_walkup(rect, "antiblock_coloring");
  std::vector<Antiblock> out;
  for (int a = 1; a < rect.height / 2; ++a)
    for (int b = 1; b < rect.width / 2; ++b) out.push_back({{a, b}, antiblock_gray({a, b}, gray_parity)});
  return out;
}

inline bool interior_antiblock(const Rect& rect, Cell index) {
  return index.row >= 1 && index.col >= 1 && index.row < rect.height / 2 &&
         index.col < rect.width / 2;
}

inline Shade shade_of(const ChainEdge& e, int gray_parity = kGrayParity) {
  return detail::side_of(e, gray_parity);
}

inline ShadedArrow arrow_for_tile(const Tiling& t, const Tile& tile) {
  detail::require_walkup(t.rect(), "arrow_for_tile");
  if (!t.contains(tile)) throw PreconditionError("arrow_for_tile: tile not in tiling");
  const ChainEdge e = chain_edge(tile);
  return {e, shade_of(e)};
}

inline Tile tile_for_arrow(const Rect& rect, const ShadedArrow& a) {
  detail::require_walkup(rect, "tile_for_arrow");
  const int dir = detail::direction_index(a.edge.to - a.edge.from);
  if (dir < 0) throw PreconditionError("tile_for_arrow: arrow endpoints are not adjacent blocks");
  if (shade_of(a.edge) != a.side)
    throw PreconditionError("tile_for_arrow: shading inconsistent with antiblock colouring");
  const auto& at = detail::kArrowTiles[static_cast<std::size_t>(dir)][static_cast<std::size_t>(a.side)];
  Tile t{at.orientation, 2 * a.edge.from + at.offset};
  if (!fits(rect, t)) throw PreconditionError("tile_for_arrow: tile leaves the rectangle");
  return t;
}

inline std::vector<ShadedArrow> shaded_arrows(const ChainGraph& g) {
  std::vector<ShadedArrow> out;
  out.reserve(g.edges.size());
  for (const auto& e : g.edges) out.push_back({e, shade_of(e)});
  return out;
}

// Maps every edge back to its tile; throws InvalidTiling if the result is not
// a tiling.
inline Tiling chain_to_tiling(const ChainGraph& g) {
  std::vector<Tile> tiles;
  tiles.reserve(g.edges.size());
  for (const auto& a : shaded_arrows(g)) tiles.push_back(tile_for_arrow(g.rect, a));
  return Tiling(g.rect, std::move(tiles));
}

struct HvOptions {
  int max_area = 256;
  int gray_parity = kGrayParity;
};

namespace detail {

struct UndirectedEdge {
  Block a, b;  // a < b
};

inline UndirectedEdge uedge(Block a, Block b) { return a < b ? UndirectedEdge{a, b} : UndirectedEdge{b, a}; }

// Sides of antiblock (a, b) as block pairs, with the antiblock across each side.
struct Side {
  UndirectedEdge edge;
  Cell across;
  bool horizontal;
};
inline std::array<Side, 4> antiblock_sides(Cell ab) {
  const int a = ab.row, b = ab.col;
  return {{
      {uedge({a - 1, b - 1}, {a - 1, b}), {a - 1, b}, true},  // top
      {uedge({a, b - 1}, {a, b}), {a + 1, b}, true},          // bottom
      {uedge({a - 1, b - 1}, {a, b - 1}), {a, b - 1}, false},  // left
      {uedge({a - 1, b}, {a, b}), {a, b + 1}, false},          // right
  }};
}

}  // namespace detail

// Streams every chain graph built by the HV rule: forced edges on gray sides
// that face no white antiblock, an H-or-V choice per white antiblock (row-major,
// H first), then both orientations of each resulting cycle (cycles ordered by
// their least block). visit(const ChainGraph&) -> bool; false stops.
// Returns the number of graphs visited.
template <class Visitor>
  requires std::invocable<Visitor&, const ChainGraph&>
std::size_t hv_enumerate(const Rect& rect, Visitor&& visit, const HvOptions& opts = {}) {
  detail::require_walkup(rect, "hv_enumerate");
  if (rect.area() > opts.max_area)
    throw ResourceError("hv_enumerate: area " + std::to_string(rect.area()) + " exceeds bound " +
                        std::to_string(opts.max_area));
  const int bh = rect.height / 2, bw = rect.width / 2;
  std::vector<detail::UndirectedEdge> forced;
  std::vector<Cell> whites;
  for (const Antiblock& ab : antiblock_coloring(rect, opts.gray_parity)) {
    if (!ab.gray) {
      whites.push_back(ab.index);
      continue;
    }
    for (const auto& s : detail::antiblock_sides(ab.index))
      if (!interior_antiblock(rect, s.across)) forced.push_back(s.edge);
  }
  if (whites.size() > 40) throw ResourceError("hv_enumerate: too many white antiblocks");

  auto vid = [bw](Block b) { return b.row * bw + b.col; };
  const int nv = bh * bw;
  std::size_t visited = 0;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nv));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << whites.size()); ++mask) {
    for (auto& v : adj) v.clear();
    auto add = [&](const detail::UndirectedEdge& e) {
      adj[static_cast<std::size_t>(vid(e.a))].push_back(vid(e.b));
      adj[static_cast<std::size_t>(vid(e.b))].push_back(vid(e.a));
    };
    for (const auto& e : forced) add(e);
    for (std::size_t i = 0; i < whites.size(); ++i) {
      const bool vertical = (mask >> i) & 1u;
      for (const auto& s : detail::antiblock_sides(whites[i]))
        if (s.horizontal != vertical) add(s.edge);
    }
    bool regular = true;
    for (const auto& v : adj) regular = regular && v.size() == 2;
    if (!regular)
      throw InvariantViolation("hv_enumerate: H/V choice produced a vertex of degree != 2");

    // Cycles as vertex sequences starting at the least vertex, walking first
    // to its smaller neighbour.
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(static_cast<std::size_t>(nv), false);
    for (int s = 0; s < nv; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::vector<int> cyc{s};
      seen[static_cast<std::size_t>(s)] = true;
      const auto& ns = adj[static_cast<std::size_t>(s)];
      int prev = s, cur = std::min(ns[0], ns[1]);
      while (cur != s) {
        cyc.push_back(cur);
        seen[static_cast<std::size_t>(cur)] = true;
        const auto& nc = adj[static_cast<std::size_t>(cur)];
        const int next = nc[0] == prev ? nc[1] : nc[0];
        prev = cur;
        cur = next;
      }
      cycles.push_back(std::move(cyc));
    }
    if (cycles.size() > 40) throw ResourceError("hv_enumerate: too many cycles");
    for (std::uint64_t orient = 0; orient < (std::uint64_t{1} << cycles.size()); ++orient) {
      ChainGraph g{rect, {}};
      g.edges.reserve(static_cast<std::size_t>(nv));
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        const auto& cyc = cycles[c];
        const bool reversed = (orient >> c) & 1u;
        const std::size_t n = cyc.size();
        for (std::size_t i = 0; i < n; ++i) {
          int u = cyc[i], v = cyc[(i + 1) % n];
          if (reversed) std::swap(u, v);
          g.edges.push_back({{u / bw, u % bw}, {v / bw, v % bw}});
        }
      }
      std::sort(g.edges.begin(), g.edges.end());
      ++visited;
      if (!visit(g)) return visited;
    }
  }
  return visited;
}

inline std::vector<ChainGraph> hv_enumerate(const Rect& rect, const HvOptions& opts = {}) {
  std::vector<ChainGraph> out;
  hv_enumerate(rect, [&](const ChainGraph& g) { out.push_back(g); return true; }, opts);
  return out;
}

struct ArrowAP {
  ShadedArrow first;
  Step step;  // in blocks
  int length = 0;
};

// Equally spaced arrows with one direction and one shading side.
inline std::vector<ArrowAP> shaded_arrow_aps(const ChainGraph& g, int min_len) {
  if (min_len < 2) throw PreconditionError("shaded_arrow_aps: min_len must be >= 2");
  std::vector<std::pair<std::pair<int, int>, Cell>> pts;
  for (const auto& a : shaded_arrows(g))
    pts.push_back({{detail::direction_index(a.edge.to - a.edge.from), static_cast<int>(a.side)},
                   a.edge.from});
  std::vector<ArrowAP> out;
  for (const auto& p : maximal_progressions(std::move(pts), min_len)) {
    static constexpr std::array<Cell, 4> dirs = {Cell{-1, 0}, Cell{0, -1}, Cell{0, 1}, Cell{1, 0}};
    const Cell d = dirs[static_cast<std::size_t>(p.key.first)];
    out.push_back({{{p.start, p.start + d}, static_cast<Shade>(p.key.second)}, p.step, p.length});
  }
  return out;
}

inline bool has_shaded_arrow_ap(const ChainGraph& g, int len) {
  std::vector<std::pair<std::pair<int, int>, Cell>> pts;
  for (const auto& a : shaded_arrows(g))
    pts.push_back({{detail::direction_index(a.edge.to - a.edge.from), static_cast<int>(a.side)},
                   a.edge.from});
  return has_progression(std::move(pts), len);
}

}  // namespace ttap
