#pragma once

#include <vector>

#include "ttap/ap.hpp"

namespace ttap {

// Tiles below a horizontal line (row 0 is the row touching it) jointly covering
// row-0 cells 0..n-1. Every tile covers at least one of those cells.
struct BoundaryCovering {
  int n = 0;
  std::vector<Tile> tiles;  // sorted
};

inline constexpr int kMaxBoundaryLength = 12;

namespace detail {

// Tiles touching row 0 that cover (0, c); a tile may not reach above row 0, so
// its anchor row is 0.
inline std::vector<Tile> boundary_placements(int c) {
  return {
      {Orientation::U, {0, c - 1}},
      {Orientation::D, {0, c - 2}},
      {Orientation::D, {0, c - 1}},
      {Orientation::D, {0, c}},
      {Orientation::L, {0, c - 1}},
      {Orientation::R, {0, c}},
  };
}

inline bool disjoint(const std::vector<Tile>& placed, const Tile& t) {
  for (const Tile& p : placed)
    for (Cell a : tile_cells(p))
      if (covers(t, a)) return false;
  return true;
}

inline void boundary_dfs(int n, int col, std::vector<Tile>& placed,
                         std::vector<BoundaryCovering>& out) {
  while (col < n) {
    bool covered = false;
    for (const Tile& p : placed) covered = covered || covers(p, {0, col});
    if (!covered) break;
    ++col;
  }
  if (col == n) {
    BoundaryCovering bc{n, placed};
    std::sort(bc.tiles.begin(), bc.tiles.end());
    out.push_back(std::move(bc));
    return;
  }
  for (const Tile& t : boundary_placements(col)) {
    if (!disjoint(placed, t)) continue;
    placed.push_back(t);
    boundary_dfs(n, col + 1, placed, out);
    placed.pop_back();
  }
}

}  // namespace detail

// All minimal coverings of n consecutive boundary squares. Tiles may stick out
// up to two columns on either side. The tile covering the leftmost uncovered
// square is branched on, so each tile set appears once.
inline std::vector<BoundaryCovering> enumerate_boundary_coverings(int n) {
  if (n < 1) throw PreconditionError("boundary covering length must be >= 1");
  if (n > kMaxBoundaryLength)
    throw ResourceError("boundary covering length " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxBoundaryLength));
  std::vector<BoundaryCovering> out;
  std::vector<Tile> placed;
  detail::boundary_dfs(n, 0, placed, out);
  std::sort(out.begin(), out.end(),
            [](const BoundaryCovering& a, const BoundaryCovering& b) { return a.tiles < b.tiles; });
  return out;
}

// True iff every covering of n consecutive boundary squares has an AP of length >= l.
inline bool boundary_forces(int n, int l) {
  for (const auto& bc : enumerate_boundary_coverings(n))
    if (!has_ap(bc.tiles, l)) return false;
  return true;
}

}  // namespace ttap
