#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ttap/error.hpp"

namespace ttap {

// Stem direction of a T-tetromino. The shape is mirror-symmetric, so the
// four rotations are all of its placements up to translation.
enum class Orientation : std::uint8_t { U = 0, D = 1, L = 2, R = 3 };

inline constexpr std::array<Orientation, 4> kOrientations = {
    Orientation::U, Orientation::D, Orientation::L, Orientation::R};

inline constexpr char orientation_letter(Orientation o) {
  constexpr char letters[] = {'U', 'D', 'L', 'R'};
  return letters[static_cast<int>(o)];
}

inline constexpr char orientation_lower(Orientation o) {
  return static_cast<char>(orientation_letter(o) - 'A' + 'a');
}

inline std::optional<Orientation> orientation_from_letter(char c) {
  switch (c) {
    case 'U': case 'u': return Orientation::U;
    case 'D': case 'd': return Orientation::D;
    case 'L': case 'l': return Orientation::L;
    case 'R': case 'r': return Orientation::R;
    default: return std::nullopt;
  }
}

struct Cell {
  int row = 0;
  int col = 0;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
  friend constexpr Cell operator+(Cell a, Cell b) { return {a.row + b.row, a.col + b.col}; }
  friend constexpr Cell operator-(Cell a, Cell b) { return {a.row - b.row, a.col - b.col}; }
  friend constexpr Cell operator*(int k, Cell a) { return {k * a.row, k * a.col}; }
};

// Translation between two anchors, (dy, dx) with rows growing downwards.
using Step = Cell;

struct Rect {
  int height = 0;
  int width = 0;
  constexpr int area() const { return height * width; }
  constexpr bool contains(Cell c) const {
    return c.row >= 0 && c.col >= 0 && c.row < height && c.col < width;
  }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

inline Rect checked_rect(int height, int width) {
  if (height < 1 || width < 1)
    throw PreconditionError("rectangle sides must be positive, got " +
                            std::to_string(height) + "x" + std::to_string(width));
  return {height, width};
}

namespace detail {
inline constexpr std::array<std::array<Cell, 4>, 4> kOffsets = {{
    {{{0, 1}, {1, 0}, {1, 1}, {1, 2}}},  // U
    {{{0, 0}, {0, 1}, {0, 2}, {1, 1}}},  // D
    {{{0, 1}, {1, 0}, {1, 1}, {2, 1}}},  // L
    {{{0, 0}, {1, 0}, {1, 1}, {2, 0}}},  // R
}};
}  // namespace detail

// Bounding box (height, width) of a tile in the given orientation.
inline constexpr Cell tile_extent(Orientation o) {
  return (o == Orientation::U || o == Orientation::D) ? Cell{2, 3} : Cell{3, 2};
}

inline constexpr const std::array<Cell, 4>& tile_offsets(Orientation o) {
  return detail::kOffsets[static_cast<int>(o)];
}

// The anchor is the minimum corner of the bounding box, not the stem cell, so
// AP steps are plain anchor differences.
struct Tile {
  Orientation orientation = Orientation::U;
  Cell anchor;

  // Canonical tiling order is by anchor; orientation only breaks ties, which
  // cannot occur among disjoint tiles (all four shapes cover anchor + (1,1)).
  friend constexpr auto operator<=>(const Tile& a, const Tile& b) {
    if (auto c = a.anchor <=> b.anchor; c != 0) return c;
    return a.orientation <=> b.orientation;
  }
  friend constexpr bool operator==(const Tile&, const Tile&) = default;
};

inline std::array<Cell, 4> tile_cells(const Tile& t) {
  std::array<Cell, 4> out{};
  const auto& off = tile_offsets(t.orientation);
  for (std::size_t i = 0; i < 4; ++i) out[i] = t.anchor + off[i];
  return out;
}

inline bool fits(const Rect& rect, const Tile& t) {
  const Cell ext = tile_extent(t.orientation);
  return t.anchor.row >= 0 && t.anchor.col >= 0 &&
         t.anchor.row + ext.row <= rect.height && t.anchor.col + ext.col <= rect.width;
}

inline bool covers(const Tile& t, Cell c) {
  for (Cell x : tile_cells(t))
    if (x == c) return true;
  return false;
}

// Image of a placement under the half-turn of the rectangle.
inline Tile rotate180(const Rect& rect, const Tile& t) {
  constexpr Orientation flipped[] = {Orientation::D, Orientation::U, Orientation::R,
                                     Orientation::L};
  const Cell ext = tile_extent(t.orientation);
  return {flipped[static_cast<int>(t.orientation)],
          {rect.height - t.anchor.row - ext.row, rect.width - t.anchor.col - ext.col}};
}

// Reflection in the main diagonal: (r, c) -> (c, r).
inline Tile transpose(const Tile& t) {
  constexpr Orientation swapped[] = {Orientation::L, Orientation::R, Orientation::U,
                                     Orientation::D};
  return {swapped[static_cast<int>(t.orientation)], {t.anchor.col, t.anchor.row}};
}

// Two-character display code: lowercase orientation + 1-based highest row.
inline std::string type_code(const Tile& t) {
  return std::string(1, orientation_lower(t.orientation)) + std::to_string(t.anchor.row + 1);
}

// Which shape, if any, a set of four cells forms.
inline std::optional<Tile> recognize_tile(std::array<Cell, 4> cells) {
  Cell lo = cells[0];
  for (Cell c : cells) {
    lo.row = std::min(lo.row, c.row);
    lo.col = std::min(lo.col, c.col);
  }
  std::array<Cell, 4> rel{};
  for (std::size_t i = 0; i < 4; ++i) rel[i] = cells[i] - lo;
  std::sort(rel.begin(), rel.end());
  for (Orientation o : kOrientations)
    if (rel == tile_offsets(o)) return Tile{o, lo};
  return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, Orientation o) {
  return os << orientation_letter(o);
}
inline std::ostream& operator<<(std::ostream& os, Cell c) {
  return os << '(' << c.row << ',' << c.col << ')';
}
inline std::ostream& operator<<(std::ostream& os, const Tile& t) {
  return os << t.orientation << '@' << t.anchor;
}

}  // namespace ttap
