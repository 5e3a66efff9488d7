#pragma once

#include <algorithm>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ttap/geometry.hpp"

namespace ttap {

enum class ViolationKind { OutOfBounds, Overlap, Uncovered, BadShape };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::OutOfBounds: return "OUT_OF_BOUNDS";
    case ViolationKind::Overlap: return "OVERLAP";
    case ViolationKind::Uncovered: return "UNCOVERED";
    case ViolationKind::BadShape: return "BAD_SHAPE";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  Cell cell;       // offending cell (for BAD_SHAPE: first cell of the region)
  int tile = -1;   // index into the input tile list, or -1
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
  }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& v : violations) {
      os << to_string(v.kind) << " at " << v.cell;
      if (v.tile >= 0) os << " (tile " << v.tile << ")";
      os << '\n';
    }
    return os.str();
  }
};

// Collects every violation instead of stopping at the first.
inline ValidityReport validate(const Rect& rect, std::span<const Tile> tiles) {
  ValidityReport rep;
  std::vector<int> owner(static_cast<std::size_t>(rect.area()), -1);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    for (Cell c : tile_cells(tiles[i])) {
      if (!rect.contains(c)) {
        rep.violations.push_back({ViolationKind::OutOfBounds, c, static_cast<int>(i)});
        continue;
      }
      int& o = owner[static_cast<std::size_t>(c.row * rect.width + c.col)];
      if (o >= 0)
        rep.violations.push_back({ViolationKind::Overlap, c, static_cast<int>(i)});
      else
        o = static_cast<int>(i);
    }
  }
  for (int r = 0; r < rect.height; ++r)
    for (int c = 0; c < rect.width; ++c)
      if (owner[static_cast<std::size_t>(r * rect.width + c)] < 0)
        rep.violations.push_back({ViolationKind::Uncovered, {r, c}, -1});
  return rep;
}

struct InvalidTiling : Error {
  explicit InvalidTiling(ValidityReport r)
      : Error("invalid tiling:\n" + r.summary()), report(std::move(r)) {}
  ValidityReport report;
};

// A complete tiling of a rectangle. Only constructible from a tile set that
// validates cleanly; tiles are kept in canonical (anchor row, anchor col) order.
class Tiling {
 public:
  Tiling(Rect rect, std::vector<Tile> tiles) : rect_(rect), tiles_(std::move(tiles)) {
    checked_rect(rect.height, rect.width);
    auto rep = validate(rect_, tiles_);
    if (!rep.ok()) throw InvalidTiling(std::move(rep));
    std::sort(tiles_.begin(), tiles_.end());
    owner_.assign(static_cast<std::size_t>(rect_.area()), 0);
    for (std::size_t i = 0; i < tiles_.size(); ++i)
      for (Cell c : tile_cells(tiles_[i])) owner_[index(c)] = static_cast<int>(i);
  }

  const Rect& rect() const { return rect_; }
  int height() const { return rect_.height; }
  int width() const { return rect_.width; }
  std::span<const Tile> tiles() const { return tiles_; }
  std::size_t size() const { return tiles_.size(); }
  const Tile& tile(std::size_t i) const { return tiles_[i]; }

  // Canonical index of the tile covering c.
  int owner(Cell c) const { return owner_[index(c)]; }
  const Tile& tile_at(Cell c) const { return tiles_[static_cast<std::size_t>(owner(c))]; }

  bool contains(const Tile& t) const {
    return std::binary_search(tiles_.begin(), tiles_.end(), t);
  }

  friend bool operator==(const Tiling& a, const Tiling& b) {
    return a.rect_ == b.rect_ && a.tiles_ == b.tiles_;
  }
  friend bool operator<(const Tiling& a, const Tiling& b) {
    if (a.rect_.height != b.rect_.height) return a.rect_.height < b.rect_.height;
    if (a.rect_.width != b.rect_.width) return a.rect_.width < b.rect_.width;
    return a.tiles_ < b.tiles_;
  }

 private:
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row * rect_.width + c.col);
  }

  Rect rect_;
  std::vector<Tile> tiles_;
  std::vector<int> owner_;
};

inline Tiling rotate180(const Tiling& t) {
  std::vector<Tile> out;
  out.reserve(t.size());
  for (const Tile& x : t.tiles()) out.push_back(rotate180(t.rect(), x));
  return Tiling(t.rect(), std::move(out));
}

inline Tiling transpose(const Tiling& t) {
  std::vector<Tile> out;
  out.reserve(t.size());
  for (const Tile& x : t.tiles()) out.push_back(transpose(x));
  return Tiling({t.width(), t.height()}, std::move(out));
}

// Walkup: a rectangle admits a T-tetromino tiling iff both sides are multiples of 4.
inline bool is_tileable(const Rect& rect) {
  return rect.height > 0 && rect.width > 0 && rect.height % 4 == 0 && rect.width % 4 == 0;
}

namespace detail {
// Owners of the four cells around grid point p, in order NW, NE, SW, SE.
inline std::array<int, 4> owners_around(const Tiling& t, Cell p) {
  return {t.owner({p.row - 1, p.col - 1}), t.owner({p.row - 1, p.col}),
          t.owner({p.row, p.col - 1}), t.owner({p.row, p.col})};
}
}  // namespace detail

// Structural self-check of Walkup's lattice. Among interior grid points with
// both coordinates even, those with r == c (mod 4) are cut points (four
// distinct tiles meet; the pinwheel centre is one), the rest are cornerless.
inline bool cut_cornerless_ok(const Tiling& t) {
  if (!is_tileable(t.rect()))
    throw PreconditionError("cut/cornerless check needs sides divisible by 4");
  for (int r = 2; r < t.height(); r += 2) {
    for (int c = 2; c < t.width(); c += 2) {
      const auto o = detail::owners_around(t, {r, c});
      if (r % 4 == c % 4) {
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j)
            if (o[static_cast<std::size_t>(i)] == o[static_cast<std::size_t>(j)]) return false;
      } else {
        // A tile has a corner at p iff it owns an odd number of the four
        // cells, or exactly two diagonal ones.
        for (int id : o) {
          const int n = static_cast<int>(std::count(o.begin(), o.end(), id));
          if (n == 1 || n == 3) return false;
          if (n == 2 && (o[0] == o[3] || o[1] == o[2])) return false;
        }
      }
    }
  }
  return true;
}

inline bool cut_cornerless_ok(const Rect& rect, std::span<const Tile> tiles) {
  auto rep = validate(rect, tiles);
  if (!rep.ok()) throw PreconditionError("cut/cornerless check needs a valid tiling:\n" + rep.summary());
  return cut_cornerless_ok(Tiling(rect, std::vector<Tile>(tiles.begin(), tiles.end())));
}

}  // namespace ttap
