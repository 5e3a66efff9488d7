#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttap/ap.hpp"
#include "ttap/enumerate.hpp"

namespace ttap {

// A 2-coloring of {1..n} written over the alphabet {A, B}.
struct TwoColoring {
  std::string colors;

  TwoColoring() = default;
  explicit TwoColoring(std::string c) : colors(std::move(c)) {
    for (char x : colors)
      if (x != 'A' && x != 'B') throw PreconditionError("two-coloring must use only A and B");
  }
  std::size_t size() const { return colors.size(); }
  friend bool operator==(const TwoColoring&, const TwoColoring&) = default;
};

// The two 4x4 pinwheels. A has an R tile down the top three cells of its first
// column; B has a D tile in the top-left corner with an R below it.
inline const std::vector<Tile>& unit_a_tiles() {
  static const std::vector<Tile> a = {{Orientation::R, {0, 0}},
                                      {Orientation::D, {0, 1}},
                                      {Orientation::L, {1, 2}},
                                      {Orientation::U, {2, 0}}};
  return a;
}
inline const std::vector<Tile>& unit_b_tiles() {
  static const std::vector<Tile> b = {{Orientation::D, {0, 0}},
                                      {Orientation::L, {0, 2}},
                                      {Orientation::R, {1, 0}},
                                      {Orientation::U, {2, 1}}};
  return b;
}

enum class FirstColumn { A, B, Neither };

namespace detail {

inline std::vector<Tile> shift_cols(std::span<const Tile> tiles, int dc) {
  std::vector<Tile> out;
  out.reserve(tiles.size());
  for (const Tile& t : tiles) out.push_back({t.orientation, {t.anchor.row, t.anchor.col + dc}});
  return out;
}

// Tiles owning the cells of column `col`, relative to that column, top to bottom.
inline std::vector<Tile> column_signature(const Tiling& t, int col) {
  std::vector<Tile> sig;
  for (int r = 0; r < t.height(); ++r) {
    const Tile& x = t.tile_at({r, col});
    sig.push_back({x.orientation, {x.anchor.row, x.anchor.col - col}});
  }
  return sig;
}

inline const std::vector<Tile>& signature_a() {
  static const auto s = column_signature(Tiling({4, 4}, unit_a_tiles()), 0);
  return s;
}
inline const std::vector<Tile>& signature_b() {
  static const auto s = column_signature(Tiling({4, 4}, unit_b_tiles()), 0);
  return s;
}

inline void require_width4(const Tiling& t, const char* op) {
  if (t.height() != 4) throw PreconditionError(std::string(op) + ": tiling height must be 4");
}

}  // namespace detail

inline FirstColumn first_column_class(const Tiling& t, int col = 0) {
  const auto sig = detail::column_signature(t, col);
  if (sig == detail::signature_a()) return FirstColumn::A;
  if (sig == detail::signature_b()) return FirstColumn::B;
  return FirstColumn::Neither;
}

// Column positions of vertical fault lines (lines crossed by no tile), plus 0
// and the width; consecutive entries delimit the units.
inline std::vector<int> fault_lines(const Tiling& t) {
  std::vector<bool> crossed(static_cast<std::size_t>(t.width() + 1), false);
  for (const Tile& x : t.tiles()) {
    const int lo = x.anchor.col;
    const int hi = lo + tile_extent(x.orientation).col - 1;
    for (int c = lo + 1; c <= hi; ++c) crossed[static_cast<std::size_t>(c)] = true;
  }
  std::vector<int> out;
  for (int c = 0; c <= t.width(); ++c)
    if (!crossed[static_cast<std::size_t>(c)]) out.push_back(c);
  return out;
}

struct UnitSegment {
  int start = 0;
  Tiling block;  // translated to column 0
};

// Cuts at every fault line.
inline std::vector<UnitSegment> split_units(const Tiling& t) {
  const auto cuts = fault_lines(t);
  std::vector<std::vector<Tile>> parts(cuts.size() - 1);
  for (const Tile& x : t.tiles()) {
    const auto seg = static_cast<std::size_t>(
        std::upper_bound(cuts.begin(), cuts.end(), x.anchor.col) - cuts.begin() - 1);
    parts[seg].push_back(x);
  }
  std::vector<UnitSegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    out.push_back({cuts[i], Tiling({t.height(), cuts[i + 1] - cuts[i]},
                                   detail::shift_cols(parts[i], -cuts[i]))});
  return out;
}

struct Unit {
  std::string kind;
  int length = 0;
  std::vector<Tile> tiles;
  FirstColumn first_column = FirstColumn::Neither;
};

inline constexpr int kMaxUnitLength = 16;

inline std::string unit_kind_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return "U" + std::to_string(i);
}

// Indecomposable 4xk tilings for k <= max_len. Within one length, A-type first
// columns sort before B-type, then by tile list; kinds are lettered in that
// order, so the length-4 units are A and B.
inline std::vector<Unit> enumerate_units(int max_len) {
  if (max_len < 4 || max_len % 4 != 0)
    throw PreconditionError("enumerate_units: max_len must be a positive multiple of 4");
  if (max_len > kMaxUnitLength)
    throw ResourceError("enumerate_units: max_len " + std::to_string(max_len) + " exceeds " +
                        std::to_string(kMaxUnitLength));
  std::vector<Unit> units;
  for (int len = 4; len <= max_len; len += 4) {
    std::vector<Unit> batch;
    for_each_tiling({4, len}, [&](const Tiling& t) {
      if (fault_lines(t).size() == 2)
        batch.push_back({"", len, {t.tiles().begin(), t.tiles().end()}, first_column_class(t)});
      return true;
    });
    std::sort(batch.begin(), batch.end(), [](const Unit& a, const Unit& b) {
      return std::pair{a.first_column, a.tiles} < std::pair{b.first_column, b.tiles};
    });
    for (auto& u : batch) units.push_back(std::move(u));
  }
  for (std::size_t i = 0; i < units.size(); ++i) units[i].kind = unit_kind_name(i);
  return units;
}

struct UnitString {
  std::vector<std::string> kinds;
  int width = 0;
  friend bool operator==(const UnitString&, const UnitString&) = default;
};

class UnitCatalog {
 public:
  explicit UnitCatalog(int max_len = kMaxUnitLength) : max_len_(max_len), units_(enumerate_units(max_len)) {
    for (std::size_t i = 0; i < units_.size(); ++i) {
      by_tiles_.emplace(std::pair{units_[i].length, units_[i].tiles}, i);
      by_kind_.emplace(units_[i].kind, i);
    }
  }

  std::span<const Unit> units() const { return units_; }
  int max_length() const { return max_len_; }

  const Unit* find(const Tiling& block) const {
    auto it = by_tiles_.find(std::pair{block.width(), std::vector<Tile>(block.tiles().begin(), block.tiles().end())});
    return it == by_tiles_.end() ? nullptr : &units_[it->second];
  }
  const Unit& at(const std::string& kind) const {
    auto it = by_kind_.find(kind);
    if (it == by_kind_.end()) throw PreconditionError("unknown unit kind '" + kind + "'");
    return units_[it->second];
  }

 private:
  int max_len_;
  std::vector<Unit> units_;
  std::map<std::pair<int, std::vector<Tile>>, std::size_t> by_tiles_;
  std::map<std::string, std::size_t> by_kind_;
};

inline UnitString decompose(const Tiling& t, const UnitCatalog& catalog) {
  detail::require_width4(t, "decompose");
  UnitString out;
  out.width = t.width();
  for (const auto& seg : split_units(t)) {
    const Unit* u = catalog.find(seg.block);
    if (!u)
      throw InvariantViolation("decompose: unit of length " + std::to_string(seg.block.width()) +
                               " at column " + std::to_string(seg.start) +
                               " not in catalog (catalog bound " +
                               std::to_string(catalog.max_length()) + ")");
    out.kinds.push_back(u->kind);
  }
  return out;
}

inline Tiling concatenate(const UnitString& s, const UnitCatalog& catalog) {
  std::vector<Tile> tiles;
  int col = 0;
  for (const auto& k : s.kinds) {
    const Unit& u = catalog.at(k);
    for (const Tile& x : u.tiles) tiles.push_back({x.orientation, {x.anchor.row, x.anchor.col + col}});
    col += u.length;
  }
  return Tiling({4, col}, std::move(tiles));
}

// Replaces each unit by a run of A's or B's of the same total length,
// according to the unit's first column. d1 tiles are left where they are.
inline Tiling ab_map(const Tiling& t) {
  detail::require_width4(t, "ab_map");
  std::vector<Tile> tiles;
  for (const auto& seg : split_units(t)) {
    const FirstColumn fc = first_column_class(seg.block);
    if (fc == FirstColumn::Neither)
      throw InvariantViolation("ab_map: unit at column " + std::to_string(seg.start) +
                               " matches neither A nor B in its first column");
    const auto& base = fc == FirstColumn::A ? unit_a_tiles() : unit_b_tiles();
    for (int c = 0; c < seg.block.width(); c += 4)
      for (const Tile& x : base) tiles.push_back({x.orientation, {x.anchor.row, x.anchor.col + seg.start + c}});
  }
  return Tiling(t.rect(), std::move(tiles));
}

inline bool is_d1(const Tile& t) { return t.orientation == Orientation::D && t.anchor.row == 0; }

inline std::vector<Tile> d1_tiles(const Tiling& t) {
  std::vector<Tile> out;
  for (const Tile& x : t.tiles())
    if (is_d1(x)) out.push_back(x);
  return out;
}

// (has an l-AP of any tiles, has an l-AP of d1 tiles). For width 4 and l >= 3
// these agree.
inline std::pair<bool, bool> d1_equiv_check(const Tiling& t, int l) {
  detail::require_width4(t, "d1_equiv_check");
  if (l < 3) throw PreconditionError("d1_equiv_check: l must be >= 3");
  return {has_ap(t, l), has_ap(d1_tiles(t), l)};
}

inline Tiling coloring_to_tiling(const TwoColoring& c) {
  std::vector<Tile> tiles;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& base = c.colors[i] == 'A' ? unit_a_tiles() : unit_b_tiles();
    for (const Tile& x : base)
      tiles.push_back({x.orientation, {x.anchor.row, x.anchor.col + 4 * static_cast<int>(i)}});
  }
  return Tiling({4, 4 * static_cast<int>(c.size())}, std::move(tiles));
}

inline TwoColoring tiling_to_coloring(const Tiling& t) {
  detail::require_width4(t, "tiling_to_coloring");
  std::string out;
  for (const auto& seg : split_units(t)) {
    if (seg.block.width() != 4)
      throw PreconditionError("tiling_to_coloring: unit at column " + std::to_string(seg.start) +
                              " is not A or B");
    const auto tiles = std::vector<Tile>(seg.block.tiles().begin(), seg.block.tiles().end());
    if (tiles == unit_a_tiles())
      out += 'A';
    else if (tiles == unit_b_tiles())
      out += 'B';
    else
      throw PreconditionError("tiling_to_coloring: unrecognized 4x4 unit");
  }
  return TwoColoring(out);
}

// k copies of the A/B row for c stacked vertically: a 4k x 4n tiling.
inline Tiling stack_rows(const TwoColoring& c, int k) {
  if (k < 1) throw PreconditionError("stack_rows: k must be >= 1");
  const Tiling row = coloring_to_tiling(c);
  std::vector<Tile> tiles;
  for (int i = 0; i < k; ++i)
    for (const Tile& x : row.tiles()) tiles.push_back({x.orientation, {x.anchor.row + 4 * i, x.anchor.col}});
  return Tiling({4 * k, row.width()}, std::move(tiles));
}

}  // namespace ttap
