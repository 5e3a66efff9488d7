#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ttap/tiling.hpp"

namespace ttap {

struct EnumerateOptions {
  std::optional<std::size_t> limit;           // stop after this many tilings
  int max_area = 96;                          // desk-scale guard for full enumeration
  std::optional<std::uint64_t> shuffle_seed;  // randomize placement order per node
};

namespace detail {

// Backtracking over the first uncovered cell in column-major order. A cell can
// only be reached by placements whose own column-major first cell it is, so each
// tiling is produced exactly once. Frontier states (first uncovered cell plus
// the coverage of the next three columns) that admit no completion are
// remembered, which makes infeasible rectangles cheap to refute.
class TilingSearch {
 public:
  explicit TilingSearch(Rect rect)
      : rect_(rect),
        words_((static_cast<std::size_t>(rect.area()) + 63) / 64 + 1),
        covered_(words_, 0),
        memo_ok_(3 * rect.height <= 192) {}

  using Visit = std::function<bool(const std::vector<Tile>&)>;

  // Returns false if the visitor asked to stop.
  bool run(const Visit& visit, std::optional<std::uint64_t> seed) {
    if (seed) rng_.emplace(*seed);
    visit_ = &visit;
    stopped_ = false;
    std::size_t found = 0;
    dfs(0, found);
    return !stopped_;
  }

  std::uint64_t count() {
    count_memo_.clear();
    return count_from(0);
  }

 private:
  struct Key {
    int pos;
    std::array<std::uint64_t, 3> bits;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = static_cast<std::uint64_t>(k.pos) * 0x9E3779B97F4A7C15ull;
      for (auto b : k.bits) h = (h ^ b) * 0x100000001B3ull + (h >> 29);
      return static_cast<std::size_t>(h);
    }
  };

  int idx(Cell c) const { return c.col * rect_.height + c.row; }
  bool test(int i) const { return (covered_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }
  void flip(int i) { covered_[static_cast<std::size_t>(i) >> 6] ^= (std::uint64_t{1} << (i & 63)); }

  int first_uncovered(int from) const {
    const int n = rect_.area();
    for (int i = from; i < n; ++i)
      if (!test(i)) return i;
    return n;
  }

  Key key(int pos) const {
    Key k{pos, {0, 0, 0}};
    const int len = std::min(3 * rect_.height, rect_.area() - pos);
    for (int j = 0; j < len; ++j)
      if (test(pos + j)) k.bits[static_cast<std::size_t>(j >> 6)] |= std::uint64_t{1} << (j & 63);
    return k;
  }

  // Placements whose column-major first cell is p, in canonical orientation order.
  int candidates(int pos, std::array<Tile, 4>& out) const {
    const Cell p{pos % rect_.height, pos / rect_.height};
    int n = 0;
    for (Orientation o : kOrientations) {
      const bool stem_side = (o == Orientation::U || o == Orientation::L);
      Tile t{o, stem_side ? Cell{p.row - 1, p.col} : p};
      if (!fits(rect_, t)) continue;
      bool free = true;
      for (Cell c : tile_cells(t))
        if (test(idx(c))) { free = false; break; }
      if (free) out[static_cast<std::size_t>(n++)] = t;
    }
    return n;
  }

  void place(const Tile& t) {
    for (Cell c : tile_cells(t)) flip(idx(c));
  }

  void dfs(int from, std::size_t& found) {
    const int pos = first_uncovered(from);
    if (pos == rect_.area()) {
      ++found;
      if (!(*visit_)(stack_)) stopped_ = true;
      return;
    }
    std::optional<Key> k;
    if (memo_ok_) {
      k = key(pos);
      if (dead_.count(*k)) return;
    }
    std::array<Tile, 4> cand{};
    const int n = candidates(pos, cand);
    if (rng_) std::shuffle(cand.begin(), cand.begin() + n, *rng_);
    const std::size_t before = found;
    for (int i = 0; i < n && !stopped_; ++i) {
      place(cand[static_cast<std::size_t>(i)]);
      stack_.push_back(cand[static_cast<std::size_t>(i)]);
      dfs(pos + 1, found);
      stack_.pop_back();
      place(cand[static_cast<std::size_t>(i)]);
    }
    if (k && !stopped_ && found == before) dead_.insert(*k);
  }

  std::uint64_t count_from(int from) {
    const int pos = first_uncovered(from);
    if (pos == rect_.area()) return 1;
    std::optional<Key> k;
    if (memo_ok_) {
      k = key(pos);
      if (auto it = count_memo_.find(*k); it != count_memo_.end()) return it->second;
    }
    std::array<Tile, 4> cand{};
    const int n = candidates(pos, cand);
    std::uint64_t total = 0;
    for (int i = 0; i < n; ++i) {
      place(cand[static_cast<std::size_t>(i)]);
      const std::uint64_t sub = count_from(pos + 1);
      place(cand[static_cast<std::size_t>(i)]);
      if (__builtin_add_overflow(total, sub, &total))
        throw ResourceError("tiling count overflows 64 bits");
    }
    if (k) count_memo_.emplace(*k, total);
    return total;
  }

  Rect rect_;
  std::size_t words_;
  std::vector<std::uint64_t> covered_;
  bool memo_ok_;
  std::vector<Tile> stack_;
  std::unordered_set<Key, KeyHash> dead_;
  std::unordered_map<Key, std::uint64_t, KeyHash> count_memo_;
  const Visit* visit_ = nullptr;
  bool stopped_ = false;
  std::optional<std::mt19937_64> rng_;
};

}  // namespace detail

// Streams every complete tiling of rect to visit(const Tiling&) -> bool
// (return false to stop). Returns the number of tilings visited.
template <class Visitor>
std::size_t for_each_tiling(const Rect& rect, Visitor&& visit, const EnumerateOptions& opts = {}) {
  checked_rect(rect.height, rect.width);
  if (rect.area() > opts.max_area && opts.limit.value_or(SIZE_MAX) > 1)
    throw ResourceError("enumeration of " + std::to_string(rect.height) + "x" +
                        std::to_string(rect.width) + " exceeds area bound " +
                        std::to_string(opts.max_area));
  std::size_t n = 0;
  detail::TilingSearch search(rect);
  search.run(
      [&](const std::vector<Tile>& tiles) {
        ++n;
        bool go = visit(Tiling(rect, tiles));
        if (opts.limit && n >= *opts.limit) go = false;
        return go;
      },
      opts.shuffle_seed);
  return n;
}

inline std::vector<Tiling> enumerate_tilings(const Rect& rect, const EnumerateOptions& opts = {}) {
  std::vector<Tiling> out;
  for_each_tiling(rect, [&](const Tiling& t) { out.push_back(t); return true; }, opts);
  return out;
}

// First tiling in enumeration order (or a random one with a seed). Not subject
// to the area bound. Past the enumeration area the plain search backtracks
// exponentially in the side length, so large rectangles are built from 4-row
// bands solved independently and stacked.
inline std::optional<Tiling> find_tiling(const Rect& rect,
                                         std::optional<std::uint64_t> seed = std::nullopt) {
  checked_rect(rect.height, rect.width);
  if (rect.height > 4 && rect.area() > EnumerateOptions{}.max_area) {
    if (!is_tileable(rect)) return std::nullopt;
    std::vector<Tile> tiles;
    for (int band = 0; band < rect.height / 4; ++band) {
      const auto s = seed ? std::optional<std::uint64_t>(*seed + static_cast<std::uint64_t>(band)) : std::nullopt;
      const auto b = find_tiling({4, rect.width}, s);
      if (!b) return std::nullopt;
      for (Tile t : b->tiles()) {
        t.anchor.row += 4 * band;
        tiles.push_back(t);
      }
    }
    return Tiling(rect, std::move(tiles));
  }
  std::optional<Tiling> out;
  EnumerateOptions opts;
  opts.limit = 1;
  opts.shuffle_seed = seed;
  for_each_tiling(rect, [&](const Tiling& t) { out = t; return false; }, opts);
  return out;
}

// Transfer-matrix style count over frontier states.
inline std::uint64_t count_tilings(const Rect& rect) {
  checked_rect(rect.height, rect.width);
  if (3 * rect.height > 192) throw ResourceError("count_tilings: height too large");
  detail::TilingSearch search(rect);
  return search.count();
}

}  // namespace ttap
