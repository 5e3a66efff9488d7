#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ttap/tiling.hpp"

namespace ttap {

// l tiles of one orientation whose anchors are start + i*step, 0 <= i < l.
struct APWitness {
  Orientation orientation = Orientation::U;
  Cell start;
  Step step;
  int length = 1;

  Tile term(int i) const { return {orientation, start + i * step}; }

  friend auto operator<=>(const APWitness& a, const APWitness& b) {
    if (auto c = a.orientation <=> b.orientation; c != 0) return c;
    if (auto c = a.start <=> b.start; c != 0) return c;
    if (auto c = a.step <=> b.step; c != 0) return c;
    return a.length <=> b.length;
  }
  friend bool operator==(const APWitness&, const APWitness&) = default;
};

inline std::string to_string(const APWitness& ap) {
  std::ostringstream os;
  os << "AP " << orientation_letter(ap.orientation) << " start=(" << ap.start.row << ','
     << ap.start.col << ") step=(" << ap.step.row << ',' << ap.step.col
     << ") len=" << ap.length;
  return os.str();
}

// A maximal arithmetic progression among points sharing a key.
template <class Key>
struct Progression {
  Key key;
  Cell start;
  Step step;
  int length;
};

// All maximal progressions of length >= min_len among points with equal keys.
// Steps are taken lexicographically positive (dy > 0, or dy == 0 and dx > 0),
// so each progression is reported once, from its first term. Output is sorted
// by (key, start, step).
template <class Key>
std::vector<Progression<Key>> maximal_progressions(std::vector<std::pair<Key, Cell>> points,
                                                   int min_len) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Progression<Key>> out;
  auto has = [&](const Key& k, Cell c) {
    return std::binary_search(points.begin(), points.end(), std::pair<Key, Cell>{k, c});
  };
  for (std::size_t lo = 0; lo < points.size();) {
    std::size_t hi = lo;
    while (hi < points.size() && points[hi].first == points[lo].first) ++hi;
    const Key& key = points[lo].first;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < hi; ++j) {
        const Cell a = points[i].second;
        const Step step = points[j].second - a;
        if (has(key, a - step)) continue;
        int len = 2;
        while (has(key, a + len * step)) ++len;
        if (len >= min_len) out.push_back({key, a, step, len});
      }
    }
    lo = hi;
  }
  return out;
}

// True iff some progression of length >= len exists; stops at the first hit.
template <class Key>
bool has_progression(std::vector<std::pair<Key, Cell>> points, int len) {
  if (len <= 1) return !points.empty();
  std::sort(points.begin(), points.end());
  auto has = [&](const Key& k, Cell c) {
    return std::binary_search(points.begin(), points.end(), std::pair<Key, Cell>{k, c});
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size() && points[j].first == points[i].first; ++j) {
      const Step step = points[j].second - points[i].second;
      int n = 2;
      while (n < len && has(points[i].first, points[i].second + n * step)) ++n;
      if (n >= len) return true;
    }
  }
  return false;
}

namespace detail {
inline std::vector<std::pair<Orientation, Cell>> anchor_points(std::span<const Tile> tiles) {
  std::vector<std::pair<Orientation, Cell>> pts;
  pts.reserve(tiles.size());
  for (const Tile& t : tiles) pts.emplace_back(t.orientation, t.anchor);
  return pts;
}
}  // namespace detail

// Works on any tile list, including partial coverings.
inline std::vector<APWitness> enumerate_aps(std::span<const Tile> tiles, int min_len) {
  if (min_len < 2) throw PreconditionError("enumerate_aps: min_len must be >= 2");
  std::vector<APWitness> out;
  for (const auto& p : maximal_progressions(detail::anchor_points(tiles), min_len))
    out.push_back({p.key, p.start, p.step, p.length});
  return out;
}

inline std::vector<APWitness> enumerate_aps(const Tiling& t, int min_len) {
  return enumerate_aps(t.tiles(), min_len);
}

inline bool has_ap(std::span<const Tile> tiles, int len) {
  return has_progression(detail::anchor_points(tiles), len);
}
inline bool has_ap(const Tiling& t, int len) { return has_ap(t.tiles(), len); }

// Longest AP; ties go to the smallest (orientation, start, step).
inline APWitness longest_ap(std::span<const Tile> tiles) {
  if (tiles.empty()) throw PreconditionError("longest_ap: empty tile set");
  std::optional<APWitness> best;
  for (const APWitness& ap : enumerate_aps(tiles, 2))
    if (!best || ap.length > best->length) best = ap;  // input is sorted, so first max wins
  if (best) return *best;
  const Tile first = *std::min_element(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) {
    return std::pair{a.orientation, a.anchor} < std::pair{b.orientation, b.anchor};
  });
  return {first.orientation, first.anchor, {0, 0}, 1};
}
inline APWitness longest_ap(const Tiling& t) { return longest_ap(t.tiles()); }

// Every term present with the stated orientation.
inline bool verify_ap(const Tiling& t, const APWitness& ap) {
  if (ap.length < 1 || (ap.length >= 2 && ap.step == Step{0, 0})) return false;
  for (int i = 0; i < ap.length; ++i) {
    const Tile x = ap.term(i);
    if (!fits(t.rect(), x) || !t.contains(x)) return false;
  }
  return true;
}

// Residue shared by an AP of length >= 3 whose terms all lie in {r, r+1} mod 4.
// Three consecutive terms satisfy a + c = 2b, which rules out mixing r and r+1.
inline int mod4_class(std::span<const int> terms) {
  if (terms.size() < 3) throw PreconditionError("mod4_class: need at least 3 terms");
  const int d = terms[1] - terms[0];
  for (std::size_t i = 2; i < terms.size(); ++i)
    if (terms[i] - terms[i - 1] != d) throw PreconditionError("mod4_class: not an AP");
  auto res = [](int x) { return ((x % 4) + 4) % 4; };
  unsigned mask = 0;
  for (int x : terms) mask |= 1u << res(x);
  bool confined = false;
  for (int r = 0; r < 4; ++r)
    if ((mask & ~((1u << r) | (1u << ((r + 1) % 4)))) == 0) confined = true;
  if (!confined) throw PreconditionError("mod4_class: residues not within {r, r+1}");
  if (mask & (mask - 1)) throw InvariantViolation("mod4_class: mixed residues in an AP");
  return res(terms[0]);
}

// Step of a length >= 3 AP reduced mod 4, as (dy, dx). For tilings of Walkup
// rectangles it is always (0,0) or (2,2); anything else throws.
inline std::pair<int, int> dxdy_class(const APWitness& ap) {
  if (ap.length < 3) throw PreconditionError("dxdy_class: need an AP of length >= 3");
  auto res = [](int x) { return ((x % 4) + 4) % 4; };
  std::pair<int, int> cls{res(ap.step.row), res(ap.step.col)};
  if (cls != std::pair{0, 0} && cls != std::pair{2, 2})
    throw InvariantViolation("dxdy_class: step class (" + std::to_string(cls.first) + "," +
                             std::to_string(cls.second) + ") for " + to_string(ap));
  return cls;
}

}  // namespace ttap
