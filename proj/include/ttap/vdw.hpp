#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttap/search.hpp"

namespace ttap {

struct VdwResult {
  int value = 0;                 // W(2, l)
  std::vector<int> extremal;     // a coloring of length W - 1 with no mono l-AP
};

namespace detail {

// Does appending color x at position n (0-based) close a monochromatic l-AP?
inline bool closes_ap(const std::vector<int>& seq, int n, int x, int l) {
  for (int d = 1; (l - 1) * d <= n; ++d) {
    int k = 1;
    while (k < l && seq[static_cast<std::size_t>(n - k * d)] == x) ++k;
    if (k == l) return true;
  }
  return false;
}

inline void vdw_dfs(std::vector<int>& seq, int l, std::vector<int>& best) {
  const int n = static_cast<int>(seq.size());
  if (seq.size() > best.size()) best = seq;
  for (int x = 0; x < 2; ++x) {
    if (n == 0 && x == 1) break;  // colour swap symmetry
    if (closes_ap(seq, n, x, l)) continue;
    seq.push_back(x);
    vdw_dfs(seq, l, best);
    seq.pop_back();
  }
}

}  // namespace detail

inline constexpr int kMaxVdwLength = 4;

// Least W such that every 2-colouring of {1..W} has a monochromatic l-AP, by
// exhaustive extension of AP-free colourings.
inline VdwResult vdw_number(int l, int r = 2) {
  if (r != 2) throw ResourceError("vdw_number: only r = 2 is supported");
  if (l < 1) throw PreconditionError("vdw_number: l must be >= 1");
  if (l > kMaxVdwLength) throw ResourceError("vdw_number: l = " + std::to_string(l) + " is beyond desk scale");
  VdwResult res;
  if (l == 1) return {1, {}};
  std::vector<int> seq;
  detail::vdw_dfs(seq, l, res.extremal);
  res.value = static_cast<int>(res.extremal.size()) + 1;
  return res;
}

// --- 2D grid colourings ---

struct GridColoring {
  int height = 0, width = 0;
  std::vector<std::uint8_t> colors;  // row-major, values 0/1

  GridColoring() = default;
  GridColoring(int h, int w, std::vector<std::uint8_t> c = {}) : height(h), width(w), colors(std::move(c)) {
    if (h < 1 || w < 1) throw PreconditionError("grid colouring dimensions must be >= 1");
    if (colors.empty()) colors.assign(static_cast<std::size_t>(h * w), 0);
    if (colors.size() != static_cast<std::size_t>(h * w)) throw PreconditionError("grid colouring size mismatch");
    for (auto x : colors)
      if (x > 1) throw PreconditionError("grid colours must be 0 or 1");
  }
  int at(Cell c) const { return colors[static_cast<std::size_t>(c.row * width + c.col)]; }
  void set(Cell c, int x) { colors[static_cast<std::size_t>(c.row * width + c.col)] = static_cast<std::uint8_t>(x); }
  friend bool operator==(const GridColoring&, const GridColoring&) = default;
};

struct GridAP {
  Cell start;
  Step step;
  int length = 0;
  Cell term(int i) const { return start + i * step; }
  friend bool operator==(const GridAP&, const GridAP&) = default;
};

inline std::string to_string(const GridAP& ap) {
  return "GridAP start=(" + std::to_string(ap.start.row) + "," + std::to_string(ap.start.col) + ") step=(" +
         std::to_string(ap.step.row) + "," + std::to_string(ap.step.col) + ") len=" + std::to_string(ap.length);
}

namespace detail {

// Calls f(start, step) for every l-term AP inside an h x w grid. Steps are
// lexicographically positive; order is start row-major, then (dy, dx).
template <class F>
void for_each_grid_ap(int h, int w, int l, F&& f) {
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int dy = 0; r + (l - 1) * dy < h; ++dy)
        for (int dx = -(w - 1); dx < w; ++dx) {
          if (dy == 0 && dx <= 0) continue;
          const int last = c + (l - 1) * dx;
          if (last < 0 || last >= w) continue;
          if (!f(Cell{r, c}, Step{dy, dx})) return;
        }
}

}  // namespace detail

// First monochromatic l-AP in canonical order, if any.
inline std::optional<GridAP> grid_mono_ap(const GridColoring& g, int l) {
  if (l < 2) throw PreconditionError("grid_mono_ap: l must be >= 2");
  std::optional<GridAP> found;
  detail::for_each_grid_ap(g.height, g.width, l, [&](Cell s, Step d) {
    const int x = g.at(s);
    for (int k = 1; k < l; ++k)
      if (g.at(s + k * d) != x) return true;
    found = GridAP{s, d, l};
    return false;
  });
  return found;
}

// Stripes alternating by column.
inline GridColoring vertical_stripes(int h, int w) {
  GridColoring g(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) g.set({r, c}, c % 2);
  return g;
}

inline constexpr int kLvdwBruteForceArea = 25;

namespace detail {

// Cell-by-cell search for a colouring with no mono l-AP; only APs ending at
// the cell just coloured are checked.
inline bool grid_avoid_dfs(GridColoring& g, int idx, int l) {
  const int n = g.height * g.width;
  if (idx == n) return true;
  const Cell p{idx / g.width, idx % g.width};
  for (int x = 0; x < 2; ++x) {
    if (idx == 0 && x == 1) break;
    g.set(p, x);
    bool bad = false;
    // p is the last term; earlier terms precede it in row-major order.
    for (int dy = 0; !bad && (l - 1) * dy <= p.row; ++dy)
      for (int dx = -(g.width - 1); dx < g.width; ++dx) {
        if (dy == 0 && dx <= 0) continue;
        const int first = p.col - (l - 1) * dx;
        if (first < 0 || first >= g.width) continue;
        int k = 1;
        while (k < l && g.at(p - k * Step{dy, dx}) == x) ++k;
        if (k == l) {
          bad = true;
          break;
        }
      }
    if (!bad && grid_avoid_dfs(g, idx + 1, l)) return true;
  }
  return false;
}

inline Cnf grid_avoidance_cnf(int h, int w, int l) {
  Cnf cnf;
  cnf.num_vars = h * w;
  cnf.rect = {h, w};
  detail::for_each_grid_ap(h, w, l, [&](Cell s, Step d) {
    std::vector<int> pos, neg;
    for (int k = 0; k < l; ++k) {
      const Cell c = s + k * d;
      const int v = c.row * w + c.col + 1;
      pos.push_back(v);
      neg.push_back(-v);
    }
    cnf.add(std::move(pos));
    cnf.add(std::move(neg));
    return true;
  });
  // Colour-swap symmetry: fix cell 0.
  cnf.add({-1});
  return cnf;
}

}  // namespace detail

struct GridDecision {
  Answer answer = Answer::Unknown;     // Forced: every colouring has a mono l-AP
  std::optional<GridColoring> certificate;
};

// Whether every 2-colouring of h x w has a monochromatic l-AP.
inline GridDecision decide_grid(int h, int w, int l, const SearchConfig& cfg = {}) {
  if (l < 2) throw PreconditionError("decide_grid: l must be >= 2");
  GridColoring g(h, w);
  GridDecision d;
  if (h * w <= kLvdwBruteForceArea) {
    if (detail::grid_avoid_dfs(g, 0, l)) {
      d.answer = Answer::Avoidable;
      d.certificate = g;
    } else {
      d.answer = Answer::Forced;
    }
    return d;
  }
  const Cnf cnf = detail::grid_avoidance_cnf(h, w, l);
  const SolverVerdict v = solve(cnf, cfg);
  if (v.status == sat::Status::Unsat) d.answer = Answer::Forced;
  if (v.status == sat::Status::Sat) {
    for (int i = 0; i < h * w; ++i) g.colors[static_cast<std::size_t>(i)] = (*v.witness)[static_cast<std::size_t>(i)];
    if (grid_mono_ap(g, l)) throw InvariantViolation("grid colouring witness contains a monochromatic AP");
    d.answer = Answer::Avoidable;
    d.certificate = g;
  }
  return d;
}

struct LvdwResult {
  std::optional<int> value;
  int lower = 1;
  std::optional<int> upper;
  std::optional<GridColoring> certificate;  // no mono (value + 1)-AP
};

// Greatest l such that every 2-colouring of h x w has a monochromatic l-AP.
inline LvdwResult compute_Lvdw(int h, int w, const SearchConfig& cfg = {}) {
  if (h < 1 || w < 1) throw PreconditionError("compute_Lvdw: dimensions must be >= 1");
  LvdwResult res;
  if (h * w == 1) {
    res.value = res.upper = 1;
    res.certificate = GridColoring(1, 1);
    return res;
  }
  for (int l = 2;; ++l) {
    const GridDecision d = decide_grid(h, w, l, cfg);
    if (d.answer == Answer::Forced) {
      res.lower = l;
      continue;
    }
    if (d.answer == Answer::Avoidable) {
      res.value = res.upper = l - 1;
      res.certificate = d.certificate;
    }
    return res;
  }
}

struct LvdwPairVerdict {
  Answer at_l = Answer::Unknown;        // Forced confirms L_vdW >= l
  Answer above_l = Answer::Unknown;     // Avoidable confirms L_vdW <= l
  std::optional<GridColoring> certificate;
  bool confirmed() const { return at_l == Answer::Forced && above_l == Answer::Avoidable; }
};

inline LvdwPairVerdict verify_lvdw_pair(int h, int w, int l, const SearchConfig& cfg = {}) {
  LvdwPairVerdict v;
  v.at_l = l < 2 ? Answer::Forced : decide_grid(h, w, l, cfg).answer;
  const GridDecision above = decide_grid(h, w, l + 1, cfg);
  v.above_l = above.answer;
  v.certificate = above.certificate;
  return v;
}

}  // namespace ttap
