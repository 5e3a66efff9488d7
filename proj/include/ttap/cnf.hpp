#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ttap/tiling.hpp"

namespace ttap {

// Every placement inside a rectangle, ordered by (orientation, row, col).
// Placement id i is CNF variable i + 1.
class PlacementIndex {
 public:
  explicit PlacementIndex(Rect rect) : rect_(rect) {
    for (Orientation o : kOrientations) {
      const Cell ext = tile_extent(o);
      for (int r = 0; r + ext.row <= rect.height; ++r)
        for (int c = 0; c + ext.col <= rect.width; ++c) {
          ids_.emplace(Tile{o, {r, c}}, static_cast<int>(tiles_.size()));
          tiles_.push_back({o, {r, c}});
        }
    }
  }
  const Rect& rect() const { return rect_; }
  std::size_t size() const { return tiles_.size(); }
  const Tile& tile(int id) const { return tiles_[static_cast<std::size_t>(id)]; }
  std::span<const Tile> tiles() const { return tiles_; }
  // -1 when the tile does not fit.
  int id(const Tile& t) const {
    auto it = ids_.find(t);
    return it == ids_.end() ? -1 : it->second;
  }

 private:
  Rect rect_;
  std::vector<Tile> tiles_;
  std::map<Tile, int> ids_;
};

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<Tile> var_map;  // var v -> var_map[v - 1]; empty for non-tiling CNFs
  Rect rect;

  void add(std::vector<int> clause) {
    if (clause.empty()) throw PreconditionError("refusing to add an empty clause");
    for (int l : clause)
      if (l == 0 || std::abs(l) > num_vars) throw PreconditionError("literal out of range");
    clauses.push_back(std::move(clause));
  }
};

// One variable per placement; each cell is covered by exactly one placement
// (an at-least-one clause plus pairwise at-most-one clauses).
inline Cnf build_cnf(const Rect& rect) {
  checked_rect(rect.height, rect.width);
  PlacementIndex idx(rect);
  Cnf cnf;
  cnf.rect = rect;
  cnf.num_vars = static_cast<int>(idx.size());
  cnf.var_map.assign(idx.tiles().begin(), idx.tiles().end());
  std::vector<std::vector<int>> covering(static_cast<std::size_t>(rect.area()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (Cell c : tile_cells(idx.tile(static_cast<int>(i))))
      covering[static_cast<std::size_t>(c.row * rect.width + c.col)].push_back(static_cast<int>(i) + 1);
  bool unreachable = false;
  for (const auto& vars : covering) {
    if (vars.empty()) {
      unreachable = true;
      continue;
    }
    cnf.clauses.push_back(vars);
    for (std::size_t a = 0; a < vars.size(); ++a)
      for (std::size_t b = a + 1; b < vars.size(); ++b) cnf.clauses.push_back({-vars[a], -vars[b]});
  }
  if (unreachable) {
    // Some cell lies in no placement (a side shorter than 2 or 3): encode the
    // contradiction on an auxiliary variable beyond the placement range.
    const int aux = ++cnf.num_vars;
    cnf.clauses.push_back({aux});
    cnf.clauses.push_back({-aux});
  }
  return cnf;
}

struct BlockingOptions {
  // Only block steps congruent to (0,0) or (2,2) mod 4 (sound for l >= 3 on
  // Walkup rectangles by the step-class lemma). Off by default.
  bool prune_step_classes = false;
};

// Forbids every l-term AP of placements: for each orientation, start and step
// (dy > 0, or dy == 0 and dx > 0) with all l terms inside the rectangle, the
// clause "not all l placements".
inline Cnf add_ap_blocking(Cnf cnf, int l, const BlockingOptions& opts = {}) {
  if (l < 2) throw PreconditionError("add_ap_blocking: l must be >= 2");
  const Rect rect = cnf.rect;
  PlacementIndex idx(rect);
  if (cnf.var_map.size() != idx.size()) throw PreconditionError("add_ap_blocking: not a tiling CNF");
  const bool prune = opts.prune_step_classes && l >= 3;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Tile start = idx.tile(static_cast<int>(i));
    const Cell ext = tile_extent(start.orientation);
    const int max_row = rect.height - ext.row, max_col = rect.width - ext.col;
    for (int dy = 0; start.anchor.row + (l - 1) * dy <= max_row; ++dy) {
      for (int dx = -(rect.width - 1); dx < rect.width; ++dx) {
        if (dy == 0 && dx <= 0) continue;
        const int last_col = start.anchor.col + (l - 1) * dx;
        if (last_col < 0 || last_col > max_col) continue;
        if (prune) {
          const int my = dy % 4, mx = ((dx % 4) + 4) % 4;
          if (!((my == 0 && mx == 0) || (my == 2 && mx == 2))) continue;
        }
        std::vector<int> clause;
        clause.reserve(static_cast<std::size_t>(l));
        for (int k = 0; k < l; ++k)
          clause.push_back(-(idx.id({start.orientation, start.anchor + k * Step{dy, dx}}) + 1));
        cnf.clauses.push_back(std::move(clause));
      }
    }
  }
  return cnf;
}

// var(p) <-> var(rot180(p)) for every placement.
inline Cnf add_rot180_symmetry(Cnf cnf) {
  PlacementIndex idx(cnf.rect);
  if (cnf.var_map.size() != idx.size()) throw PreconditionError("add_rot180_symmetry: not a tiling CNF");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const int a = static_cast<int>(i) + 1;
    const int b = idx.id(rotate180(cnf.rect, idx.tile(static_cast<int>(i)))) + 1;
    if (a < b) {
      cnf.clauses.push_back({-a, b});
      cnf.clauses.push_back({a, -b});
    }
  }
  return cnf;
}

// Tiles whose variables are true in the assignment (index v - 1 for var v).
inline std::vector<Tile> decode_placements(const Cnf& cnf, const std::vector<bool>& assignment) {
  std::vector<Tile> tiles;
  for (std::size_t v = 0; v < cnf.var_map.size() && v < assignment.size(); ++v)
    if (assignment[v]) tiles.push_back(cnf.var_map[v]);
  return tiles;
}

// --- DIMACS and sidecar var map ---

inline void write_dimacs(std::ostream& os, const Cnf& cnf) {
  os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
}

inline std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream os;
  write_dimacs(os, cnf);
  return os.str();
}

inline Cnf read_dimacs(std::istream& is) {
  Cnf cnf;
  std::string line;
  int lineno = 0;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> cur;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> cnf.num_vars >> declared) || fmt != "cnf")
        throw ParseError(lineno, 1, "bad DIMACS header");
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, 1, "clause before header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (cur.empty()) throw ParseError(lineno, 0, "empty clause");
        cnf.clauses.push_back(std::move(cur));
        cur.clear();
      } else {
        if (std::abs(lit) > cnf.num_vars) throw ParseError(lineno, 0, "literal exceeds variable count");
        cur.push_back(lit);
      }
    }
    if (!ls.eof()) throw ParseError(lineno, 0, "non-integer token");
  }
  if (!cur.empty()) throw ParseError(lineno, 0, "unterminated clause");
  if (cnf.clauses.size() != declared) throw ParseError(lineno, 0, "clause count differs from header");
  return cnf;
}

inline void write_var_map(std::ostream& os, const Cnf& cnf) {
  for (std::size_t v = 0; v < cnf.var_map.size(); ++v) {
    const Tile& t = cnf.var_map[v];
    os << v + 1 << ' ' << orientation_letter(t.orientation) << ' ' << t.anchor.row << ' '
       << t.anchor.col << '\n';
  }
}

inline std::vector<Tile> read_var_map(std::istream& is) {
  std::vector<Tile> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int v, r, c;
    char o;
    if (!(ls >> v >> o >> r >> c)) throw ParseError(lineno, 0, "expected '<var> <orient> <row> <col>'");
    auto orient = orientation_from_letter(o);
    if (!orient) throw ParseError(lineno, 0, "bad orientation letter");
    if (v != static_cast<int>(out.size()) + 1) throw ParseError(lineno, 1, "variables must be listed in order");
    out.push_back({*orient, {r, c}});
  }
  return out;
}

}  // namespace ttap
