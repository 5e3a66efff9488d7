#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ttap/chain_graph.hpp"
#include "ttap/enumerate.hpp"
#include "ttap/io.hpp"

using namespace ttap;

namespace {

const std::vector<Rect>& small_rects() {
  static const std::vector<Rect> r = {{4, 4}, {4, 8}, {8, 4}, {4, 12}, {12, 4}, {8, 8}, {8, 12}, {12, 8}};
  return r;
}

std::set<ChainGraph> graphs_of_tilings(const Rect& r) {
  std::set<ChainGraph> out;
  for_each_tiling(r, [&](const Tiling& t) {
    out.insert(build_chain_graph(t));
    return true;
  });
  return out;
}

// HV output as a set, or empty if the phase produces a non-2-regular graph.
std::optional<std::set<ChainGraph>> hv_set(const Rect& r, int parity) {
  HvOptions o;
  o.gray_parity = parity;
  std::set<ChainGraph> out;
  try {
    for (auto& g : hv_enumerate(r, o)) out.insert(g);
  } catch (const InvariantViolation&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

TEST(ChainGraph, OneEdgePerTileAndRoundTrip) {
  for (Rect r : small_rects())
    for_each_tiling(r, [](const Tiling& t) {
      const ChainGraph g = build_chain_graph(t);
      EXPECT_EQ(g.edges.size(), t.size());
      EXPECT_TRUE(std::is_sorted(g.edges.begin(), g.edges.end()));
      for (const Tile& x : t.tiles()) EXPECT_EQ(tile_for_arrow(t.rect(), arrow_for_tile(t, x)), x);
      EXPECT_EQ(chain_to_tiling(g), t);
      return true;
    });
}

TEST(ChainGraph, EdgesPartitionIntoDirectedCycles) {
  for (Rect r : small_rects())
    for_each_tiling(r, [](const Tiling& t) {
      std::map<Block, int> out_deg, in_deg;
      for (const auto& e : build_chain_graph(t).edges) {
        ++out_deg[e.from];
        ++in_deg[e.to];
      }
      // every block has exactly one arrow out and one in
      EXPECT_EQ(out_deg.size(), static_cast<std::size_t>(t.height() / 2 * t.width() / 2));
      for (auto [b, n] : out_deg) {
        EXPECT_EQ(n, 1);
        EXPECT_EQ(in_deg[b], 1);
      }
      return true;
    });
}

TEST(ChainGraph, EveryEdgeHasExactlyOneGrayFlank) {
  for (Rect r : small_rects())
    for_each_tiling(r, [](const Tiling& t) {
      for (const auto& e : build_chain_graph(t).edges) {
        const auto f = detail::flanks(e.from, e.to);
        EXPECT_NE(antiblock_gray(f[0]), antiblock_gray(f[1]));
      }
      return true;
    });
}

// The gray phase is fixed by requiring HV generation to reproduce exactly the
// chain graphs of real tilings. Only one phase does.
TEST(ChainGraph, GrayParityCalibration) {
  for (Rect r : {Rect{4, 4}, Rect{4, 8}, Rect{8, 8}}) {
    const auto want = graphs_of_tilings(r);
    EXPECT_EQ(hv_set(r, kGrayParity), want);
    const auto other = hv_set(r, 1 - kGrayParity);
    if (r == Rect{4, 4}) {
      EXPECT_NE(other, want);
    }
  }
}

TEST(ChainGraph, HvMatchesEnumerationOnLargerRects) {
  for (Rect r : {Rect{4, 12}, Rect{12, 4}, Rect{8, 12}}) {
    const auto hv = hv_enumerate(r);
    const std::set<ChainGraph> s(hv.begin(), hv.end());
    EXPECT_EQ(s.size(), hv.size()) << "duplicates";
    EXPECT_EQ(s, graphs_of_tilings(r));
  }
}

TEST(ChainGraph, HvStreamIsCanonicalAndStoppable) {
  const auto a = hv_enumerate({8, 8});
  EXPECT_EQ(a, hv_enumerate({8, 8}));
  std::size_t n = 0;
  hv_enumerate({8, 8}, [&](const ChainGraph&) { return ++n < 3; });
  EXPECT_EQ(n, 3u);
  EXPECT_THROW(hv_enumerate({4, 6}), PreconditionError);
}

// For each (direction, shade) the majority/minority geometry admits one tile;
// derive it from every placement of a large rectangle and compare with the
// frozen table.
TEST(ChainGraph, ArrowTableRegression) {
  const Rect r{12, 12};
  std::map<std::pair<int, int>, std::set<std::pair<Orientation, Cell>>> seen;
  for (Orientation o : kOrientations)
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b) {
        const Tile t{o, {a, b}};
        if (!fits(r, t)) continue;
        ChainEdge e;
        try {
          e = chain_edge(t);
        } catch (const InvariantViolation&) {
          continue;  // not aligned with the block grid of any tiling
        }
        const int dir = detail::direction_index(e.to - e.from);
        seen[{dir, static_cast<int>(shade_of(e))}].insert({o, t.anchor - 2 * e.from});
      }
  ASSERT_EQ(seen.size(), 8u);
  for (auto& [k, v] : seen) {
    // several placements per key exist; the ones that occur in tilings are in the table
    const auto& at = detail::kArrowTiles[static_cast<std::size_t>(k.first)][static_cast<std::size_t>(k.second)];
    EXPECT_TRUE(v.count({at.orientation, at.offset})) << k.first << "," << k.second;
  }
  // and every tile of every tiling uses the table entry
  for_each_tiling({8, 8}, [](const Tiling& t) {
    for (const Tile& x : t.tiles()) {
      const ChainEdge e = chain_edge(x);
      const auto& at = detail::kArrowTiles[static_cast<std::size_t>(detail::direction_index(e.to - e.from))]
                                          [static_cast<std::size_t>(shade_of(e))];
      EXPECT_EQ(x.orientation, at.orientation);
      EXPECT_EQ(x.anchor - 2 * e.from, at.offset);
    }
    return true;
  });
  EXPECT_EQ(detail::kArrowTiles[2][0].orientation, Orientation::U);
  EXPECT_EQ(detail::kArrowTiles[0][1].orientation, Orientation::R);
}

TEST(ChainGraph, TileApIffShadedArrowApForLengthThree) {
  int with = 0;
  for_each_tiling({8, 12}, [&](const Tiling& t) {
    const bool tile_ap = has_ap(t, 3);
    EXPECT_EQ(tile_ap, has_shaded_arrow_ap(build_chain_graph(t), 3));
    with += tile_ap;
    return true;
  });
  EXPECT_GT(with, 0);
}

TEST(ChainGraph, TwoApTilesCanCarryDifferentArrows) {
  // Same orientation and a translation apart, yet different arrows: why the
  // arrow criterion needs length at least three.
  bool found = false;
  for_each_tiling({8, 8}, [&](const Tiling& t) {
    for (const Tile& a : t.tiles())
      for (const Tile& b : t.tiles())
        if (a < b && a.orientation == b.orientation) {
          const ShadedArrow x = arrow_for_tile(t, a), y = arrow_for_tile(t, b);
          if (x.edge.to - x.edge.from != y.edge.to - y.edge.from || x.side != y.side) found = true;
        }
    return !found;
  });
  EXPECT_TRUE(found);
}

TEST(ChainGraph, TileForArrowRejectsBadArrows) {
  EXPECT_THROW(tile_for_arrow({8, 8}, {{{0, 0}, {1, 1}}, Shade::Left}), PreconditionError);
  const ChainEdge e{{1, 1}, {1, 2}};
  const Shade wrong = shade_of(e) == Shade::Left ? Shade::Right : Shade::Left;
  EXPECT_THROW(tile_for_arrow({8, 8}, {e, wrong}), PreconditionError);
  EXPECT_THROW(chain_edge({Orientation::U, {1, 1}}), InvariantViolation);
}

TEST(ChainGraph, AntiblockColoringIsACheckerboard) {
  const auto abs = antiblock_coloring({8, 12});
  EXPECT_EQ(abs.size(), 3u * 5u);
  for (const auto& a : abs)
    for (const auto& b : abs)
      if (std::abs(a.index.row - b.index.row) + std::abs(a.index.col - b.index.col) == 1) {
        EXPECT_NE(a.gray, b.gray);
      }
}

TEST(ChainGraph, ChainFileRoundTrip) {
  for_each_tiling({8, 8}, [](const Tiling& t) {
    const ChainGraph g = build_chain_graph(t);
    const std::string s = write_chain(g);
    EXPECT_EQ(read_chain(s), g);
    EXPECT_EQ(write_chain(read_chain(s)), s);
    return true;
  });
  EXPECT_THROW(read_chain("CHAIN 1\n4 4\n0 0 1 1\n"), ParseError);
  EXPECT_THROW(read_chain("CHAIN 1\n4 4\n1 0 0 0\n0 0 0 1\n"), ParseError);
}
