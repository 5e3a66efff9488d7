// Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
// Exit status is nonzero iff some criterion failed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "ttap/ttap.hpp"

using namespace ttap;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Fails the criterion with a message; keeps going so the detail is complete.
struct Check {
  Outcome& out;
  void operator()(bool cond, const std::string& what) {
    if (!cond) {
      out.ok = false;
      out.detail += (out.detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Check&, Outcome&)>& body) {
  Outcome o;
  Check check{o};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(check, o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail += std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time limit");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs / %.0fs", secs, limit_s);
  std::cout << (o.ok ? "PASS " : "FAIL ") << id << ". " << name << " [" << buf << "]";
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
  failures += !o.ok;
}

std::string sz(int h, int w) { return std::to_string(h) + "x" + std::to_string(w); }

// Avoidable answer whose certificate passes checks independent of the solver.
void expect_avoidable(Check& check, Outcome& o, const AvoidQuery& q, const SearchConfig& cfg) {
  const Decision d = decide(q, cfg);
  const std::string name = sz(q.rect.height, q.rect.width) + " l=" + std::to_string(q.len) + (q.rot180 ? " rot180" : "");
  check(d.answer == Answer::Avoidable, name + " not AVOIDABLE (" + to_string(d.answer) + ")");
  if (!d.certificate) return;
  const Tiling& t = *d.certificate;
  // re-read from the file format, then check everything from scratch
  const Tiling back = read_tiling(write_tiling(t));
  check(back == t, name + " certificate does not round-trip");
  check(validate(back.rect(), back.tiles()).ok(), name + " certificate invalid");
  check(longest_ap(back).length < q.len, name + " certificate has an AP");
  if (q.rot180) check(rotate180(back) == back, name + " certificate not symmetric");
  o.detail += (o.detail.empty() ? "" : "; ") + name + " longest AP " + std::to_string(longest_ap(back).length);
}

}  // namespace

int main() {
  SearchConfig cfg;  // built-in solver unless TTR_SOLVER is set
  cfg = with_env_solver(cfg);

  criterion(1, "Walkup tileability for 4 <= h,w <= 16", 60, [](Check& check, Outcome&) {
    for (int h = 4; h <= 16; ++h)
      for (int w = 4; w <= 16; ++w)
        check(find_tiling({h, w}).has_value() == (h % 4 == 0 && w % 4 == 0), sz(h, w));
  });

  criterion(2, "4x4 census: exactly two tilings, both pinwheels", 1, [](Check& check, Outcome&) {
    const auto ts = enumerate_tilings({4, 4});
    check(ts.size() == 2, "count " + std::to_string(ts.size()));
    std::set<std::vector<Tile>> got;
    for (const auto& t : ts) got.insert({t.tiles().begin(), t.tiles().end()});
    const Tiling a({4, 4}, unit_a_tiles()), b({4, 4}, unit_b_tiles());
    check(got.count({a.tiles().begin(), a.tiles().end()}) && got.count({b.tiles().begin(), b.tiles().end()}),
          "not the pinwheels");
    for (const auto& t : ts) check(!has_ap(t, 2), "pinwheel with a 2-AP");
  });

  criterion(3, "boundary coverings: 7 squares force a 2-AP, 6 do not", 10, [](Check& check, Outcome& o) {
    check(boundary_forces(7, 2), "some covering of 7 avoids a 2-AP");
    check(!boundary_forces(6, 2), "every covering of 6 has a 2-AP");
    o.detail = std::to_string(enumerate_boundary_coverings(7).size()) + " coverings of 7 checked";
  });

  criterion(4, "W(2,2)=3, W(2,3)=9, W(2,4)=35", 10, [](Check& check, Outcome&) {
    const int want[] = {0, 0, 3, 9, 35};
    for (int l = 2; l <= 4; ++l) {
      const VdwResult r = vdw_number(l);
      check(r.value == want[l], "W(2," + std::to_string(l) + ")=" + std::to_string(r.value));
      const GridColoring g(1, static_cast<int>(r.extremal.size()),
                           std::vector<std::uint8_t>(r.extremal.begin(), r.extremal.end()));
      check(!grid_mono_ap(g, l), "extremal colouring has a mono AP");
    }
  });

  criterion(5, "width 4, l=3: 4x36 FORCED, 4x32 AVOIDABLE with verified certificate, each < 60s", 120,
            [&](Check& check, Outcome& o) {
              auto timed = [](auto&& f) {
                const auto t0 = std::chrono::steady_clock::now();
                f();
                return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
              };
              const double t36 = timed([&] { check(decide_forces(4, 36, 3, cfg).answer == Answer::Forced, "4x36 not FORCED"); });
              const double t32 = timed([&] { expect_avoidable(check, o, {{4, 32}, 3, false}, cfg); });
              check(t36 < 60 && t32 < 60, "a single decision took over 60s");
            });

  criterion(6, "width 8, l=3: 8x36 FORCED, 8x32 AVOIDABLE by two stacked rows", 600, [&](Check& check, Outcome& o) {
    check(decide_forces(8, 36, 3, cfg).answer == Answer::Forced, "8x36 not FORCED");
    const VdwResult w = vdw_number(3);
    std::string row;
    for (int x : w.extremal) row += x ? 'B' : 'A';
    const Tiling t = stack_rows(TwoColoring(row), 2);
    check(t.rect() == Rect{8, 32}, "stack has wrong size");
    check(longest_ap(t).length < 3, "stacked rows contain a 3-AP");
    o.detail = "rows " + row;
    expect_avoidable(check, o, {{8, 32}, 3, false}, cfg);
  });

  criterion(7, "lemma suite on 4xN (N<=16), 8x8, 8x12", 600, [](Check& check, Outcome& o) {
    std::size_t n = 0, aps = 0;
    for (int len = 4; len <= 16; len += 4)
      for_each_tiling({4, len}, [&](const Tiling& t) {
        ++n;
        const auto [all, d1] = d1_equiv_check(t, 3);
        check(all == d1, "d1 equivalence fails on 4x" + std::to_string(len));
        const Tiling m = ab_map(t);
        check(has_ap(m, 3) == all, "AB equivalence fails on 4x" + std::to_string(len));
        check(ab_map(m) == m, "ab_map not idempotent");
        check(d1_tiles(m) == d1_tiles(t), "ab_map moves a d1 tile");
        for (const auto& ap : enumerate_aps(t, 3)) {
          ++aps;
          dxdy_class(ap);  // throws on a bad class
        }
        return true;
      });
    for (Rect r : {Rect{8, 8}, Rect{8, 12}})
      for_each_tiling(r, [&](const Tiling& t) {
        ++n;
        for (const auto& ap : enumerate_aps(t, 3)) {
          ++aps;
          dxdy_class(ap);
        }
        return true;
      });
    std::size_t mod4 = 0;
    for (int a = 0; a < 100; ++a)
      for (int d = 1; a + 2 * d < 100; ++d)
        for (int len = 3; a + (len - 1) * d < 100; ++len) {
        std::vector<int> terms;
        for (int k = 0; k < len; ++k) terms.push_back(a + k * d);
        try {
          const int r = mod4_class(terms);
          ++mod4;
          for (int x : terms) check(x % 4 == r, "mod-4 residue differs");
        } catch (const PreconditionError&) {
          // residues not confined to two neighbours: outside the lemma
        }
      }
    o.detail = std::to_string(n) + " tilings, " + std::to_string(aps) + " 3-APs, " + std::to_string(mod4) +
               " confined APs in 0..99";
  });

  criterion(8, "chain graphs: bijection, HV completeness, arrow APs", 900, [](Check& check, Outcome& o) {
    std::size_t n = 0;
    for (Rect r : {Rect{4, 4}, Rect{4, 8}, Rect{8, 4}, Rect{4, 12}, Rect{12, 4}, Rect{8, 8}, Rect{8, 12}, Rect{12, 8}})
      for_each_tiling(r, [&](const Tiling& t) {
        ++n;
        const ChainGraph g = build_chain_graph(t);
        check(g.edges.size() == t.size(), "edge count");
        for (const Tile& x : t.tiles())
          check(tile_for_arrow(t.rect(), arrow_for_tile(t, x)) == x, "tile/arrow round trip");
        check(chain_to_tiling(g) == t, "chain_to_tiling");
        return true;
      });
    for (Rect r : {Rect{4, 4}, Rect{4, 8}, Rect{8, 8}}) {
      std::set<ChainGraph> from_tilings, from_hv;
      for_each_tiling(r, [&](const Tiling& t) { from_tilings.insert(build_chain_graph(t)); return true; });
      for (const auto& g : hv_enumerate(r)) from_hv.insert(g);
      check(from_tilings == from_hv, "HV set differs on " + sz(r.height, r.width));
    }
    std::size_t with = 0;
    for_each_tiling({8, 12}, [&](const Tiling& t) {
      const bool a = has_ap(t, 3);
      with += a;
      check(a == has_shaded_arrow_ap(build_chain_graph(t), 3), "tile AP vs arrow AP on 8x12");
      return true;
    });
    o.detail = std::to_string(n) + " tilings round-tripped, " + std::to_string(with) + " 8x12 tilings with a 3-AP";
  });

  criterion(9, "3x5 grid: every colouring has a mono 3-AP, stripes avoid 4, L_vdW(3,5)=3", 10,
            [&](Check& check, Outcome&) {
              GridColoring g(3, 5);
              for (unsigned m = 0; m < (1u << 15); ++m) {
                for (int i = 0; i < 15; ++i) g.colors[static_cast<std::size_t>(i)] = (m >> i) & 1u;
                check(grid_mono_ap(g, 3).has_value(), "colouring " + std::to_string(m) + " avoids 3-AP");
              }
              check(!grid_mono_ap(vertical_stripes(3, 5), 4), "stripes contain a 4-AP");
              check(compute_Lvdw(3, 5, cfg).value == 3, "L_vdW(3,5) != 3");
            });

  criterion(10, "SAT constructions: 12x20, 20x20, symmetric 20x20 without 3-APs", 1800, [&](Check& check, Outcome& o) {
    expect_avoidable(check, o, {{12, 20}, 3, false}, cfg);
    expect_avoidable(check, o, {{20, 20}, 3, false}, cfg);
    expect_avoidable(check, o, {{20, 20}, 3, true}, cfg);
  });

  criterion(11, "widths 12 and 16: 3-AP-free tilings of 12x16, 12x32, 16x16, 16x32 (slow suite)", 7200,
            [&](Check& check, Outcome& o) {
              for (int h : {12, 16})
                for (int w : {16, 32}) expect_avoidable(check, o, {{h, w}, 3, false}, cfg);
            });

  // Declared out of desk scale; not counted. A cheap spot-check shows the
  // bracketing jobs work.
  {
    const auto t0 = std::chrono::steady_clock::now();
    const LvdwPairVerdict v = verify_lvdw_pair(4, 100, 4, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    std::cout << "DECLARED 12. full L/L_vdW table, 16x136 no-4-AP tiling, L_vdW=4 pairs: long-running jobs, "
                 "not run here [spot check L_vdW(4,100)=4 "
              << (v.confirmed() ? "confirmed" : "NOT confirmed") << " in " << buf << "]" << std::endl;
  }

  std::cout << (failures ? "FAILED" : "ALL PASSED") << " (" << failures << " failing)" << std::endl;
  return failures ? 1 : 0;
}
