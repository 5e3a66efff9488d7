// ttap: command-line front end for the T-tetromino AP library.
//
// Exit status: 0 answered (FORCED and AVOIDABLE alike), 1 bad input data,
// 2 usage, 3 solver failure, 4 UNKNOWN (budget ran out).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ttap/ttap.hpp"

namespace {

using namespace ttap;

constexpr int kExitData = 1, kExitUsage = 2, kExitSolver = 3, kExitUnknown = 4;

struct Common {
  int height = 0, width = 0, len = 3, jobs = 1;
  std::string out, solver, engine = "sat", in, format = "ascii", symmetry = "none";
  std::optional<std::uint64_t> seed;
  double budget = 600.0;
  bool highlight = false, boundaries = false;
  int cell_size = 20;
};

SearchConfig config_from(const Common& c) {
  SearchConfig cfg;
  if (c.engine == "sat") cfg.engine = Engine::Sat;
  else if (c.engine == "internal-backtracking" || c.engine == "backtracking") cfg.engine = Engine::Backtracking;
  else throw PreconditionError("unknown engine '" + c.engine + "' (expected sat or internal-backtracking)");
  cfg.solver_command = c.solver;
  cfg = with_env_solver(cfg);
  cfg.budget_seconds = c.budget;
  cfg.jobs = c.jobs;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw PreconditionError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Writes to --out if given, else stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw PreconditionError("cannot write " + c.out);
  os << text;
}

std::string save_certificate(const Common& c, const std::string& text, const std::string& fallback) {
  const std::string path = c.out.empty() ? fallback : c.out;
  std::ofstream os(path);
  if (!os) throw PreconditionError("cannot write " + path);
  os << text;
  return path;
}

std::string first_word(const std::string& text) {
  std::istringstream is(text);
  std::string w;
  is >> w;
  return w;
}

void require_dims(const Common& c) {
  if (c.height <= 0 || c.width <= 0) throw PreconditionError("--height and --width are required");
}

int cmd_tile(const Common& c) {
  require_dims(c);
  const auto t = find_tiling({c.height, c.width}, c.seed);
  if (!t) {
    std::cout << "UNTILEABLE\n";
    return 0;
  }
  emit(c, write_tiling(*t));
  return 0;
}

int report_decision(const Common& c, const Decision& d, const std::string& stem) {
  std::cout << to_string(d.answer) << '\n';
  if (d.answer == Answer::Avoidable) {
    const std::string path = save_certificate(c, write_tiling(*d.certificate), stem + ".ttiling");
    std::cout << "certificate " << path << '\n';
    std::cout << "longest " << to_string(longest_ap(*d.certificate)) << '\n';
  }
  return d.answer == Answer::Unknown ? kExitUnknown : 0;
}

int cmd_decide(const Common& c, bool symmetric) {
  require_dims(c);
  const AvoidQuery q{{c.height, c.width}, c.len, symmetric};
  const Decision d = decide(q, config_from(c));
  return report_decision(c, d, "tiling_" + std::to_string(c.height) + "x" + std::to_string(c.width) + "_no" +
                                   std::to_string(c.len) + "ap" + (symmetric ? "_rot180" : ""));
}

void print_bracket(const std::string& name, const Bracket& b) {
  if (b.value) {
    std::cout << *b.value << '\n';
    return;
  }
  std::cout << "UNKNOWN " << name << " in [" << b.lower + (name == "T" ? 4 : 0) << ", "
            << (b.upper ? std::to_string(*b.upper) : std::string("inf")) << "]\n";
}

int cmd_tvalue(const Common& c) {
  if (c.width <= 0) throw PreconditionError("--width is required");
  std::optional<int> ceiling;
  if (c.len <= kMaxVdwLength && (c.width == 4 || c.width == 8 || c.width == 12 || c.width == 16))
    ceiling = 4 * vdw_number(c.len).value;
  const Bracket b = compute_T(c.width, c.len, config_from(c), ceiling);
  for (const auto& [n, a] : b.trail) std::cerr << c.width << "x" << n << " l=" << c.len << ": " << to_string(a) << '\n';
  print_bracket("T", b);
  if (b.certificate && !c.out.empty()) save_certificate(c, write_tiling(*b.certificate), c.out);
  return b.value ? 0 : kExitUnknown;
}

int cmd_lvalue(const Common& c) {
  require_dims(c);
  const Bracket b = compute_L(c.height, c.width, config_from(c));
  for (const auto& [l, a] : b.trail) std::cerr << "l=" << l << ": " << to_string(a) << '\n';
  print_bracket("L", b);
  if (b.certificate && !c.out.empty()) save_certificate(c, write_tiling(*b.certificate), c.out);
  return b.value ? 0 : kExitUnknown;
}

int cmd_vdw(const Common& c) {
  const VdwResult r = vdw_number(c.len);
  std::cout << r.value << '\n';
  if (!c.out.empty()) {
    GridColoring g(1, std::max(1, r.value - 1));
    for (std::size_t i = 0; i < r.extremal.size(); ++i) g.colors[i] = static_cast<std::uint8_t>(r.extremal[i]);
    save_certificate(c, write_coloring(g), c.out);
  }
  return 0;
}

int cmd_vdw2d(const Common& c) {
  require_dims(c);
  const LvdwResult r = compute_Lvdw(c.height, c.width, config_from(c));
  if (r.value) {
    std::cout << *r.value << '\n';
  } else {
    std::cout << "UNKNOWN L_vdW in [" << r.lower << ", inf]\n";
  }
  if (r.certificate && !c.out.empty()) save_certificate(c, write_coloring(*r.certificate), c.out);
  return r.value ? 0 : kExitUnknown;
}

int cmd_chaingraph(const Common& c) {
  const Tiling t = read_tiling(slurp(c.in));
  emit(c, write_chain(build_chain_graph(t)));
  return 0;
}

int cmd_verify(const Common& c, bool len_given) {
  const std::string text = slurp(c.in);
  const std::string magic = first_word(text);
  if (magic == "TCOLOR") {
    const GridColoring g = read_coloring(text);
    const auto ap = len_given ? grid_mono_ap(g, c.len) : std::nullopt;
    std::cout << "VALID TCOLOR " << g.height << "x" << g.width << '\n';
    if (len_given) {
      std::cout << (ap ? "HAS " + to_string(*ap) : "NO monochromatic " + std::to_string(c.len) + "-AP") << '\n';
      return ap ? kExitData : 0;
    }
    return 0;
  }
  Tiling t = magic == "CHAIN" ? chain_to_tiling(read_chain(text)) : read_tiling(text);
  const APWitness ap = longest_ap(t);
  std::cout << "VALID " << t.height() << "x" << t.width() << " tiles=" << t.size() << '\n';
  std::cout << "longest " << to_string(ap) << '\n';
  if (len_given && ap.length >= c.len) {
    std::cout << "HAS " << c.len << "-AP\n";
    return kExitData;
  }
  return 0;
}

int cmd_render(const Common& c) {
  RenderOptions o;
  if (c.format == "ascii") o.format = RenderFormat::Ascii;
  else if (c.format == "svg") o.format = RenderFormat::Svg;
  else throw PreconditionError("unknown format '" + c.format + "'");
  o.cell_size = c.cell_size;
  o.boundaries = c.boundaries;
  const std::string text = slurp(c.in);
  const std::string magic = first_word(text);
  if (magic == "TCOLOR") {
    emit(c, render(read_coloring(text), o));
  } else if (magic == "CHAIN") {
    emit(c, render(read_chain(text), o));
  } else {
    const Tiling t = read_tiling(text);
    if (c.highlight) {
      const APWitness ap = longest_ap(t);
      if (ap.length >= 2) o.highlight.push_back(ap);
    }
    emit(c, render(t, o));
  }
  return 0;
}

// Built-in solver behind the external-solver contract: DIMACS path in,
// SAT-competition output out.
int cmd_solve_dimacs(const Common& c) {
  std::ifstream is(c.in);
  if (!is) throw PreconditionError("cannot open " + c.in);
  const Cnf cnf = read_dimacs(is);
  sat::Solver s;
  for (int i = 0; i < cnf.num_vars; ++i) s.new_var();
  for (const auto& cl : cnf.clauses)
    if (!s.add_clause(cl)) break;
  const auto st = s.solve();
  if (st == sat::Status::Sat) {
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= cnf.num_vars; ++v) std::cout << ' ' << (s.model_value(v) ? v : -v);
    std::cout << " 0\n";
    return 10;
  }
  std::cout << (st == sat::Status::Unsat ? "s UNSATISFIABLE\n" : "s UNKNOWN\n");
  return st == sat::Status::Unsat ? 20 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-tetromino tilings and arithmetic progressions of tiles"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--height", c.height, "rectangle height (cells)");
  app.add_option("--width", c.width, "rectangle width (cells)");
  app.add_option("--out", c.out, "output file (default stdout, or a generated certificate name)");
  app.add_option("--solver", c.solver, "external SAT solver command; overrides TTR_SOLVER");
  app.add_option("--engine", c.engine, "sat or internal-backtracking");
  app.add_option("--jobs", c.jobs, "parallel decisions")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "shuffle seed for tile");
  app.add_option("--budget-seconds", c.budget, "per-solve time budget")->check(CLI::PositiveNumber);

  auto* tile = app.add_subcommand("tile", "print some tiling of the rectangle");
  auto* apfree = app.add_subcommand("apfree", "find a tiling with no AP of the given length");
  apfree->add_option("--len", c.len, "forbidden AP length")->required();
  apfree->add_option("--symmetry", c.symmetry, "none or rot180")->check(CLI::IsMember({"none", "rot180"}));
  auto* dec = app.add_subcommand("decide", "does every tiling contain an AP of length --len?");
  dec->add_option("--len", c.len, "AP length")->required();
  auto* tval = app.add_subcommand("tvalue", "least N with (width, N) -> len");
  tval->add_option("--len", c.len, "AP length")->required();
  auto* lval = app.add_subcommand("lvalue", "greatest l with (height, width) -> l");
  auto* vdw = app.add_subcommand("vdw", "van der Waerden number W(2, len)");
  vdw->add_option("--len", c.len, "AP length")->required();
  auto* vdw2d = app.add_subcommand("vdw2d", "greatest l forced in every 2-colouring of the grid");
  auto* chain = app.add_subcommand("chaingraph", "chain graph of a tiling");
  chain->add_option("--in", c.in, "TTILING file")->required();
  auto* verify = app.add_subcommand("verify", "check a TTILING, CHAIN or TCOLOR file");
  verify->add_option("--in", c.in, "input file")->required();
  auto* vlen = verify->add_option("--len", c.len, "fail if an AP of this length exists");
  auto* rend = app.add_subcommand("render", "draw a tiling, colouring or chain graph");
  rend->add_option("--in", c.in, "input file")->required();
  rend->add_option("--format", c.format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
  rend->add_flag("--highlight-ap", c.highlight, "stroke the longest AP");
  rend->add_flag("--boundaries", c.boundaries, "ascii: draw tile borders");
  rend->add_option("--cell-size", c.cell_size, "svg cell size in px")->check(CLI::PositiveNumber);
  auto* sd = app.add_subcommand("solve-dimacs", "solve a DIMACS file, SAT-competition output");
  sd->add_option("--in,file", c.in, "DIMACS file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tile) return cmd_tile(c);
    if (*apfree) return cmd_decide(c, c.symmetry == "rot180");
    if (*dec) return cmd_decide(c, false);
    if (*tval) return cmd_tvalue(c);
    if (*lval) return cmd_lvalue(c);
    if (*vdw) return cmd_vdw(c);
    if (*vdw2d) return cmd_vdw2d(c);
    if (*chain) return cmd_chaingraph(c);
    if (*verify) return cmd_verify(c, vlen->count() > 0);
    if (*rend) return cmd_render(c);
    if (*sd) return cmd_solve_dimacs(c);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
