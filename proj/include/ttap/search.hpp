#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "ttap/ap.hpp"
#include "ttap/cdcl.hpp"
#include "ttap/cnf.hpp"
#include "ttap/enumerate.hpp"

namespace ttap {

enum class Engine { Backtracking, Sat };

inline const char* to_string(Engine e) { return e == Engine::Backtracking ? "internal-backtracking" : "sat"; }

struct SearchConfig {
  Engine engine = Engine::Sat;
  // External solver command; empty means the built-in CDCL solver. The
  // command gets the DIMACS file path appended as its last argument.
  std::string solver_command;
  double budget_seconds = 600.0;
  int jobs = 1;
  bool deterministic = true;
  std::uint64_t seed = 0;
  // Rectangles up to this area are also decided by the enumerator and the two
  // answers compared.
  int oracle_area = 96;
  bool cross_check = true;
  BlockingOptions blocking;
  // Extra sizes scanned past the first forced size in compute_T, each of
  // which must also be forced.
  int monotone_extra = 0;
};

inline constexpr int kInternalSolverMaxVars = 5000;

// Reads TTR_SOLVER when no command was given explicitly.
inline SearchConfig with_env_solver(SearchConfig cfg) {
  if (cfg.solver_command.empty())
    if (const char* s = std::getenv("TTR_SOLVER"); s && *s) cfg.solver_command = s;
  return cfg;
}

struct SolverVerdict {
  sat::Status status = sat::Status::Unknown;
  std::optional<std::vector<bool>> witness;  // index v - 1 for variable v
  double seconds = 0.0;
};

namespace detail {

inline bool satisfies(const Cnf& cnf, const std::vector<bool>& a) {
  for (const auto& c : cnf.clauses) {
    bool sat = false;
    for (int l : c) {
      const bool v = a[static_cast<std::size_t>(std::abs(l) - 1)];
      if ((l > 0) == v) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

inline SolverVerdict solve_internal(const Cnf& cnf, const SearchConfig& cfg) {
  if (cnf.num_vars > kInternalSolverMaxVars)
    throw SolverError("no external solver configured and " + std::to_string(cnf.num_vars) +
                      " variables exceed the built-in solver limit of " +
                      std::to_string(kInternalSolverMaxVars));
  sat::Solver s;
  for (int i = 0; i < cnf.num_vars; ++i) s.new_var();
  for (const auto& c : cnf.clauses)
    if (!s.add_clause(c)) break;
  sat::Limits lim;
  lim.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(cfg.budget_seconds));
  SolverVerdict v;
  v.status = s.solve(lim);
  if (v.status == sat::Status::Sat) {
    std::vector<bool> a(static_cast<std::size_t>(cnf.num_vars));
    for (int i = 0; i < cnf.num_vars; ++i) a[static_cast<std::size_t>(i)] = s.model_value(i + 1);
    v.witness = std::move(a);
  }
  return v;
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// Parses SAT-competition output ("s ..." status line, "v ..." value lines).
inline SolverVerdict parse_solver_output(std::istream& is, int num_vars) {
  SolverVerdict v;
  std::optional<sat::Status> status;
  std::vector<bool> a(static_cast<std::size_t>(num_vars), false);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.rfind("s ", 0) == 0) {
      const std::string s = line.substr(2);
      if (s.rfind("SATISFIABLE", 0) == 0) status = sat::Status::Sat;
      else if (s.rfind("UNSATISFIABLE", 0) == 0) status = sat::Status::Unsat;
      else if (s.rfind("UNKNOWN", 0) == 0) status = sat::Status::Unknown;
      else throw SolverError("malformed solver status line " + std::to_string(lineno) + ": " + line);
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream ls(line.substr(1));
      int lit;
      while (ls >> lit) {
        if (lit == 0) continue;
        if (std::abs(lit) > num_vars) throw SolverError("solver value out of range on line " + std::to_string(lineno));
        a[static_cast<std::size_t>(std::abs(lit) - 1)] = lit > 0;
      }
    }
  }
  if (!status) throw SolverError("solver printed no status line");
  v.status = *status;
  if (v.status == sat::Status::Sat) v.witness = std::move(a);
  return v;
}

inline SolverVerdict solve_external(const Cnf& cnf, const SearchConfig& cfg) {
  namespace fs = std::filesystem;
  static std::atomic<unsigned> counter{0};
  const fs::path path = fs::temp_directory_path() /
                        ("ttap_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".cnf");
  {
    std::ofstream os(path);
    if (!os) throw SolverError("cannot write " + path.string());
    write_dimacs(os, cnf);
  }
  const long secs = std::max(1L, static_cast<long>(std::ceil(cfg.budget_seconds)));
  const std::string cmd = "timeout -k 2 " + std::to_string(secs) + " " + cfg.solver_command + " " +
                          shell_quote(path.string()) + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    fs::remove(path);
    throw SolverError("cannot start solver: " + cfg.solver_command);
  }
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int rc = ::pclose(pipe);
  std::error_code ec;
  fs::remove(path, ec);
  const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  if (code == 124 || code == 137) return {sat::Status::Unknown, std::nullopt, 0.0};
  if (code == 126 || code == 127) throw SolverError("solver not found: " + cfg.solver_command);
  std::istringstream is(out);
  return parse_solver_output(is, cnf.num_vars);
}

}  // namespace detail

// Runs the configured solver. SAT answers are checked against every clause
// before being returned; UNSAT answers are taken on trust.
inline SolverVerdict solve(const Cnf& cnf, const SearchConfig& cfg) {
  if (cfg.budget_seconds <= 0) throw PreconditionError("solver budget must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  SolverVerdict v = cfg.solver_command.empty() ? detail::solve_internal(cnf, cfg)
                                               : detail::solve_external(cnf, cfg);
  if (v.status == sat::Status::Sat && (!v.witness || !detail::satisfies(cnf, *v.witness)))
    throw SolverError("solver reported SAT with an assignment that violates the formula");
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

// --- Decision layer ---

enum class Answer { Forced, Avoidable, Unknown };

inline const char* to_string(Answer a) {
  switch (a) {
    case Answer::Forced: return "FORCED";
    case Answer::Avoidable: return "AVOIDABLE";
    case Answer::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct Decision {
  Answer answer = Answer::Unknown;
  std::optional<Tiling> certificate;  // present iff Avoidable
  bool cross_checked = false;
  double seconds = 0.0;
};

struct AvoidQuery {
  Rect rect;
  int len = 3;          // forbid APs of this length
  bool rot180 = false;  // only look for half-turn symmetric tilings
};

inline Cnf avoidance_cnf(const AvoidQuery& q, const BlockingOptions& blocking = {}) {
  Cnf cnf = add_ap_blocking(build_cnf(q.rect), q.len, blocking);
  if (q.rot180) cnf = add_rot180_symmetry(std::move(cnf));
  return cnf;
}

// Certificate check independent of the solver: valid tiling, no AP of the
// forbidden length, and symmetric when symmetry was requested.
inline bool certificate_ok(const Tiling& t, const AvoidQuery& q) {
  return t.rect() == q.rect && !has_ap(t, q.len) && (!q.rot180 || rotate180(t) == t);
}

namespace detail {

inline Decision decide_by_enumeration(const AvoidQuery& q, int max_area) {
  const auto t0 = std::chrono::steady_clock::now();
  Decision d{Answer::Forced, std::nullopt, false, 0.0};
  EnumerateOptions opts;
  opts.max_area = max_area;
  for_each_tiling(q.rect, [&](const Tiling& t) {
    if (certificate_ok(t, q)) {
      d.answer = Answer::Avoidable;
      d.certificate = t;
      return false;
    }
    return true;
  }, opts);
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return d;
}

inline Decision decide_by_sat(const AvoidQuery& q, const SearchConfig& cfg) {
  const Cnf cnf = avoidance_cnf(q, cfg.blocking);
  const SolverVerdict v = solve(cnf, cfg);
  Decision d;
  d.seconds = v.seconds;
  switch (v.status) {
    case sat::Status::Unsat: d.answer = Answer::Forced; break;
    case sat::Status::Unknown: d.answer = Answer::Unknown; break;
    case sat::Status::Sat: {
      Tiling t(q.rect, decode_placements(cnf, *v.witness));
      if (!certificate_ok(t, q))
        throw InvariantViolation("SAT witness for " + std::to_string(q.rect.height) + "x" +
                                 std::to_string(q.rect.width) + " fails independent re-check");
      d.answer = Answer::Avoidable;
      d.certificate = std::move(t);
      break;
    }
  }
  return d;
}

}  // namespace detail

// Forced iff every tiling (symmetric ones, if requested) contains an AP of
// length q.len. Unknown is reported as such, never folded into a boolean.
inline Decision decide(const AvoidQuery& q, const SearchConfig& cfg) {
  if (q.len < 2) throw PreconditionError("decide: l must be >= 2");
  if (!is_tileable(q.rect))
    throw PreconditionError("decide: sides must be positive multiples of 4");
  if (cfg.engine == Engine::Backtracking) return detail::decide_by_enumeration(q, cfg.oracle_area);
  Decision d = detail::decide_by_sat(q, cfg);
  if (cfg.cross_check && d.answer != Answer::Unknown && q.rect.area() <= cfg.oracle_area) {
    const Decision o = detail::decide_by_enumeration(q, cfg.oracle_area);
    if (o.answer != d.answer)
      throw InvariantViolation(std::string("SAT and enumeration disagree on ") +
                               std::to_string(q.rect.height) + "x" + std::to_string(q.rect.width) +
                               " l=" + std::to_string(q.len));
    d.cross_checked = true;
  }
  return d;
}

inline Decision decide_forces(int h, int w, int l, const SearchConfig& cfg) {
  return decide({Rect{h, w}, l, false}, cfg);
}

// A bracket [lower, upper] on an extremal value, exact when value is set.
struct Bracket {
  std::optional<int> value;
  int lower = 0;                  // largest size/length known on the "below" side
  std::optional<int> upper;       // smallest known on the "above" side
  std::optional<Tiling> certificate;
  std::vector<std::pair<int, Answer>> trail;  // every (size or length, answer) decided
};

namespace detail {
// Decides a batch of sizes, in parallel when jobs > 1; results keep input order.
inline std::vector<Decision> decide_batch(const std::vector<AvoidQuery>& qs, const SearchConfig& cfg) {
  std::vector<Decision> out;
  if (cfg.jobs <= 1 || qs.size() <= 1) {
    for (const auto& q : qs) out.push_back(decide(q, cfg));
    return out;
  }
  std::vector<std::future<Decision>> fs;
  for (const auto& q : qs) fs.push_back(std::async(std::launch::async, [&cfg, q] { return decide(q, cfg); }));
  for (auto& f : fs) out.push_back(f.get());
  return out;
}
}  // namespace detail

// Least multiple-of-4 length N with (w, N) -> l, scanning upwards. `ceiling`,
// when given, is a size known to be forced (4 W(2, l)); the scan stops there.
inline Bracket compute_T(int w, int l, const SearchConfig& cfg, std::optional<int> ceiling = std::nullopt) {
  if (w < 4 || w % 4 != 0) throw PreconditionError("compute_T: width must be a positive multiple of 4");
  if (l < 2) throw PreconditionError("compute_T: l must be >= 2");
  Bracket b;
  b.upper = ceiling;
  const int batch = std::max(1, cfg.jobs);
  for (int n = 4;;) {
    std::vector<AvoidQuery> qs;
    for (int k = 0; k < batch && (!ceiling || n + 4 * k <= *ceiling); ++k) qs.push_back({{w, n + 4 * k}, l, false});
    if (qs.empty()) break;
    const auto ds = detail::decide_batch(qs, cfg);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const int size = qs[i].rect.width;
      b.trail.emplace_back(size, ds[i].answer);
      if (ds[i].answer == Answer::Avoidable) {
        b.lower = size;
        b.certificate = ds[i].certificate;
        continue;
      }
      if (ds[i].answer == Answer::Unknown) return b;
      b.value = size;
      b.upper = size;
      for (int extra = 1; extra <= cfg.monotone_extra; ++extra) {
        const int m = size + 4 * extra;
        const Decision d = decide({{w, m}, l, false}, cfg);
        b.trail.emplace_back(m, d.answer);
        if (d.answer == Answer::Avoidable)
          throw InvariantViolation("compute_T: " + std::to_string(w) + "x" + std::to_string(m) +
                                   " avoids an AP after " + std::to_string(size) + " was forced");
      }
      return b;
    }
    n += 4 * static_cast<int>(qs.size());
  }
  if (ceiling && b.lower == *ceiling)
    throw InvariantViolation("compute_T: the ceiling size is not forced");
  return b;
}

// Greatest l with (h, w) -> l. Every nonempty tiling has a 1-term AP, so the
// scan starts at l = 2. The certificate avoids an AP of length value + 1.
inline Bracket compute_L(int h, int w, const SearchConfig& cfg) {
  if (!is_tileable({h, w})) throw PreconditionError("compute_L: sides must be positive multiples of 4");
  Bracket b;
  b.lower = 1;
  for (int l = 2;; ++l) {
    const Decision d = decide({{h, w}, l, false}, cfg);
    b.trail.emplace_back(l, d.answer);
    if (d.answer == Answer::Forced) {
      b.lower = l;
      continue;
    }
    if (d.answer == Answer::Avoidable) {
      b.value = l - 1;
      b.upper = l - 1;
      b.certificate = d.certificate;
    }
    return b;
  }
}

}  // namespace ttap
