#pragma once

// A compact conflict-driven clause-learning SAT solver: two watched literals,
// first-UIP learning with recursive minimization, VSIDS with phase saving,
// Luby restarts and LBD-based learnt clause reduction.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ttap/error.hpp"

namespace ttap::sat {

enum class Status { Sat, Unsat, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Sat: return "SAT";
    case Status::Unsat: return "UNSAT";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct Limits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::optional<std::uint64_t> max_conflicts;
  const std::atomic<bool>* interrupt = nullptr;
};

struct Stats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
};

class Solver {
 public:
  // Returns the new variable as a 1-based DIMACS index.
  int new_var() {
    const int v = num_vars_++;
    assigns_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    phase_.push_back(0);
    activity_.push_back(0.0);
    seen_.push_back(0);
    heap_index_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v + 1;
  }

  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return num_original_; }
  const Stats& stats() const { return stats_; }

  // Clause over DIMACS literals. Returns false once the formula is known UNSAT.
  bool add_clause(std::span<const int> dimacs) {
    if (!ok_) return false;
    backtrack(0);
    tmp_.clear();
    for (int d : dimacs) {
      if (d == 0 || std::abs(d) > num_vars_) throw PreconditionError("clause literal out of range");
      tmp_.push_back(from_dimacs(d));
    }
    std::sort(tmp_.begin(), tmp_.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < tmp_.size(); ++i) {
      const int l = tmp_[i];
      if (value(l) == kTrue || (j > 0 && tmp_[j - 1] == (l ^ 1))) return true;  // satisfied / tautology
      if (value(l) == kFalse || (j > 0 && tmp_[j - 1] == l)) continue;
      tmp_[j++] = l;
    }
    tmp_.resize(j);
    ++num_original_;
    if (tmp_.empty()) return ok_ = false;
    if (tmp_.size() == 1) {
      enqueue(tmp_[0], kNoReason);
      if (propagate() != kNoReason) ok_ = false;
      return ok_;
    }
    attach(alloc(tmp_, false, 0));
    return true;
  }
  bool add_clause(std::initializer_list<int> lits) {
    return add_clause(std::span<const int>(lits.begin(), lits.size()));
  }

  Status solve(const Limits& limits = {}) {
    model_.clear();
    if (!ok_) return Status::Unsat;
    if (propagate() != kNoReason) {
      ok_ = false;
      return Status::Unsat;
    }
    const std::uint64_t start_conflicts = stats_.conflicts;
    for (std::uint64_t round = 0;; ++round) {
      const std::uint64_t budget = luby(round) * kRestartUnit;
      const Status s = search(budget, limits, start_conflicts);
      if (s == Status::Sat) {
        model_.assign(assigns_.begin(), assigns_.end());
        backtrack(0);
        return s;
      }
      if (s == Status::Unsat) {
        ok_ = false;
        return s;
      }
      backtrack(0);
      if (out_of_budget(limits, start_conflicts)) return Status::Unknown;
      ++stats_.restarts;
    }
  }

  // Model value of a 1-based variable after a SAT answer.
  bool model_value(int var) const {
    if (model_.empty()) throw PreconditionError("no model available");
    return model_[static_cast<std::size_t>(var - 1)] == kTrue;
  }

 private:
  static constexpr std::uint8_t kFalse = 0, kTrue = 1, kUndef = 2;
  static constexpr std::uint32_t kNoReason = UINT32_MAX;
  static constexpr std::uint64_t kRestartUnit = 100;
  static constexpr std::uint32_t kLearntBit = 1u << 31;
  static constexpr std::uint32_t kDeletedBit = 1u << 30;
  static constexpr std::uint32_t kSizeMask = kDeletedBit - 1;
  static constexpr std::size_t kHeader = 3;  // size|flags, lbd, activity

  struct Watcher {
    std::uint32_t cref;
    int blocker;
  };

  static int from_dimacs(int d) { return d > 0 ? 2 * (d - 1) : 2 * (-d - 1) + 1; }
  static int var(int lit) { return lit >> 1; }
  static bool sign(int lit) { return lit & 1; }

  std::uint8_t value(int lit) const {
    const std::uint8_t a = assigns_[static_cast<std::size_t>(var(lit))];
    return a == kUndef ? kUndef : static_cast<std::uint8_t>(a ^ static_cast<std::uint8_t>(sign(lit)));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  // Clause arena access.
  std::uint32_t size_of(std::uint32_t cr) const { return arena_[cr] & kSizeMask; }
  bool learnt(std::uint32_t cr) const { return arena_[cr] & kLearntBit; }
  bool deleted(std::uint32_t cr) const { return arena_[cr] & kDeletedBit; }
  int* lits(std::uint32_t cr) { return reinterpret_cast<int*>(&arena_[cr + kHeader]); }
  float act(std::uint32_t cr) const { return std::bit_cast<float>(arena_[cr + 2]); }
  void set_act(std::uint32_t cr, float a) { arena_[cr + 2] = std::bit_cast<std::uint32_t>(a); }

  std::uint32_t alloc(const std::vector<int>& ls, bool is_learnt, std::uint32_t lbd) {
    const auto cr = static_cast<std::uint32_t>(arena_.size());
    arena_.push_back(static_cast<std::uint32_t>(ls.size()) | (is_learnt ? kLearntBit : 0u));
    arena_.push_back(lbd);
    arena_.push_back(0);
    for (int l : ls) arena_.push_back(static_cast<std::uint32_t>(l));
    if (is_learnt) learnts_.push_back(cr);
    return cr;
  }

  void attach(std::uint32_t cr) {
    int* c = lits(cr);
    watches_[static_cast<std::size_t>(c[0] ^ 1)].push_back({cr, c[1]});
    watches_[static_cast<std::size_t>(c[1] ^ 1)].push_back({cr, c[0]});
  }

  void enqueue(int lit, std::uint32_t from) {
    const auto v = static_cast<std::size_t>(var(lit));
    assigns_[v] = static_cast<std::uint8_t>(!sign(lit));
    level_[v] = decision_level();
    reason_[v] = from;
    trail_.push_back(lit);
  }

  std::uint32_t propagate() {
    std::uint32_t conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      const int p = trail_[qhead_++];
      const int false_lit = p ^ 1;
      auto& ws = watches_[static_cast<std::size_t>(p)];
      ++stats_.propagations;
      std::size_t i = 0, j = 0;
      const std::size_t n = ws.size();
      while (i < n) {
        const Watcher w = ws[i++];
        if (value(w.blocker) == kTrue) {
          ws[j++] = w;
          continue;
        }
        const std::uint32_t cr = w.cref;
        int* c = lits(cr);
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        const int first = c[0];
        const Watcher nw{cr, first};
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = nw;
          continue;
        }
        const std::uint32_t sz = size_of(cr);
        bool moved = false;
        for (std::uint32_t k = 2; k < sz; ++k) {
          if (value(c[k]) != kFalse) {
            c[1] = c[k];
            c[k] = false_lit;
            watches_[static_cast<std::size_t>(c[1] ^ 1)].push_back(nw);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = nw;
        if (value(first) == kFalse) {
          conflict = cr;
          qhead_ = trail_.size();
          while (i < n) ws[j++] = ws[i++];
        } else {
          enqueue(first, cr);
        }
      }
      ws.resize(j);
    }
    return conflict;
  }

  void backtrack(int lvl) {
    if (decision_level() <= lvl) return;
    const std::size_t stop = trail_lim_[static_cast<std::size_t>(lvl)];
    for (std::size_t i = trail_.size(); i-- > stop;) {
      const auto v = static_cast<std::size_t>(var(trail_[i]));
      phase_[v] = static_cast<std::uint8_t>(sign(trail_[i]) ? 0 : 1);
      assigns_[v] = kUndef;
      reason_[v] = kNoReason;
      if (heap_index_[v] < 0) heap_insert(static_cast<int>(v));
    }
    trail_.resize(stop);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = trail_.size();
  }

  // --- VSIDS heap ---
  bool heap_less(int a, int b) const {
    const double aa = activity_[static_cast<std::size_t>(a)], ab = activity_[static_cast<std::size_t>(b)];
    return aa > ab || (aa == ab && a < b);
  }
  void heap_up(std::size_t i) {
    const int v = heap_[i];
    while (i > 0) {
      const std::size_t p = (i - 1) / 2;
      if (!heap_less(v, heap_[p])) break;
      heap_[i] = heap_[p];
      heap_index_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
      i = p;
    }
    heap_[i] = v;
    heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  void heap_down(std::size_t i) {
    const int v = heap_[i];
    for (;;) {
      std::size_t c = 2 * i + 1;
      if (c >= heap_.size()) break;
      if (c + 1 < heap_.size() && heap_less(heap_[c + 1], heap_[c])) ++c;
      if (!heap_less(heap_[c], v)) break;
      heap_[i] = heap_[c];
      heap_index_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
      i = c;
    }
    heap_[i] = v;
    heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  void heap_insert(int v) {
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
  }
  int heap_pop() {
    const int top = heap_[0];
    heap_index_[static_cast<std::size_t>(top)] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) heap_down(0);
    return top;
  }

  void bump_var(int v) {
    double& a = activity_[static_cast<std::size_t>(v)];
    if ((a += var_inc_) > 1e100) {
      for (double& x : activity_) x *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_index_[static_cast<std::size_t>(v)] >= 0) heap_up(static_cast<std::size_t>(heap_index_[static_cast<std::size_t>(v)]));
  }
  void bump_clause(std::uint32_t cr) {
    set_act(cr, act(cr) + static_cast<float>(cla_inc_));
    if (act(cr) > 1e20f) {
      for (std::uint32_t l : learnts_) set_act(l, act(l) * 1e-20f);
      cla_inc_ *= 1e-20;
    }
  }

  std::uint32_t abstract_level(int v) const { return 1u << (level_[static_cast<std::size_t>(v)] & 31); }

  bool redundant(int lit, std::uint32_t abstract_levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(lit);
    const std::size_t top = analyze_clear_.size();
    while (!analyze_stack_.empty()) {
      const int q = analyze_stack_.back();
      analyze_stack_.pop_back();
      const std::uint32_t cr = reason_[static_cast<std::size_t>(var(q))];
      int* c = lits(cr);
      const std::uint32_t sz = size_of(cr);
      for (std::uint32_t i = 1; i < sz; ++i) {
        const int l = c[i];
        const auto v = static_cast<std::size_t>(var(l));
        if (seen_[v] || level_[v] == 0) continue;
        if (reason_[v] != kNoReason && (abstract_level(var(l)) & abstract_levels)) {
          seen_[v] = 1;
          analyze_stack_.push_back(l);
          analyze_clear_.push_back(l);
        } else {
          for (std::size_t k = top; k < analyze_clear_.size(); ++k)
            seen_[static_cast<std::size_t>(var(analyze_clear_[k]))] = 0;
          analyze_clear_.resize(top);
          return false;
        }
      }
    }
    return true;
  }

  // First-UIP conflict analysis; fills learnt_ (asserting literal first) and
  // returns the backjump level.
  int analyze(std::uint32_t conflict) {
    learnt_.clear();
    learnt_.push_back(-1);
    int path = 0;
    int p = -1;
    std::size_t index = trail_.size();
    std::uint32_t cr = conflict;
    do {
      if (learnt(cr)) bump_clause(cr);
      int* c = lits(cr);
      const std::uint32_t sz = size_of(cr);
      for (std::uint32_t k = (p == -1 ? 0 : 1); k < sz; ++k) {
        const int q = c[k];
        const auto v = static_cast<std::size_t>(var(q));
        if (seen_[v] || level_[v] == 0) continue;
        bump_var(var(q));
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt_.push_back(q);
      }
      while (!seen_[static_cast<std::size_t>(var(trail_[--index]))]) {
      }
      p = trail_[index];
      cr = reason_[static_cast<std::size_t>(var(p))];
      seen_[static_cast<std::size_t>(var(p))] = 0;
      --path;
    } while (path > 0);
    learnt_[0] = p ^ 1;

    analyze_clear_.assign(learnt_.begin(), learnt_.end());
    std::uint32_t levels = 0;
    for (std::size_t i = 1; i < learnt_.size(); ++i) levels |= abstract_level(var(learnt_[i]));
    std::size_t j = 1;
    for (std::size_t i = 1; i < learnt_.size(); ++i) {
      const int l = learnt_[i];
      if (reason_[static_cast<std::size_t>(var(l))] == kNoReason || !redundant(l, levels)) learnt_[j++] = l;
    }
    learnt_.resize(j);
    for (int l : analyze_clear_) seen_[static_cast<std::size_t>(var(l))] = 0;

    int bt = 0;
    if (learnt_.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt_.size(); ++i)
        if (level_[static_cast<std::size_t>(var(learnt_[i]))] > level_[static_cast<std::size_t>(var(learnt_[max_i]))]) max_i = i;
      std::swap(learnt_[1], learnt_[max_i]);
      bt = level_[static_cast<std::size_t>(var(learnt_[1]))];
    }
    return bt;
  }

  std::uint32_t compute_lbd(const std::vector<int>& ls) {
    ++lbd_stamp_;
    if (lbd_seen_.size() < static_cast<std::size_t>(num_vars_) + 1) lbd_seen_.resize(static_cast<std::size_t>(num_vars_) + 1, 0);
    std::uint32_t n = 0;
    for (int l : ls) {
      const auto lv = static_cast<std::size_t>(level_[static_cast<std::size_t>(var(l))]);
      if (lbd_seen_[lv] != lbd_stamp_) {
        lbd_seen_[lv] = lbd_stamp_;
        ++n;
      }
    }
    return n;
  }

  bool locked(std::uint32_t cr) {
    const int l0 = lits(cr)[0];
    return value(l0) == kTrue && reason_[static_cast<std::size_t>(var(l0))] == cr;
  }

  void reduce_db() {
    ++stats_.reductions;
    std::sort(learnts_.begin(), learnts_.end(), [this](std::uint32_t a, std::uint32_t b) {
      const std::uint32_t la = arena_[a + 1], lb = arena_[b + 1];
      if (la != lb) return la > lb;
      return act(a) < act(b);
    });
    const std::size_t half = learnts_.size() / 2;
    std::vector<std::uint32_t> keep;
    keep.reserve(learnts_.size());
    for (std::size_t i = 0; i < learnts_.size(); ++i) {
      const std::uint32_t cr = learnts_[i];
      if (i < half && arena_[cr + 1] > 2 && size_of(cr) > 2 && !locked(cr))
        arena_[cr] |= kDeletedBit;
      else
        keep.push_back(cr);
    }
    learnts_ = std::move(keep);
    compact();
  }

  // Drops deleted clauses from the arena and rebuilds the watch lists.
  void compact() {
    std::vector<std::uint32_t> fresh;
    fresh.reserve(arena_.size());
    std::vector<std::uint32_t> live;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> remap;
    for (std::uint32_t cr = 0; cr < arena_.size(); cr += static_cast<std::uint32_t>(kHeader) + size_of(cr)) {
      if (deleted(cr)) continue;
      const auto nc = static_cast<std::uint32_t>(fresh.size());
      fresh.insert(fresh.end(), arena_.begin() + cr, arena_.begin() + cr + static_cast<std::uint32_t>(kHeader) + size_of(cr));
      remap.emplace_back(cr, nc);
      live.push_back(nc);
    }
    auto lookup = [&](std::uint32_t old) {
      auto it = std::lower_bound(remap.begin(), remap.end(), std::pair{old, 0u});
      return it != remap.end() && it->first == old ? it->second : kNoReason;
    };
    for (int l : trail_) {
      auto& r = reason_[static_cast<std::size_t>(var(l))];
      if (r != kNoReason) r = lookup(r);
    }
    for (auto& cr : learnts_) cr = lookup(cr);
    arena_ = std::move(fresh);
    for (auto& w : watches_) w.clear();
    for (std::uint32_t cr : live) attach(cr);
  }

  bool out_of_budget(const Limits& limits, std::uint64_t start) const {
    if (limits.max_conflicts && stats_.conflicts - start >= *limits.max_conflicts) return true;
    if (limits.interrupt && limits.interrupt->load(std::memory_order_relaxed)) return true;
    if (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline) return true;
    return false;
  }

  Status search(std::uint64_t budget, const Limits& limits, std::uint64_t start) {
    std::uint64_t local = 0;
    for (;;) {
      const std::uint32_t conflict = propagate();
      if (conflict != kNoReason) {
        ++stats_.conflicts;
        ++local;
        if (decision_level() == 0) return Status::Unsat;
        const int bt = analyze(conflict);
        backtrack(bt);
        if (learnt_.size() == 1) {
          enqueue(learnt_[0], kNoReason);
        } else {
          const std::uint32_t cr = alloc(learnt_, true, compute_lbd(learnt_));
          attach(cr);
          bump_clause(cr);
          enqueue(learnt_[0], cr);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        if (stats_.conflicts >= next_reduce_) {
          next_reduce_ = stats_.conflicts + 2000 + 300 * stats_.reductions;
          reduce_db();
        }
        if ((stats_.conflicts & 255) == 0 && out_of_budget(limits, start)) return Status::Unknown;
      } else {
        if (local >= budget) return Status::Unknown;
        int next = -1;
        while (!heap_.empty()) {
          const int v = heap_pop();
          if (assigns_[static_cast<std::size_t>(v)] == kUndef) {
            next = v;
            break;
          }
        }
        if (next < 0) return Status::Sat;
        ++stats_.decisions;
        trail_lim_.push_back(trail_.size());
        enqueue(2 * next + (phase_[static_cast<std::size_t>(next)] ? 0 : 1), kNoReason);
      }
    }
  }

  static std::uint64_t luby(std::uint64_t i) {
    std::uint64_t size = 1, seq = 0;
    while (size < i + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    std::uint64_t x = i;
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x = x % size;
    }
    return std::uint64_t{1} << seq;
  }

  int num_vars_ = 0;
  bool ok_ = true;
  std::size_t num_original_ = 0;
  std::vector<std::uint32_t> arena_;
  std::vector<std::uint32_t> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::uint8_t> assigns_;
  std::vector<int> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<std::uint8_t> phase_;
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<int> heap_;
  std::vector<int> heap_index_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<int> tmp_, learnt_, analyze_stack_, analyze_clear_;
  std::vector<std::uint64_t> lbd_seen_;
  std::uint64_t lbd_stamp_ = 0;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::uint64_t next_reduce_ = 2000;
  std::vector<std::uint8_t> model_;
  Stats stats_;
};

}  // namespace ttap::sat
