#pragma once

#include "mina/instance.hpp"
#include "mina/random.hpp"
#include "mina/union_find.hpp"
#include "mina/verify.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace mina {

enum class Problem { coverage, connectivity };

/// An Instance under one cost guess b: interfaces costing more than 2^b are
/// dropped, the rest are divided by C_b (the largest kept cost) so that the
/// maximum scaled cost is exactly 1. A vertex is cheap when its kept scaled
/// costs sum to less than 1.
///
/// b == -1 denotes the identity scaling used when preprocessing is skipped:
/// everything kept, C_b = 1, no cheap/expensive classification.
struct ScaledInstance {
  const Instance* base = nullptr;
  int b = -1;
  Rational norm_factor = 1;
  /// Indexed [vertex][slot] in the order of Instance::slots(v).
  std::vector<std::vector<bool>> kept;
  std::vector<std::vector<Rational>> scaled_cost;
  std::vector<InterfaceMask> kept_mask;
  std::vector<bool> cheap;
  bool classified = false;

  const Instance& instance() const { return *base; }
  bool is_kept(Vertex v, int slot) const { return kept[v][slot]; }
  double cost(Vertex v, int slot) const { return to_double(scaled_cost[v][slot]); }
  bool is_cheap(Vertex v) const { return classified && cheap[v]; }
  InterfaceMask kept_common(int e) const {
    const auto& ed = base->edge(e);
    return kept_mask[ed.u] & kept_mask[ed.v];
  }
  Rational max_scaled_cost() const {
    Rational best = 0;
    for (const auto& row : scaled_cost) {
      for (const auto& c : row) best = std::max(best, c);
    }
    return best;
  }
};

/// C = ceil(log2(max cost)), 0 when every cost is at most 1.
inline int guess_limit(const Instance& inst) { return ceil_log2(inst.max_cost_value()); }

inline Rational max_kept_cost(const Instance& inst, int b) {
  const Rational cap = pow2(b);
  Rational best = 0;
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    for (const auto& s : inst.slots(v)) {
      if (s.cost <= cap) best = std::max(best, s.cost);
    }
  }
  return best;
}

/// Builds the scaled instance for guess b without checking whether the guess
/// should be discarded.
inline ScaledInstance scale_instance(const Instance& inst, int b) {
  ScaledInstance s;
  s.base = &inst;
  s.b = b;
  s.classified = true;
  const Rational cap = pow2(b);
  const Rational top = max_kept_cost(inst, b);
  s.norm_factor = top > 0 ? top : Rational(1);
  const int n = inst.num_vertices();
  s.kept.resize(n);
  s.scaled_cost.resize(n);
  s.kept_mask.assign(n, 0);
  s.cheap.assign(n, false);
  for (Vertex v = 0; v < n; ++v) {
    Rational sum = 0;
    for (const auto& slot : inst.slots(v)) {
      bool keep = slot.cost <= cap;
      s.kept[v].push_back(keep);
      s.scaled_cost[v].push_back(keep ? Rational(slot.cost / s.norm_factor) : Rational(0));
      if (keep) {
        s.kept_mask[v] |= bit(slot.iface);
        sum += s.scaled_cost[v].back();
      }
    }
    s.cheap[v] = sum < 1;
  }
  return s;
}

/// Identity scaling: all interfaces kept, original costs, no classification.
inline ScaledInstance unscaled(const Instance& inst) {
  ScaledInstance s;
  s.base = &inst;
  s.b = -1;
  s.norm_factor = 1;
  s.classified = false;
  const int n = inst.num_vertices();
  s.kept.resize(n);
  s.scaled_cost.resize(n);
  s.kept_mask.assign(n, 0);
  s.cheap.assign(n, false);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& slot : inst.slots(v)) {
      s.kept[v].push_back(true);
      s.scaled_cost[v].push_back(slot.cost);
    }
    s.kept_mask[v] = inst.available(v);
  }
  return s;
}

namespace detail {

inline bool edges_coverable(const Instance& inst, const Rational& cap) {
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto& [u, v] = inst.edge(e);
    bool ok = false;
    for (const auto& su : inst.slots(u)) {
      if (su.cost > cap) continue;
      auto cv = inst.cost(su.iface, v);
      if (cv && *cv <= cap) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

inline bool groups_connectable(const Instance& inst, const std::vector<InterfaceMask>& usable) {
  UnionFind uf(inst.num_vertices());
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto& [u, v] = inst.edge(e);
    if (usable[u] & usable[v]) uf.unite(u, v);
  }
  for (const auto& g : inst.groups()) {
    for (Vertex t : g) {
      if (!uf.same(g.front(), t)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// True when guess b must be skipped:
///  (a) the guess admits no solution: for Coverage, some edge has no common
///      interface with both endpoint costs <= 2^b; for Connectivity, some
///      group is split in the graph of edges coverable under 2^b;
///  (b) b is not the smallest exponent for its kept costs, i.e. b >= 1 and
///      the largest kept cost is <= 2^(b-1).
inline bool discard_guess(const Instance& inst, int b, Problem problem = Problem::coverage) {
  const Rational cap = pow2(b);
  if (problem == Problem::coverage) {
    if (!detail::edges_coverable(inst, cap)) return true;
  } else {
    std::vector<InterfaceMask> usable(inst.num_vertices(), 0);
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      for (const auto& s : inst.slots(v)) {
        if (s.cost <= cap) usable[v] |= bit(s.iface);
      }
    }
    if (!detail::groups_connectable(inst, usable)) return true;
  }
  if (b >= 1 && max_kept_cost(inst, b) <= pow2(b - 1)) return true;
  return false;
}

/// Kept guesses b in {0, ..., C}, ascending.
inline std::vector<ScaledInstance> enumerate_guesses(const Instance& inst, Problem problem = Problem::coverage) {
  std::vector<ScaledInstance> out;
  const int c = guess_limit(inst);
  for (int b = 0; b <= c; ++b) {
    if (!discard_guess(inst, b, problem)) out.push_back(scale_instance(inst, b));
  }
  return out;
}

/// K = max(1, ceil(ln C / ln m + 1)), with K = 1 when m <= 2 or C <= 1,
/// then raised to at least `floor`.
inline int restart_count(int m, int c, int floor = 3) {
  int k = 1;
  if (m > 2 && c > 1) {
    k = std::max(1, static_cast<int>(std::ceil(std::log(static_cast<double>(c)) / std::log(static_cast<double>(m)) + 1.0)));
  }
  return std::max(k, floor);
}

/// What a randomized procedure returns for one run on one scaled instance.
struct RunOutcome {
  Assignment assignment;
  bool feasible = false;
};

struct RestartOptions {
  int restarts_floor = 3;
};

struct RestartResult {
  std::optional<Assignment> best;
  Rational cost = 0;
  int b = -1;
  int run = -1;
  int guesses = 0;
  int runs_per_guess = 0;
  int runs = 0;
  int feasible_runs = 0;
};

/// Runs `procedure(scaled, seed) -> RunOutcome` K times on every kept guess
/// with seeds derive_seed(seed, b, run). Keeps the feasible assignment of
/// smallest original-cost max-cost; ties go to the smaller b, then the
/// smaller run index.
template <typename Procedure>
RestartResult run_with_restarts(const Instance& inst, Problem problem, Procedure&& procedure, std::uint64_t seed,
                                const RestartOptions& options = {}) {
  RestartResult r;
  auto guesses = enumerate_guesses(inst, problem);
  r.guesses = static_cast<int>(guesses.size());
  r.runs_per_guess = restart_count(inst.num_edges(), guess_limit(inst), options.restarts_floor);
  for (const auto& scaled : guesses) {
    for (int run = 0; run < r.runs_per_guess; ++run) {
      RunOutcome out = procedure(scaled, derive_seed(seed, scaled.b, run));
      ++r.runs;
      if (!out.feasible) continue;
      ++r.feasible_runs;
      Rational c = max_cost(inst, out.assignment).max_cost;
      if (!r.best || c < r.cost) {
        r.best = std::move(out.assignment);
        r.cost = c;
        r.b = scaled.b;
        r.run = run;
      }
    }
  }
  return r;
}

}  // namespace mina
