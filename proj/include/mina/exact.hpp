#pragma once

#include "mina/instance.hpp"
#include "mina/union_find.hpp"
#include "mina/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mina {

class ExactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExactMethod { plain, branch_and_bound };

struct ExactOptions {
  /// Largest total number of (vertex, interface) slots accepted.
  int budget = 24;
  ExactMethod method = ExactMethod::plain;
};

struct ExactResult {
  Rational opt_cost = 0;
  Assignment assignment{0};
  std::uint64_t nodes = 0;
};

namespace detail {

/// Per-vertex subset tables shared by both search methods. Subset s of the
/// slots of v (bit j = j-th slot) maps to an interface mask and to the rank
/// of its cost among all distinct subset costs in the instance.
struct SubsetTables {
  std::vector<int> offset;
  std::vector<int> width;
  std::vector<std::vector<InterfaceMask>> iface_mask;
  std::vector<std::vector<int>> rank;
  std::vector<Rational> rank_value;

  explicit SubsetTables(const Instance& inst) {
    const int n = inst.num_vertices();
    offset.resize(n);
    width.resize(n);
    iface_mask.resize(n);
    rank.resize(n);
    std::vector<std::vector<Rational>> sums(n);
    int off = 0;
    for (Vertex v = 0; v < n; ++v) {
      auto slots = inst.slots(v);
      const int w = static_cast<int>(slots.size());
      offset[v] = off;
      width[v] = w;
      off += w;
      iface_mask[v].assign(std::size_t{1} << w, 0);
      sums[v].assign(std::size_t{1} << w, Rational(0));
      for (std::size_t s = 1; s < (std::size_t{1} << w); ++s) {
        int j = std::countr_zero(s);
        std::size_t prev = s & (s - 1);
        iface_mask[v][s] = iface_mask[v][prev] | bit(slots[j].iface);
        sums[v][s] = sums[v][prev] + slots[j].cost;
      }
      for (const auto& c : sums[v]) rank_value.push_back(c);
    }
    std::sort(rank_value.begin(), rank_value.end());
    rank_value.erase(std::unique(rank_value.begin(), rank_value.end()), rank_value.end());
    for (Vertex v = 0; v < n; ++v) {
      rank[v].reserve(sums[v].size());
      for (const auto& c : sums[v]) {
        rank[v].push_back(static_cast<int>(std::lower_bound(rank_value.begin(), rank_value.end(), c) - rank_value.begin()));
      }
    }
  }
};

inline bool connects_groups(const Instance& inst, const std::vector<InterfaceMask>& m) {
  UnionFind uf(inst.num_vertices());
  for (const auto& [u, v] : inst.edges()) {
    if (m[u] & m[v]) uf.unite(u, v);
  }
  for (const auto& g : inst.groups()) {
    for (Vertex t : g) {
      if (!uf.same(g.front(), t)) return false;
    }
  }
  return true;
}

inline bool covers_all(const Instance& inst, const std::vector<InterfaceMask>& m) {
  for (const auto& [u, v] : inst.edges()) {
    if (!(m[u] & m[v])) return false;
  }
  return true;
}

inline void check_budget(const Instance& inst, const ExactOptions& opt) {
  if (inst.total_slots() > opt.budget) {
    throw ExactError("enumeration budget exceeded: " + std::to_string(inst.total_slots()) + " interface slots > " +
                     std::to_string(opt.budget));
  }
  if (inst.total_slots() > 62) throw ExactError("enumeration budget exceeded: more than 62 interface slots");
}

inline Assignment to_assignment(const std::vector<InterfaceMask>& m) {
  Assignment a(static_cast<int>(m.size()));
  for (std::size_t v = 0; v < m.size(); ++v) a.set(static_cast<Vertex>(v), m[v]);
  return a;
}

/// Every activation of the global slot bitmask in increasing order. Only a
/// strictly better cost replaces the incumbent, so among optimal assignments
/// the one with the smallest bitmask wins.
template <typename Feasible>
ExactResult enumerate_plain(const Instance& inst, const SubsetTables& t, Feasible&& feasible) {
  const int n = inst.num_vertices();
  const std::uint64_t total = std::uint64_t{1} << inst.total_slots();
  std::vector<InterfaceMask> m(n);
  int best_rank = -1;
  std::uint64_t best_mask = 0;
  ExactResult r;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++r.nodes;
    int cost_rank = 0;
    for (Vertex v = 0; v < n; ++v) {
      std::size_t s = (mask >> t.offset[v]) & ((std::uint64_t{1} << t.width[v]) - 1);
      m[v] = t.iface_mask[v][s];
      cost_rank = std::max(cost_rank, t.rank[v][s]);
    }
    if (best_rank >= 0 && cost_rank >= best_rank) continue;
    if (!feasible(m)) continue;
    best_rank = cost_rank;
    best_mask = mask;
  }
  if (best_rank < 0) throw ExactError("infeasible: no assignment satisfies the instance");
  for (Vertex v = 0; v < n; ++v) {
    std::size_t s = (best_mask >> t.offset[v]) & ((std::uint64_t{1} << t.width[v]) - 1);
    m[v] = t.iface_mask[v][s];
  }
  r.opt_cost = t.rank_value[best_rank];
  r.assignment = to_assignment(m);
  return r;
}

/// Tries budgets theta in increasing order. Feasibility is monotone in the
/// activated sets, so under a budget each vertex only needs its maximal
/// subsets of cost <= theta; a depth-first search over those decides theta.
inline ExactResult branch_and_bound(const Instance& inst, const SubsetTables& t, bool coverage) {
  const int n = inst.num_vertices();
  ExactResult r;
  // edges whose later endpoint is v, checked once v is assigned
  std::vector<std::vector<Vertex>> closing(n);
  for (const auto& [u, v] : inst.edges()) closing[std::max(u, v)].push_back(std::min(u, v));

  std::vector<InterfaceMask> m(n, 0);
  std::vector<std::vector<std::size_t>> choices(n);
  for (int theta = 0; theta < static_cast<int>(t.rank_value.size()); ++theta) {
    bool possible = true;
    for (Vertex v = 0; v < n && possible; ++v) {
      choices[v].clear();
      const std::size_t full = std::size_t{1} << t.width[v];
      for (std::size_t s = 0; s < full; ++s) {
        if (t.rank[v][s] > theta) continue;
        bool maximal = true;
        for (int j = 0; j < t.width[v] && maximal; ++j) {
          std::size_t bigger = s | (std::size_t{1} << j);
          if (bigger != s && t.rank[v][bigger] <= theta) maximal = false;
        }
        if (maximal) choices[v].push_back(s);
      }
      possible = !choices[v].empty();
    }
    if (!possible) continue;

    std::vector<std::size_t> pick(n, 0);
    bool found = false;
    auto dfs = [&](auto&& self, Vertex v) -> void {
      if (found) return;
      ++r.nodes;
      if (v == n) {
        if (coverage || connects_groups(inst, m)) found = true;
        return;
      }
      for (std::size_t s : choices[v]) {
        m[v] = t.iface_mask[v][s];
        pick[v] = s;
        bool ok = true;
        if (coverage) {
          for (Vertex u : closing[v]) {
            if (!(m[u] & m[v])) {
              ok = false;
              break;
            }
          }
        }
        if (ok) self(self, v + 1);
        if (found) return;
      }
      m[v] = 0;
    };
    dfs(dfs, 0);
    if (found) {
      int achieved = 0;
      for (Vertex v = 0; v < n; ++v) achieved = std::max(achieved, t.rank[v][pick[v]]);
      r.opt_cost = t.rank_value[achieved];
      r.assignment = to_assignment(m);
      return r;
    }
  }
  throw ExactError("infeasible: no assignment satisfies the instance");
}

}  // namespace detail

/// Minimum max-cost covering assignment by exhaustive search.
inline ExactResult exact_coverage(const Instance& inst, const ExactOptions& opt = {}) {
  detail::check_budget(inst, opt);
  detail::SubsetTables t(inst);
  if (opt.method == ExactMethod::branch_and_bound) return detail::branch_and_bound(inst, t, true);
  return detail::enumerate_plain(inst, t, [&](const std::vector<InterfaceMask>& m) { return detail::covers_all(inst, m); });
}

/// Minimum max-cost assignment whose covered subgraph connects every group.
inline ExactResult exact_connectivity(const Instance& inst, const ExactOptions& opt = {}) {
  detail::check_budget(inst, opt);
  detail::SubsetTables t(inst);
  if (opt.method == ExactMethod::branch_and_bound) return detail::branch_and_bound(inst, t, false);
  return detail::enumerate_plain(inst, t,
                                 [&](const std::vector<InterfaceMask>& m) { return detail::connects_groups(inst, m); });
}

}  // namespace mina
