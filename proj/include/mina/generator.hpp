#pragma once

#include "mina/instance.hpp"
#include "mina/random.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace mina {

struct GeneratorParams {
  int n = 8;
  int k = 3;
  double edge_density = 0.5;
  Rational cost_lo = 0;
  Rational cost_hi = 1;
  int num_groups = 0;
  int group_size = 0;
  std::uint64_t seed = kDefaultSeed;
  /// Costs are drawn from {lo + (hi - lo) * j / cost_steps : j = 0..cost_steps}.
  int cost_steps = 100;
  int max_repair_rounds = 10000;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seeded random instance. Vertices are labelled 0..n-1, interfaces 1..k.
///
/// A random spanning tree is laid down first, then every other pair becomes
/// an edge with probability edge_density. Interface sets are drawn
/// independently (each interface with probability 1/2, never empty); while
/// some edge lacks a common interface, one of its endpoints redraws its set.
inline Instance generate_random(const GeneratorParams& p) {
  if (p.n < 2) throw GenerationError("n must be at least 2");
  if (p.k < 1 || p.k > kMaxInterfaces) throw GenerationError("k must be in [1, 64]");
  if (p.edge_density < 0.0 || p.edge_density > 1.0) throw GenerationError("edge density must be in [0, 1]");
  if (p.cost_lo < 0 || p.cost_hi < p.cost_lo) throw GenerationError("cost range must satisfy 0 <= lo <= hi");
  if (p.num_groups < 0 || p.group_size < 0 || p.num_groups * p.group_size > p.n) {
    throw GenerationError("groups do not fit: num_groups * group_size > n");
  }
  if (p.num_groups > 0 && p.group_size == 0) throw GenerationError("groups must be non-empty");
  if (p.cost_steps < 1) throw GenerationError("cost_steps must be positive");

  Rng rng(p.seed);
  const int n = p.n;
  const int k = p.k;

  auto draw_set = [&]() {
    InterfaceMask m = 0;
    for (int i = 0; i < k; ++i) {
      if (rng.bernoulli(0.5)) m |= bit(i);
    }
    if (m == 0) m = bit(static_cast<int>(rng.below(k)));
    return m;
  };

  std::vector<InterfaceMask> sets(n);
  for (auto& s : sets) s = draw_set();

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::set<std::pair<int, int>> edge_set;
  for (int i = 1; i < n; ++i) {
    int a = order[i];
    int b = order[rng.below(i)];
    edge_set.insert(std::minmax(a, b));
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (edge_set.count({u, v})) continue;
      if (rng.bernoulli(p.edge_density)) edge_set.insert({u, v});
    }
  }

  int rounds = 0;
  for (;; ++rounds) {
    std::vector<std::pair<int, int>> bad;
    for (const auto& [u, v] : edge_set) {
      if ((sets[u] & sets[v]) == 0) bad.emplace_back(u, v);
    }
    if (bad.empty()) break;
    if (rounds >= p.max_repair_rounds) {
      throw GenerationError("could not give every edge a common interface after " +
                            std::to_string(p.max_repair_rounds) + " rounds");
    }
    for (const auto& [u, v] : bad) {
      if ((sets[u] & sets[v]) != 0) continue;
      int w = rng.bernoulli(0.5) ? u : v;
      sets[w] = draw_set();
    }
  }

  InstanceBuilder builder;
  const Rational span = p.cost_hi - p.cost_lo;
  for (int v = 0; v < n; ++v) builder.add_vertex(std::to_string(v));
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < k; ++i) {
      if (!(sets[v] & bit(i))) continue;
      auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.cost_steps) + 1));
      builder.add_slot(v, std::to_string(i + 1), p.cost_lo + span * j / p.cost_steps);
    }
  }
  for (const auto& [u, v] : edge_set) builder.add_edge(u, v);

  if (p.num_groups > 0) {
    rng.shuffle(order);
    for (int r = 0; r < p.num_groups; ++r) {
      std::vector<Vertex> g(order.begin() + r * p.group_size, order.begin() + (r + 1) * p.group_size);
      std::sort(g.begin(), g.end());
      builder.add_group(std::move(g));
    }
  }
  return std::move(builder).build();
}

}  // namespace mina
