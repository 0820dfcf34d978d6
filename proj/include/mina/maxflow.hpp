#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace mina {

/// Undirected graph with non-negative capacities. Cap is double or Rational.
template <typename Cap>
class CapGraph {
 public:
  struct Arc {
    int u;
    int v;
    Cap cap;
  };

  explicit CapGraph(int n = 0) : n_(n), adj_(n) {}

  int add_edge(int u, int v, Cap cap) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
    if (cap < 0) throw std::invalid_argument("negative capacity");
    if constexpr (std::is_floating_point_v<Cap>) {
      if (!std::isfinite(cap)) throw std::invalid_argument("non-finite capacity");
    }
    edges_.push_back({u, v, std::move(cap)});
    int e = static_cast<int>(edges_.size()) - 1;
    adj_[u].push_back(e);
    adj_[v].push_back(e);
    return e;
  }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Arc& edge(int e) const { return edges_[e]; }
  const std::vector<Arc>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const { return adj_[v]; }

 private:
  int n_;
  std::vector<Arc> edges_;
  std::vector<std::vector<int>> adj_;
};

template <typename Cap>
struct Cut {
  /// side_S[v] is true for vertices on the source side.
  std::vector<bool> side_S;
  std::vector<int> crossing_edges;
  Cap value{};
};

template <typename Cap>
struct FlowResult {
  Cap flow_value{};
  Cut<Cap> cut;
};

template <typename Cap>
Cut<Cap> make_cut(const CapGraph<Cap>& g, std::vector<bool> side) {
  Cut<Cap> c;
  c.value = Cap(0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& a = g.edge(e);
    if (side[a.u] != side[a.v]) {
      c.crossing_edges.push_back(e);
      c.value += a.cap;
    }
  }
  c.side_S = std::move(side);
  return c;
}

/// Shortest-augmenting-path max flow. The returned cut is the set of
/// vertices reachable from s in the final residual graph.
template <typename Cap>
FlowResult<Cap> max_flow_min_cut(const CapGraph<Cap>& g, int s, int t) {
  const int n = g.num_vertices();
  if (s == t) throw std::invalid_argument("source equals sink");
  if (s < 0 || t < 0 || s >= n || t >= n) throw std::out_of_range("terminal out of range");

  // Residual slack below eps counts as saturated. Zero for exact types; for
  // floating point it is relative to the largest capacity so that scaling
  // every capacity leaves the reachable set unchanged.
  Cap eps = Cap(0);
  if constexpr (std::is_floating_point_v<Cap>) {
    Cap top = 0;
    for (const auto& a : g.edges()) top = std::max(top, a.cap);
    eps = top * 1e-12;
  }

  // flow[e] > 0 means flow from edge(e).u to edge(e).v.
  std::vector<Cap> flow(g.num_edges(), Cap(0));
  auto residual = [&](int e, int from) -> Cap {
    const auto& a = g.edge(e);
    if (from == a.u) return Cap(a.cap - flow[e]);
    return Cap(a.cap + flow[e]);
  };
  auto other = [&](int e, int from) { return from == g.edge(e).u ? g.edge(e).v : g.edge(e).u; };

  Cap total = Cap(0);
  std::vector<int> via(n);
  std::vector<bool> seen(n);
  for (;;) {
    std::fill(via.begin(), via.end(), -1);
    std::fill(seen.begin(), seen.end(), false);
    std::queue<int> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty() && !seen[t]) {
      int x = q.front();
      q.pop();
      for (int e : g.incident(x)) {
        int y = other(e, x);
        if (seen[y] || !(residual(e, x) > eps)) continue;
        seen[y] = true;
        via[y] = e;
        q.push(y);
      }
    }
    if (!seen[t]) {
      FlowResult<Cap> r;
      r.flow_value = total;
      r.cut = make_cut(g, std::move(seen));
      return r;
    }
    Cap bottleneck{};
    bool first = true;
    for (int y = t; y != s;) {
      int e = via[y];
      int x = other(e, y);
      Cap rc = residual(e, x);
      if (first || rc < bottleneck) bottleneck = rc;
      first = false;
      y = x;
    }
    for (int y = t; y != s;) {
      int e = via[y];
      int x = other(e, y);
      if (x == g.edge(e).u) {
        flow[e] += bottleneck;
      } else {
        flow[e] -= bottleneck;
      }
      y = x;
    }
    total += bottleneck;
  }
}

}  // namespace mina
