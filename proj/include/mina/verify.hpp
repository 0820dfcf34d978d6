#pragma once

#include "mina/instance.hpp"
#include "mina/union_find.hpp"

#include <map>
#include <vector>

namespace mina {

class AssignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_assignment(const Instance& inst, const Assignment& a) {
  if (a.num_vertices() != inst.num_vertices()) {
    throw AssignmentError("assignment has " + std::to_string(a.num_vertices()) + " vertices, instance has " +
                          std::to_string(inst.num_vertices()));
  }
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    if (a.mask(v) & ~inst.available(v)) {
      throw AssignmentError("vertex '" + inst.vertex_label(v) + "' activates an unavailable interface");
    }
  }
}

inline bool is_covered(const Instance& inst, const Assignment& a, int e) {
  const auto& [u, v] = inst.edge(e);
  return (a.mask(u) & a.mask(v)) != 0;
}

/// Ids of the edges whose endpoints share an active interface, ascending.
inline std::vector<int> covered_edges(const Instance& inst, const Assignment& a) {
  check_assignment(inst, a);
  std::vector<int> out;
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (is_covered(inst, a, e)) out.push_back(e);
  }
  return out;
}

struct CoveringVerdict {
  bool covering = false;
  std::vector<int> uncovered;
};

inline CoveringVerdict is_covering(const Instance& inst, const Assignment& a) {
  check_assignment(inst, a);
  CoveringVerdict r;
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (!is_covered(inst, a, e)) r.uncovered.push_back(e);
  }
  r.covering = r.uncovered.empty();
  return r;
}

struct SplitGroup {
  int group;
  /// The group's terminals partitioned by connected component of G_A.
  std::vector<std::vector<Vertex>> parts;
};

struct ConnectingVerdict {
  bool connecting = false;
  std::vector<SplitGroup> split;
};

inline ConnectingVerdict is_connecting(const Instance& inst, const Assignment& a) {
  check_assignment(inst, a);
  UnionFind uf(inst.num_vertices());
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (is_covered(inst, a, e)) uf.unite(inst.edge(e).u, inst.edge(e).v);
  }
  ConnectingVerdict r;
  for (int g = 0; g < inst.num_groups(); ++g) {
    std::map<int, std::vector<Vertex>> by_root;
    for (Vertex v : inst.groups()[g]) by_root[uf.find(v)].push_back(v);
    if (by_root.size() > 1) {
      SplitGroup s{g, {}};
      for (auto& [root, part] : by_root) s.parts.push_back(std::move(part));
      std::sort(s.parts.begin(), s.parts.end());
      r.split.push_back(std::move(s));
    }
  }
  r.connecting = r.split.empty();
  return r;
}

struct CostBreakdown {
  Rational max_cost = 0;
  std::vector<Rational> per_vertex;
};

inline Rational vertex_cost(const Instance& inst, const Assignment& a, Vertex v) {
  Rational c = 0;
  for (const auto& s : inst.slots(v)) {
    if (a.active(v, s.iface)) c += s.cost;
  }
  return c;
}

/// cost(v) = sum of active interface costs at v; max-cost = max over v.
inline CostBreakdown max_cost(const Instance& inst, const Assignment& a) {
  check_assignment(inst, a);
  CostBreakdown r;
  r.per_vertex.reserve(inst.num_vertices());
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    r.per_vertex.push_back(vertex_cost(inst, a, v));
    r.max_cost = std::max(r.max_cost, r.per_vertex.back());
  }
  return r;
}

}  // namespace mina
