#pragma once

#include "mina/rational.hpp"
#include "mina/union_find.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mina {

using Vertex = int;
using Interface = int;
using InterfaceMask = std::uint64_t;

inline constexpr int kMaxInterfaces = 64;

inline constexpr InterfaceMask bit(Interface i) { return InterfaceMask{1} << i; }

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One available interface at a vertex together with its activation cost.
struct Slot {
  Interface iface;
  Rational cost;
  friend bool operator==(const Slot&, const Slot&) = default;
};

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph + available interfaces + heterogeneous costs + terminal groups.
/// Vertices and interfaces are dense indices; the original labels are kept
/// for I/O. Immutable once built.
class Instance {
 public:
  int num_vertices() const { return static_cast<int>(slots_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  /// Number of distinct interface identifiers appearing in the instance.
  int num_interfaces() const { return static_cast<int>(interface_labels_.size()); }
  int num_groups() const { return static_cast<int>(groups_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  /// Available interfaces of v sorted by interface index.
  std::span<const Slot> slots(Vertex v) const { return slots_[v]; }
  InterfaceMask available(Vertex v) const { return available_[v]; }
  const std::vector<std::vector<Vertex>>& groups() const { return groups_; }
  /// Incident edge ids per vertex.
  const std::vector<int>& incident(Vertex v) const { return incident_[v]; }

  std::optional<Rational> cost(Interface i, Vertex v) const {
    for (const auto& s : slots_[v]) {
      if (s.iface == i) return s.cost;
    }
    return std::nullopt;
  }

  InterfaceMask common(int e) const { return available_[edges_[e].u] & available_[edges_[e].v]; }

  const std::string& vertex_label(Vertex v) const { return vertex_labels_[v]; }
  const std::string& interface_label(Interface i) const { return interface_labels_[i]; }
  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }
  const std::vector<std::string>& interface_labels() const { return interface_labels_; }

  std::optional<Vertex> find_vertex(const std::string& label) const {
    auto it = vertex_index_.find(label);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Interface> find_interface(const std::string& label) const {
    auto it = interface_index_.find(label);
    if (it == interface_index_.end()) return std::nullopt;
    return it->second;
  }

  Rational max_cost_value() const {
    Rational best = 0;
    for (const auto& vs : slots_) {
      for (const auto& s : vs) best = std::max(best, s.cost);
    }
    return best;
  }

  int total_slots() const {
    int t = 0;
    for (const auto& vs : slots_) t += static_cast<int>(vs.size());
    return t;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.edges_ == b.edges_ && a.slots_ == b.slots_ && a.groups_ == b.groups_ &&
           a.vertex_labels_ == b.vertex_labels_ && a.interface_labels_ == b.interface_labels_;
  }

 private:
  friend class InstanceBuilder;

  std::vector<Edge> edges_;
  std::vector<std::vector<Slot>> slots_;
  std::vector<InterfaceMask> available_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<Vertex>> groups_;
  std::vector<std::string> vertex_labels_;
  std::vector<std::string> interface_labels_;
  std::map<std::string, Vertex> vertex_index_;
  std::map<std::string, Interface> interface_index_;
};

/// Assembles an Instance from labelled pieces. Labels are mapped to dense
/// indices in order of first appearance. Structural errors (duplicates,
/// self-loops, unknown labels) throw InstanceError immediately; semantic
/// invariants are left to validate().
class InstanceBuilder {
 public:
  Vertex add_vertex(const std::string& label) {
    if (inst_.vertex_index_.count(label)) throw InstanceError("duplicate vertex '" + label + "'");
    Vertex v = static_cast<Vertex>(inst_.slots_.size());
    inst_.vertex_index_.emplace(label, v);
    inst_.vertex_labels_.push_back(label);
    inst_.slots_.emplace_back();
    inst_.available_.push_back(0);
    inst_.incident_.emplace_back();
    return v;
  }

  Interface interface(const std::string& label) {
    if (auto it = inst_.interface_index_.find(label); it != inst_.interface_index_.end()) return it->second;
    if (inst_.num_interfaces() >= kMaxInterfaces) {
      throw InstanceError("more than " + std::to_string(kMaxInterfaces) + " distinct interfaces");
    }
    Interface i = inst_.num_interfaces();
    inst_.interface_index_.emplace(label, i);
    inst_.interface_labels_.push_back(label);
    return i;
  }

  void add_slot(Vertex v, const std::string& iface_label, Rational cost) {
    check_vertex(v);
    if (cost < 0) throw InstanceError("negative cost at vertex '" + inst_.vertex_labels_[v] + "'");
    Interface i = interface(iface_label);
    if (inst_.available_[v] & bit(i)) {
      throw InstanceError("interface '" + iface_label + "' listed twice at vertex '" + inst_.vertex_labels_[v] + "'");
    }
    inst_.available_[v] |= bit(i);
    auto& vs = inst_.slots_[v];
    Slot slot{i, std::move(cost)};
    vs.insert(std::upper_bound(vs.begin(), vs.end(), slot,
                               [](const Slot& a, const Slot& b) { return a.iface < b.iface; }),
              std::move(slot));
  }

  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InstanceError("self-loop at vertex '" + inst_.vertex_labels_[u] + "'");
    auto key = std::minmax(u, v);
    if (!edge_keys_.insert(key).second) {
      throw InstanceError("duplicate edge " + inst_.vertex_labels_[u] + "-" + inst_.vertex_labels_[v]);
    }
    int id = static_cast<int>(inst_.edges_.size());
    inst_.edges_.push_back({u, v});
    inst_.incident_[u].push_back(id);
    inst_.incident_[v].push_back(id);
  }

  void add_group(std::vector<Vertex> group) {
    for (Vertex v : group) check_vertex(v);
    inst_.groups_.push_back(std::move(group));
  }

  std::optional<Vertex> find_vertex(const std::string& label) const { return inst_.find_vertex(label); }

  Instance build() && { return std::move(inst_); }

 private:
  void check_vertex(Vertex v) const {
    if (v < 0 || v >= inst_.num_vertices()) throw InstanceError("unknown vertex index " + std::to_string(v));
  }

  Instance inst_;
  std::set<std::pair<Vertex, Vertex>> edge_keys_;
};

/// An invariant violation: what broke and where.
struct Violation {
  std::string what;
  std::string where;

  std::string to_string() const { return where.empty() ? what : what + ": " + where; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Lists every violated Instance invariant; empty iff the instance is valid.
inline std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const int n = inst.num_vertices();

  if (n > 0) {
    UnionFind uf(n);
    for (const auto& e : inst.edges()) uf.unite(e.u, e.v);
    if (uf.components() != 1) out.push_back({"graph not connected", ""});
  }

  std::set<std::pair<Vertex, Vertex>> seen;
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto& [u, v] = inst.edge(e);
    std::string name = inst.vertex_label(u) + "-" + inst.vertex_label(v);
    if (u == v) out.push_back({"self-loop", name});
    if (!seen.insert(std::minmax(u, v)).second) out.push_back({"duplicate edge", name});
    if (inst.common(e) == 0) out.push_back({"edge lacks common interface", name});
  }

  for (Vertex v = 0; v < n; ++v) {
    for (const auto& s : inst.slots(v)) {
      if (s.cost < 0) out.push_back({"negative cost", inst.vertex_label(v)});
    }
  }

  std::vector<int> owner(n, -1);
  bool overlap = false;
  for (int r = 0; r < inst.num_groups(); ++r) {
    const auto& g = inst.groups()[r];
    if (g.empty()) out.push_back({"empty group", "group " + std::to_string(r)});
    for (Vertex v : g) {
      if (v < 0 || v >= n) {
        out.push_back({"group references unknown vertex", "group " + std::to_string(r)});
        continue;
      }
      if (owner[v] != -1 && !overlap) {
        out.push_back({"groups not disjoint", inst.vertex_label(v)});
        overlap = true;
      }
      owner[v] = r;
    }
  }
  return out;
}

/// Per-vertex set of activated interfaces, as bitmasks over interface indices.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vertices) : active_(num_vertices, 0) {}

  int num_vertices() const { return static_cast<int>(active_.size()); }
  InterfaceMask mask(Vertex v) const { return active_[v]; }
  bool active(Vertex v, Interface i) const { return (active_[v] & bit(i)) != 0; }
  void activate(Vertex v, Interface i) { active_[v] |= bit(i); }
  void set(Vertex v, InterfaceMask m) { active_[v] = m; }

  Assignment& unite(const Assignment& other) {
    for (std::size_t v = 0; v < active_.size(); ++v) active_[v] |= other.active_[v];
    return *this;
  }

  int total_active() const {
    int t = 0;
    for (auto m : active_) t += std::popcount(m);
    return t;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<InterfaceMask> active_;
};

/// Every vertex activates all of its available interfaces.
inline Assignment activate_all(const Instance& inst) {
  Assignment a(inst.num_vertices());
  for (Vertex v = 0; v < inst.num_vertices(); ++v) a.set(v, inst.available(v));
  return a;
}

}  // namespace mina
