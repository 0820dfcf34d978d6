#pragma once

#include "mina/instance_io.hpp"

#include <string>

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(MINA_INSTANCES_DIR) + "/" + name; }

inline mina::Instance load(const std::string& name) { return mina::load_instance(path(name)); }

inline mina::Assignment load_assignment(const mina::Instance& inst, const std::string& name) {
  return mina::parse_assignment(inst, mina::read_file(path(name)));
}

/// Star with a center holding interfaces 1..k and leaf j holding only j.
/// Unit costs unless given. All vertices form one group when `grouped`.
inline mina::Instance star(int k, bool grouped) {
  mina::InstanceBuilder b;
  auto c = b.add_vertex("c");
  for (int j = 1; j <= k; ++j) b.add_slot(c, std::to_string(j), 1);
  std::vector<mina::Vertex> all{c};
  for (int j = 1; j <= k; ++j) {
    auto l = b.add_vertex("l" + std::to_string(j));
    b.add_slot(l, std::to_string(j), 1);
    b.add_edge(c, l);
    all.push_back(l);
  }
  if (grouped) b.add_group(all);
  return std::move(b).build();
}

}  // namespace fixtures
