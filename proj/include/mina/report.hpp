#pragma once

#include "mina/instance.hpp"
#include "mina/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mina {

/// Outcome of one solve call, common to all algorithms.
struct SolveReport {
  std::string problem;
  std::string algo;
  bool feasible = false;
  /// Guess exponent the assignment came from; -1 when no scaling was used.
  int b = -1;
  /// Lower bound on OPT from the LP relaxation, original cost units.
  std::optional<double> lp_bound;
  /// Optimum of the LP that was rounded, in that LP's (scaled) units.
  std::optional<double> lp_guess;
  Rational max_cost = 0;
  std::vector<Rational> per_vertex;
  std::optional<Assignment> assignment;
  std::uint64_t seed = 0;
  int trials = 0;
  std::optional<double> feasible_rate;
  int guesses = 0;
  int runs_per_guess = 0;
  int runs = 0;
  int feasible_runs = 0;
  std::optional<int> cuts_generated;
  std::optional<int> oracle_calls;
  std::optional<int> rounds_used;
  std::optional<int> h_size;
  std::optional<long long> exact_nodes;
};

inline void fill_costs(const Instance& inst, SolveReport& r) {
  if (!r.assignment) return;
  auto c = max_cost(inst, *r.assignment);
  r.max_cost = c.max_cost;
  r.per_vertex = std::move(c.per_vertex);
}

inline nlohmann::ordered_json to_json(const Instance& inst, const SolveReport& r) {
  nlohmann::ordered_json j;
  j["problem"] = r.problem;
  j["algo"] = r.algo;
  j["feasible"] = r.feasible;
  j["b"] = r.b;
  j["lp_bound"] = r.lp_bound ? nlohmann::ordered_json(*r.lp_bound) : nlohmann::ordered_json(nullptr);
  j["lp_guess"] = r.lp_guess ? nlohmann::ordered_json(*r.lp_guess) : nlohmann::ordered_json(nullptr);
  j["max_cost"] = to_double(r.max_cost);
  j["max_cost_exact"] = format_rational(r.max_cost);
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["feasible_rate"] = r.feasible_rate ? nlohmann::ordered_json(*r.feasible_rate) : nlohmann::ordered_json(nullptr);
  j["guesses"] = r.guesses;
  j["runs_per_guess"] = r.runs_per_guess;
  j["runs"] = r.runs;
  j["feasible_runs"] = r.feasible_runs;
  if (r.cuts_generated) j["cuts_generated"] = *r.cuts_generated;
  if (r.oracle_calls) j["oracle_calls"] = *r.oracle_calls;
  if (r.rounds_used) j["rounds_used"] = *r.rounds_used;
  if (r.h_size) j["H_size"] = *r.h_size;
  if (r.exact_nodes) j["exact_nodes"] = *r.exact_nodes;

  auto per_vertex = nlohmann::ordered_json::object();
  for (Vertex v = 0; v < static_cast<Vertex>(r.per_vertex.size()); ++v) {
    per_vertex[inst.vertex_label(v)] = format_rational(r.per_vertex[v]);
  }
  j["per_vertex"] = per_vertex;

  auto assignment = nlohmann::ordered_json::object();
  if (r.assignment) {
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      auto ifaces = nlohmann::ordered_json::array();
      for (Interface i = 0; i < inst.num_interfaces(); ++i) {
        if (r.assignment->active(v, i)) ifaces.push_back(inst.interface_label(i));
      }
      if (!ifaces.empty()) assignment[inst.vertex_label(v)] = ifaces;
    }
  }
  j["assignment"] = assignment;
  return j;
}

inline std::string to_text(const Instance& inst, const SolveReport& r) {
  std::ostringstream out;
  out.precision(10);
  out << "problem:   " << r.problem << '\n';
  out << "algo:      " << r.algo << '\n';
  out << "feasible:  " << (r.feasible ? "yes" : "no") << '\n';
  out << "max-cost:  " << format_rational(r.max_cost) << '\n';
  if (r.lp_bound) out << "lp bound:  " << *r.lp_bound << '\n';
  if (r.b >= 0) out << "guess b:   " << r.b << '\n';
  if (r.lp_guess) out << "lp (guess): " << *r.lp_guess << '\n';
  out << "seed:      " << r.seed << '\n';
  if (r.runs > 0) out << "runs:      " << r.feasible_runs << '/' << r.runs << " feasible\n";
  if (r.feasible_rate) out << "trials:    " << r.trials << " (feasible rate " << *r.feasible_rate << ")\n";
  if (r.cuts_generated) out << "cuts:      " << *r.cuts_generated << " (oracle calls " << r.oracle_calls.value_or(0) << ")\n";
  if (r.rounds_used) out << "rounds:    " << *r.rounds_used << ", |H| = " << r.h_size.value_or(0) << '\n';
  if (r.assignment) {
    out << "assignment:\n";
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      if (r.assignment->mask(v) == 0) continue;
      out << "  " << inst.vertex_label(v) << ':';
      for (Interface i = 0; i < inst.num_interfaces(); ++i) {
        if (r.assignment->active(v, i)) out << ' ' << inst.interface_label(i);
      }
      out << "  (cost " << format_rational(r.per_vertex[v]) << ")\n";
    }
  }
  return out.str();
}

}  // namespace mina
