#pragma once

#include "mina/coverage.hpp"
#include "mina/maxflow.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mina {

class ConnectivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSepTol = 1e-6;

struct ConnectivityLp {
  CoverageLp core;
  std::vector<int> y_var;
};

struct ConnectivityFractional {
  std::vector<std::vector<double>> x;
  std::vector<std::vector<std::pair<Interface, double>>> z;
  std::vector<double> y;
  double M = 0.0;
  int cuts_generated = 0;
  int oracle_calls = 0;
  int lp_iterations = 0;
};

/// The connectivity LP without any cut rows: the coverage core plus
/// y_e in [0,1] and sum_i z_{i,e} >= y_e.
inline ConnectivityLp build_connectivity_lp(const ScaledInstance& s, bool cost_floor = true) {
  const Instance& inst = s.instance();
  ConnectivityLp out;
  out.core = detail::build_assignment_core(s, cost_floor, false);
  auto& lp = out.core.program;
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto& zs = out.core.z_var[e];
    int y = lp.add_variable(0.0, zs.empty() ? 0.0 : 1.0, 0.0, "y_" + std::to_string(e));
    out.y_var.push_back(y);
    if (zs.empty()) continue;
    std::vector<lp::Term> row;
    for (const auto& [i, z] : zs) row.push_back({z, 1.0});
    row.push_back({y, -1.0});
    lp.add_constraint(std::move(row), lp::Sense::greater_equal, 0.0);
  }
  return out;
}

struct SeparatedCut {
  int group = -1;
  Vertex source = -1;
  Vertex sink = -1;
  Cut<double> cut;
};

struct SeparationResult {
  std::optional<SeparatedCut> violated;
  int flow_calls = 0;
};

/// For every group, min cuts from its first terminal to each other terminal
/// under capacities y. Returns the smallest one if it is below 1 - tol.
inline SeparationResult separation_oracle(const Instance& inst, const std::vector<double>& y, double tol = kSepTol) {
  CapGraph<double> g(inst.num_vertices());
  for (int e = 0; e < inst.num_edges(); ++e) g.add_edge(inst.edge(e).u, inst.edge(e).v, std::clamp(y[e], 0.0, 1.0));
  SeparationResult r;
  std::optional<SeparatedCut> best;
  for (int gi = 0; gi < inst.num_groups(); ++gi) {
    const auto& group = inst.groups()[gi];
    for (std::size_t k = 1; k < group.size(); ++k) {
      auto f = max_flow_min_cut(g, group.front(), group[k]);
      ++r.flow_calls;
      if (!best || f.cut.value < best->cut.value) best = SeparatedCut{gi, group.front(), group[k], std::move(f.cut)};
    }
  }
  if (best && best->cut.value < 1.0 - tol) r.violated = std::move(best);
  return r;
}

struct CuttingPlaneOptions {
  bool cost_floor = true;
  double sep_tol = kSepTol;
  /// 0 = 10 * n * p.
  int max_iterations = 0;
  lp::Options lp;
};

/// Cutting-plane solve: starts from the terminal singleton cuts and adds the
/// oracle's most violated cut until none remains.
inline ConnectivityFractional solve_connectivity_lp(const ScaledInstance& s, const CuttingPlaneOptions& opt = {}) {
  const Instance& inst = s.instance();
  if (!detail::groups_connectable(inst, s.kept_mask)) {
    throw NoSolution("some group cannot be connected under guess b=" + std::to_string(s.b));
  }
  ConnectivityLp built = build_connectivity_lp(s, opt.cost_floor && s.classified);
  auto& lp = built.core.program;

  auto cut_row = [&](const std::vector<bool>& side) {
    std::vector<lp::Term> row;
    for (int e = 0; e < inst.num_edges(); ++e) {
      if (side[inst.edge(e).u] != side[inst.edge(e).v]) row.push_back({built.y_var[e], 1.0});
    }
    return row;
  };

  ConnectivityFractional f;
  for (const auto& g : inst.groups()) {
    if (g.size() < 2) continue;
    for (Vertex t : g) {
      std::vector<bool> side(inst.num_vertices(), false);
      side[t] = true;
      lp.add_constraint(cut_row(side), lp::Sense::greater_equal, 1.0);
      ++f.cuts_generated;
    }
  }

  lp::Solution sol = lp::solve(lp, opt.lp);
  const int cap = opt.max_iterations > 0 ? opt.max_iterations
                                         : std::max(10, 10 * inst.num_vertices() * std::max(1, inst.num_groups()));
  for (int it = 0;; ++it) {
    if (sol.status != lp::Status::optimal) {
      throw NoSolution(std::string("connectivity LP is ") + lp::to_string(sol.status) + " for guess b=" +
                       std::to_string(s.b));
    }
    std::vector<double> y(inst.num_edges());
    for (int e = 0; e < inst.num_edges(); ++e) y[e] = sol.values[built.y_var[e]];
    auto sep = separation_oracle(inst, y, opt.sep_tol);
    ++f.oracle_calls;
    if (!sep.violated) {
      f.y = std::move(y);
      break;
    }
    if (it >= cap) {
      throw ConnectivityError("cutting-plane iteration cap " + std::to_string(cap) + " exceeded (b=" +
                              std::to_string(s.b) + ", " + std::to_string(f.cuts_generated) +
                              " cuts, last violation value " + std::to_string(sep.violated->cut.value) + ")");
    }
    sol = lp::add_constraint_and_resolve(lp, sol, cut_row(sep.violated->cut.side_S), lp::Sense::greater_equal, 1.0,
                                         opt.lp);
    ++f.cuts_generated;
  }
  CoverageFractional cf = detail::read_fractional(s, built.core, sol);
  f.x = std::move(cf.x);
  f.z = std::move(cf.z);
  f.M = cf.M;
  f.lp_iterations = sol.iterations;
  return f;
}

/// LP lower bound on the connectivity OPT in original units (unscaled, no
/// cost floor).
inline double connectivity_lp_bound(const Instance& inst, const lp::Options& lpopt = {}) {
  CuttingPlaneOptions o;
  o.cost_floor = false;
  o.lp = lpopt;
  return solve_connectivity_lp(unscaled(inst), o).M;
}

struct ConnectivityConfig {
  /// Multiplier of ln m in p_e = min(1, factor * ln m * y_e).
  double sample_factor = 4.0;
  /// Multiplier of ln m in the per-round activation test.
  double round_factor = 4.0;
  /// Cheap vertices activate everything only when incident to H or in a
  /// group; false activates every cheap vertex.
  bool cheap_only_where_needed = true;
};

/// Each edge independently with probability min(1, factor * ln m * y_e).
inline std::vector<int> sample_H(const Instance& inst, const std::vector<double>& y, std::uint64_t seed,
                                 double factor = 4.0) {
  Rng rng(seed);
  const int m = inst.num_edges();
  const double scale = m >= 2 ? factor * std::log(static_cast<double>(m)) : 1.0;
  std::vector<int> h;
  for (int e = 0; e < m; ++e) {
    double p = std::min(1.0, scale * y[e]);
    if (rng.uniform() < p) h.push_back(e);
  }
  return h;
}

/// T = ceil(2 ln m / (1 - 1/e)), at least 1.
inline int rounding_rounds(int m) {
  if (m < 2) return 1;
  return std::max(1, static_cast<int>(std::ceil(2.0 * std::log(static_cast<double>(m)) / (1.0 - std::exp(-1.0)))));
}

struct RoundingState {
  std::vector<int> H;
  /// covered[j] refers to H[j].
  std::vector<bool> covered;
  Assignment lambda_acc{0};
  int round = 0;

  int covered_count() const { return static_cast<int>(std::count(covered.begin(), covered.end(), true)); }
  bool all_covered() const { return covered_count() == static_cast<int>(H.size()); }
};

/// The T-round rounding as an explicit stepper so single rounds can be
/// observed. Each step draws fresh thresholds and unions the activation into
/// the accumulated assignment.
class IterativeRounding {
 public:
  IterativeRounding(const ScaledInstance& s, const ConnectivityFractional& frac, std::vector<int> H,
                    std::uint64_t seed, const ConnectivityConfig& cfg = {})
      : s_(s), frac_(frac), rng_(seed), cfg_(cfg) {
    const Instance& inst = s.instance();
    rounds_ = rounding_rounds(inst.num_edges());
    scale_ = log_scale(inst.num_edges(), cfg.round_factor);
    state_.H = std::move(H);
    state_.covered.assign(state_.H.size(), false);
    state_.lambda_acc = Assignment(inst.num_vertices());

    std::vector<bool> wanted(inst.num_vertices(), !cfg.cheap_only_where_needed);
    for (int e : state_.H) {
      wanted[inst.edge(e).u] = true;
      wanted[inst.edge(e).v] = true;
    }
    for (const auto& g : inst.groups()) {
      for (Vertex v : g) wanted[v] = true;
    }
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      if (s.is_cheap(v) && wanted[v]) state_.lambda_acc.set(v, s.kept_mask[v]);
    }
    refresh();
  }

  int total_rounds() const { return rounds_; }
  bool done() const { return state_.round >= rounds_ || state_.all_covered(); }
  const RoundingState& state() const { return state_; }

  void step() {
    const Instance& inst = s_.instance();
    auto t = draw_thresholds(inst.num_interfaces(), rng_);
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      if (s_.is_cheap(v)) continue;
      auto slots = inst.slots(v);
      for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
        if (s_.is_kept(v, j) && scale_ * frac_.x[v][j] >= t[slots[j].iface]) state_.lambda_acc.activate(v, slots[j].iface);
      }
    }
    ++state_.round;
    refresh();
  }

  void run() {
    while (!done()) step();
  }

 private:
  void refresh() {
    for (std::size_t j = 0; j < state_.H.size(); ++j) {
      if (!state_.covered[j]) state_.covered[j] = is_covered(s_.instance(), state_.lambda_acc, state_.H[j]);
    }
  }

  const ScaledInstance& s_;
  const ConnectivityFractional& frac_;
  Rng rng_;
  ConnectivityConfig cfg_;
  int rounds_ = 1;
  double scale_ = 1.0;
  RoundingState state_;
};

inline RoundingState iterative_rounding(const ScaledInstance& s, const ConnectivityFractional& frac,
                                        std::vector<int> H, std::uint64_t seed, const ConnectivityConfig& cfg = {}) {
  IterativeRounding r(s, frac, std::move(H), seed, cfg);
  r.run();
  return r.state();
}

enum class ConnectivityAlgo { randomized, exact };

inline const char* to_string(ConnectivityAlgo a) {
  return a == ConnectivityAlgo::randomized ? "connectivity:logm2" : "connectivity:exact";
}

struct ConnectivityOptions {
  std::uint64_t seed = kDefaultSeed;
  int trials = 0;
  int restarts_floor = 3;
  ConnectivityConfig config;
  CuttingPlaneOptions cutting;
  ExactOptions exact;
};

struct ConnectivityRun {
  RunOutcome outcome;
  int rounds_used = 0;
  int h_size = 0;
};

class ConnectivitySolver {
 public:
  explicit ConnectivitySolver(const Instance& inst, ConnectivityOptions opt = {}) : inst_(inst), opt_(std::move(opt)) {}

  const ConnectivityFractional& fractional(const ScaledInstance& s) {
    auto it = cache_.find(s.b);
    if (it == cache_.end()) it = cache_.emplace(s.b, solve_connectivity_lp(s, opt_.cutting)).first;
    return it->second;
  }

  /// One run: H from derive_seed(seed, 1), rounding from derive_seed(seed, 2).
  ConnectivityRun run(const ScaledInstance& s, std::uint64_t seed) {
    ConnectivityRun r;
    if (inst_.num_edges() == 1) {
      r.outcome.assignment = single_edge_assignment(inst_);
      r.outcome.feasible = is_connecting(inst_, r.outcome.assignment).connecting;
      return r;
    }
    const auto& frac = fractional(s);
    auto H = sample_H(inst_, frac.y, derive_seed(seed, 1), opt_.config.sample_factor);
    r.h_size = static_cast<int>(H.size());
    auto state = iterative_rounding(s, frac, std::move(H), derive_seed(seed, 2), opt_.config);
    r.rounds_used = state.round;
    r.outcome.feasible = is_connecting(inst_, state.lambda_acc).connecting;
    r.outcome.assignment = std::move(state.lambda_acc);
    return r;
  }

  SolveReport solve(ConnectivityAlgo algo) {
    SolveReport r;
    r.problem = "connectivity";
    r.algo = to_string(algo);
    r.seed = opt_.seed;
    r.lp_bound = connectivity_lp_bound(inst_, opt_.cutting.lp);

    if (algo == ConnectivityAlgo::exact) {
      ExactResult ex = exact_connectivity(inst_, opt_.exact);
      r.assignment = ex.assignment;
      r.feasible = true;
      r.exact_nodes = static_cast<long long>(ex.nodes);
      fill_costs(inst_, r);
      return r;
    }

    std::map<std::uint64_t, ConnectivityRun> runs;
    RestartOptions ro;
    ro.restarts_floor = opt_.restarts_floor;
    auto res = run_with_restarts(
        inst_, Problem::connectivity,
        [&](const ScaledInstance& s, std::uint64_t seed) {
          ConnectivityRun cr = run(s, seed);
          RunOutcome out = cr.outcome;
          runs.emplace(seed, std::move(cr));
          return out;
        },
        opt_.seed, ro);
    r.guesses = res.guesses;
    r.runs_per_guess = res.runs_per_guess;
    r.runs = res.runs;
    r.feasible_runs = res.feasible_runs;
    if (!res.best) throw NoSolution("no run produced a connecting assignment");
    r.assignment = std::move(res.best);
    r.feasible = true;
    r.b = res.b;
    ScaledInstance chosen = scale_instance(inst_, res.b);
    const auto& frac = fractional(chosen);
    r.lp_guess = frac.M;
    r.cuts_generated = frac.cuts_generated;
    r.oracle_calls = frac.oracle_calls;
    const auto& best_run = runs.at(derive_seed(opt_.seed, res.b, res.run));
    r.rounds_used = best_run.rounds_used;
    r.h_size = best_run.h_size;
    if (opt_.trials > 0) {
      int ok = 0;
      for (int t = 0; t < opt_.trials; ++t) {
        ok += run(chosen, derive_seed(opt_.seed, CoverageSolver::kTrialStream, t)).outcome.feasible ? 1 : 0;
      }
      r.trials = opt_.trials;
      r.feasible_rate = static_cast<double>(ok) / opt_.trials;
    }
    fill_costs(inst_, r);
    return r;
  }

 private:
  const Instance& inst_;
  ConnectivityOptions opt_;
  std::map<int, ConnectivityFractional> cache_;
};

inline SolveReport solve_connectivity(const Instance& inst, ConnectivityAlgo algo, const ConnectivityOptions& opt = {}) {
  return ConnectivitySolver(inst, opt).solve(algo);
}

}  // namespace mina
