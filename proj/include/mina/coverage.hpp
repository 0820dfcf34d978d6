#pragma once

#include "mina/exact.hpp"
#include "mina/lp.hpp"
#include "mina/preprocess.hpp"
#include "mina/random.hpp"
#include "mina/report.hpp"
#include "mina/verify.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace mina {

class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoverageLpOptions {
  /// Require sum c*x >= 1 at every expensive vertex. Only meaningful for a
  /// classified (preprocessed) instance.
  bool cost_floor = true;
  lp::Options lp;
};

/// The LP together with the variable index maps needed to read it back.
struct CoverageLp {
  lp::LinearProgram program;
  int m_var = -1;
  /// [vertex][slot] -> variable, -1 for dropped slots and cheap vertices.
  std::vector<std::vector<int>> x_var;
  /// Per edge: (interface, variable) for every kept common interface.
  std::vector<std::vector<std::pair<Interface, int>>> z_var;
};

struct CoverageFractional {
  /// [vertex][slot]; cheap vertices read 1 on kept slots, dropped slots read 0.
  std::vector<std::vector<double>> x;
  std::vector<std::vector<std::pair<Interface, double>>> z;
  double M = 0.0;
  int lp_iterations = 0;
};

namespace detail {

inline int slot_of(const Instance& inst, Vertex v, Interface i) {
  auto slots = inst.slots(v);
  for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
    if (slots[j].iface == i) return j;
  }
  return -1;
}

inline bool has_x(const ScaledInstance& s, Vertex v, int slot) { return s.is_kept(v, slot) && !s.is_cheap(v); }

/// Shared by the coverage and connectivity LPs: M, x, z, the per-vertex cost
/// rows, the optional cost floor, and z <= x. Edge rows are left to the caller.
inline CoverageLp build_assignment_core(const ScaledInstance& s, bool cost_floor, bool skip_cheap_edges) {
  const Instance& inst = s.instance();
  CoverageLp out;
  auto& lp = out.program;
  const int n = inst.num_vertices();

  double m_lo = 0.0;
  double m_hi = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    double sum = 0.0;
    for (int j = 0; j < static_cast<int>(inst.slots(v).size()); ++j) {
      if (s.is_kept(v, j)) sum += s.cost(v, j);
    }
    m_hi = std::max(m_hi, sum);
    if (s.is_cheap(v)) m_lo = std::max(m_lo, sum);
  }
  out.m_var = lp.add_variable(m_lo, m_hi, 1.0, "M");

  out.x_var.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    auto slots = inst.slots(v);
    out.x_var[v].assign(slots.size(), -1);
    for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
      if (has_x(s, v, j)) {
        out.x_var[v][j] = lp.add_variable(0.0, 1.0, 0.0,
                                          "x_" + inst.interface_label(slots[j].iface) + "_" + inst.vertex_label(v));
      }
    }
  }

  for (Vertex v = 0; v < n; ++v) {
    if (s.is_cheap(v)) continue;
    std::vector<lp::Term> row;
    for (int j = 0; j < static_cast<int>(out.x_var[v].size()); ++j) {
      if (out.x_var[v][j] >= 0 && s.cost(v, j) != 0.0) row.push_back({out.x_var[v][j], s.cost(v, j)});
    }
    if (cost_floor && s.classified) lp.add_constraint(row, lp::Sense::greater_equal, 1.0);
    row.push_back({out.m_var, -1.0});
    lp.add_constraint(std::move(row), lp::Sense::less_equal, 0.0);
  }

  out.z_var.resize(inst.num_edges());
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto& [u, v] = inst.edge(e);
    if (skip_cheap_edges && s.is_cheap(u) && s.is_cheap(v)) continue;
    InterfaceMask common = s.kept_common(e);
    for (Interface i = 0; i < inst.num_interfaces(); ++i) {
      if (!(common & bit(i))) continue;
      int z = lp.add_variable(0.0, 1.0, 0.0, "z_" + inst.interface_label(i) + "_" + std::to_string(e));
      out.z_var[e].push_back({i, z});
      for (Vertex w : {u, v}) {
        int xv = out.x_var[w][slot_of(inst, w, i)];
        if (xv >= 0) lp.add_constraint({{z, 1.0}, {xv, -1.0}}, lp::Sense::less_equal, 0.0);
      }
    }
  }
  return out;
}

inline CoverageFractional read_fractional(const ScaledInstance& s, const CoverageLp& lp, const lp::Solution& sol) {
  const Instance& inst = s.instance();
  CoverageFractional f;
  f.M = sol.values[lp.m_var];
  f.lp_iterations = sol.iterations;
  f.x.resize(inst.num_vertices());
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    for (int j = 0; j < static_cast<int>(lp.x_var[v].size()); ++j) {
      double val = 0.0;
      if (lp.x_var[v][j] >= 0) {
        val = sol.values[lp.x_var[v][j]];
      } else if (s.is_kept(v, j) && s.is_cheap(v)) {
        val = 1.0;
      }
      f.x[v].push_back(val);
    }
  }
  f.z.resize(inst.num_edges());
  for (int e = 0; e < inst.num_edges(); ++e) {
    for (const auto& [i, var] : lp.z_var[e]) f.z[e].push_back({i, sol.values[var]});
  }
  return f;
}

}  // namespace detail

/// minimize M subject to: per-vertex cost <= M, the cost floor at expensive
/// vertices, sum_i z_{i,e} >= 1 per edge, and z <= x at both endpoints.
inline CoverageLp build_coverage_lp(const ScaledInstance& s, const CoverageLpOptions& opt = {}) {
  CoverageLp out = detail::build_assignment_core(s, opt.cost_floor, true);
  for (const auto& zs : out.z_var) {
    if (zs.empty()) continue;
    std::vector<lp::Term> row;
    for (const auto& [i, z] : zs) row.push_back({z, 1.0});
    out.program.add_constraint(std::move(row), lp::Sense::greater_equal, 1.0);
  }
  return out;
}

inline CoverageFractional solve_coverage_lp(const ScaledInstance& s, const CoverageLpOptions& opt = {}) {
  CoverageLp built = build_coverage_lp(s, opt);
  lp::Solution sol = lp::solve(built.program, opt.lp);
  if (sol.status != lp::Status::optimal) {
    throw NoSolution(std::string("coverage LP is ") + lp::to_string(sol.status) + " for guess b=" + std::to_string(s.b));
  }
  return detail::read_fractional(s, built, sol);
}

/// LP lower bound on OPT in original cost units: the relaxation over the
/// unscaled instance without the cost floor.
inline double coverage_lp_bound(const Instance& inst, const lp::Options& opt = {}) {
  if (inst.num_edges() == 0) return 0.0;
  CoverageLpOptions o;
  o.cost_floor = false;
  o.lp = opt;
  return solve_coverage_lp(unscaled(inst), o).M;
}

inline constexpr double kFeasTol = 1e-7;

/// Activates i at an expensive v when x_{i,v} >= 1/k - tol (k = number of
/// interfaces in the instance); cheap vertices activate all kept interfaces.
inline Assignment round_k_threshold(const ScaledInstance& s, const CoverageFractional& frac) {
  const Instance& inst = s.instance();
  const double k = std::max(1, inst.num_interfaces());
  Assignment a(inst.num_vertices());
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    auto slots = inst.slots(v);
    for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
      if (!s.is_kept(v, j)) continue;
      if (s.is_cheap(v) || frac.x[v][j] >= 1.0 / k - kFeasTol) a.activate(v, slots[j].iface);
    }
  }
  return a;
}

/// One threshold per interface, uniform on (0,1), drawn in interface order.
inline std::vector<double> draw_thresholds(int k, Rng& rng) {
  std::vector<double> t(k);
  for (auto& x : t) x = rng.uniform_open();
  return t;
}

inline double log_scale(int m, double factor) { return m >= 2 ? factor * std::log(static_cast<double>(m)) : 1.0; }

/// Threshold activation with explicit thresholds: expensive v activates kept
/// i iff scale * x_{i,v} >= t_i. Cheap vertices activate all kept interfaces.
inline Assignment activate_by_thresholds(const ScaledInstance& s, const std::vector<std::vector<double>>& x,
                                         const std::vector<double>& thresholds, double scale) {
  const Instance& inst = s.instance();
  Assignment a(inst.num_vertices());
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    auto slots = inst.slots(v);
    for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
      if (!s.is_kept(v, j)) continue;
      if (s.is_cheap(v) || scale * x[v][j] >= thresholds[slots[j].iface]) a.activate(v, slots[j].iface);
    }
  }
  return a;
}

/// Cheapest common interface of the unique edge, by max endpoint cost.
inline Assignment single_edge_assignment(const Instance& inst) {
  Assignment a(inst.num_vertices());
  if (inst.num_edges() != 1) return a;
  const auto& [u, v] = inst.edge(0);
  std::optional<Interface> best;
  Rational best_cost;
  for (Interface i = 0; i < inst.num_interfaces(); ++i) {
    auto cu = inst.cost(i, u);
    auto cv = inst.cost(i, v);
    if (!cu || !cv) continue;
    Rational c = std::max(*cu, *cv);
    if (!best || c < best_cost) {
      best = i;
      best_cost = c;
    }
  }
  if (best) {
    a.activate(u, *best);
    a.activate(v, *best);
  }
  return a;
}

struct RandomizedConfig {
  /// Multiplier of ln m in the activation test.
  double log_factor = 2.0;
};

inline Assignment round_randomized_coverage(const ScaledInstance& s, const CoverageFractional& frac,
                                           const std::vector<double>& thresholds, const RandomizedConfig& cfg = {}) {
  const Instance& inst = s.instance();
  if (inst.num_edges() <= 1) return single_edge_assignment(inst);
  return activate_by_thresholds(s, frac.x, thresholds, log_scale(inst.num_edges(), cfg.log_factor));
}

inline Assignment round_randomized_coverage(const ScaledInstance& s, const CoverageFractional& frac,
                                           std::uint64_t seed, const RandomizedConfig& cfg = {}) {
  Rng rng(seed);
  auto t = draw_thresholds(s.instance().num_interfaces(), rng);
  return round_randomized_coverage(s, frac, t, cfg);
}

enum class CoverageAlgo { k_threshold, randomized, exact };

inline const char* to_string(CoverageAlgo a) {
  switch (a) {
    case CoverageAlgo::k_threshold: return "coverage:k";
    case CoverageAlgo::randomized: return "coverage:logm";
    case CoverageAlgo::exact: return "coverage:exact";
  }
  return "?";
}

struct CoverageOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Extra single-run Monte-Carlo trials of the randomized rounding at the
  /// chosen guess, reported as feasible_rate.
  int trials = 0;
  int restarts_floor = 3;
  /// k-threshold only: when true, round the per-guess LP (with the cost
  /// floor) instead of the unscaled LP.
  bool preprocess = false;
  RandomizedConfig randomized;
  ExactOptions exact;
  lp::Options lp;
};

/// Caches one fractional solution per guess.
class CoverageSolver {
 public:
  explicit CoverageSolver(const Instance& inst, CoverageOptions opt = {}) : inst_(inst), opt_(std::move(opt)) {}

  const CoverageFractional& fractional(const ScaledInstance& s) {
    auto it = cache_.find(s.b);
    if (it == cache_.end()) {
      CoverageLpOptions o;
      o.lp = opt_.lp;
      o.cost_floor = s.classified;
      it = cache_.emplace(s.b, solve_coverage_lp(s, o)).first;
    }
    return it->second;
  }

  RunOutcome randomized_run(const ScaledInstance& s, std::uint64_t seed) {
    Assignment a = round_randomized_coverage(s, fractional(s), seed, opt_.randomized);
    bool ok = is_covering(inst_, a).covering;
    return {std::move(a), ok};
  }

  SolveReport solve(CoverageAlgo algo) {
    SolveReport r;
    r.problem = "coverage";
    r.algo = to_string(algo);
    r.seed = opt_.seed;
    r.lp_bound = coverage_lp_bound(inst_, opt_.lp);

    switch (algo) {
      case CoverageAlgo::exact: {
        ExactResult ex = exact_coverage(inst_, opt_.exact);
        r.assignment = ex.assignment;
        r.feasible = true;
        r.exact_nodes = static_cast<long long>(ex.nodes);
        break;
      }
      case CoverageAlgo::k_threshold: {
        ScaledInstance s = unscaled(inst_);
        if (opt_.preprocess) {
          auto guesses = enumerate_guesses(inst_, Problem::coverage);
          if (guesses.empty()) throw NoSolution("no feasible guess");
          s = std::move(guesses.front());
        }
        const auto& frac = fractional(s);
        r.b = s.b;
        r.lp_guess = frac.M;
        r.assignment = round_k_threshold(s, frac);
        r.feasible = is_covering(inst_, *r.assignment).covering;
        r.runs = 1;
        r.feasible_runs = r.feasible ? 1 : 0;
        break;
      }
      case CoverageAlgo::randomized: {
        RestartOptions ro;
        ro.restarts_floor = opt_.restarts_floor;
        auto res = run_with_restarts(
            inst_, Problem::coverage,
            [this](const ScaledInstance& s, std::uint64_t seed) { return randomized_run(s, seed); }, opt_.seed, ro);
        r.guesses = res.guesses;
        r.runs_per_guess = res.runs_per_guess;
        r.runs = res.runs;
        r.feasible_runs = res.feasible_runs;
        if (!res.best) throw NoSolution("no run produced a covering assignment");
        r.assignment = std::move(res.best);
        r.feasible = true;
        r.b = res.b;
        ScaledInstance chosen = scale_instance(inst_, res.b);
        r.lp_guess = fractional(chosen).M;
        if (opt_.trials > 0) {
          int ok = 0;
          for (int t = 0; t < opt_.trials; ++t) {
            ok += randomized_run(chosen, derive_seed(opt_.seed, kTrialStream, t)).feasible ? 1 : 0;
          }
          r.trials = opt_.trials;
          r.feasible_rate = static_cast<double>(ok) / opt_.trials;
        }
        break;
      }
    }
    fill_costs(inst_, r);
    return r;
  }

  static constexpr std::int64_t kTrialStream = -1;

 private:
  const Instance& inst_;
  CoverageOptions opt_;
  std::map<int, CoverageFractional> cache_;
};

inline SolveReport solve_coverage(const Instance& inst, CoverageAlgo algo, const CoverageOptions& opt = {}) {
  return CoverageSolver(inst, opt).solve(algo);
}

}  // namespace mina
