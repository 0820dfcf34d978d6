#pragma once

#include "mina/connectivity.hpp"
#include "mina/coverage.hpp"
#include "mina/exact.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace mina {

struct BenchTask {
  std::string name;
  /// Loads or generates the instance; exceptions become the row's error.
  std::function<Instance()> load;
  std::string algo;
};

struct BenchRow {
  std::string instance;
  std::string algo;
  int n = 0;
  int m = 0;
  int k = 0;
  std::optional<double> lp_bound;
  std::optional<double> cost;
  std::optional<double> exact_opt;
  std::optional<double> feasible_rate;
  double wall_time_ms = 0.0;
  std::string error;

  std::optional<double> ratio_vs_exact() const {
    if (!cost || !exact_opt) return std::nullopt;
    if (*exact_opt == 0.0) return *cost == 0.0 ? std::optional<double>(1.0) : std::nullopt;
    return *cost / *exact_opt;
  }
  std::optional<double> ratio_vs_lp() const {
    if (!cost || !lp_bound || *lp_bound <= 0.0) return std::nullopt;
    return *cost / *lp_bound;
  }
};

struct BenchOptions {
  std::uint64_t seed = kDefaultSeed;
  int trials = 0;
  ExactOptions exact;
  int threads = 0;
};

inline const std::vector<std::string>& algo_names() {
  static const std::vector<std::string> names = {"coverage:k", "coverage:logm", "coverage:exact", "connectivity:logm2",
                                                 "connectivity:exact"};
  return names;
}

inline bool is_connectivity_algo(const std::string& algo) { return algo.rfind("connectivity:", 0) == 0; }

/// Runs one algorithm by name. Throws std::invalid_argument on unknown names.
inline SolveReport run_algo(const Instance& inst, const std::string& algo, std::uint64_t seed, int trials,
                            const ExactOptions& exact, int restarts_floor = 3, bool preprocess = false,
                            const lp::Options& lpopt = {}) {
  if (is_connectivity_algo(algo)) {
    ConnectivityOptions o;
    o.seed = seed;
    o.trials = trials;
    o.exact = exact;
    o.restarts_floor = restarts_floor;
    o.cutting.lp = lpopt;
    if (algo == "connectivity:logm2") return solve_connectivity(inst, ConnectivityAlgo::randomized, o);
    if (algo == "connectivity:exact") return solve_connectivity(inst, ConnectivityAlgo::exact, o);
  } else {
    CoverageOptions o;
    o.seed = seed;
    o.trials = trials;
    o.exact = exact;
    o.restarts_floor = restarts_floor;
    o.preprocess = preprocess;
    o.lp = lpopt;
    if (algo == "coverage:k") return solve_coverage(inst, CoverageAlgo::k_threshold, o);
    if (algo == "coverage:logm") return solve_coverage(inst, CoverageAlgo::randomized, o);
    if (algo == "coverage:exact") return solve_coverage(inst, CoverageAlgo::exact, o);
  }
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

inline BenchRow bench_one(const BenchTask& task, const BenchOptions& opt) {
  BenchRow row;
  row.instance = task.name;
  row.algo = task.algo;
  try {
    Instance inst = task.load();
    row.n = inst.num_vertices();
    row.m = inst.num_edges();
    row.k = inst.num_interfaces();
    auto start = std::chrono::steady_clock::now();
    SolveReport rep = run_algo(inst, task.algo, opt.seed, opt.trials, opt.exact);
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    row.lp_bound = rep.lp_bound;
    row.cost = to_double(rep.max_cost);
    row.feasible_rate = rep.feasible_rate;
    if (inst.total_slots() <= opt.exact.budget) {
      auto ex = is_connectivity_algo(task.algo) ? exact_connectivity(inst, opt.exact) : exact_coverage(inst, opt.exact);
      row.exact_opt = to_double(ex.opt_cost);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline int worker_count(int requested, std::size_t tasks) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("MINA_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::max(1, std::min<int>(n, static_cast<int>(std::max<std::size_t>(1, tasks))));
}

/// Rows come back in task order whatever the number of workers.
inline std::vector<BenchRow> run_bench(const std::vector<BenchTask>& tasks, const BenchOptions& opt = {}) {
  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) rows[i] = bench_one(tasks[i], opt);
  };
  const int n = worker_count(opt.threads, tasks.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

inline const char* kBenchHeader =
    "instance,algo,n,m,k,lp_bound,cost,exact_opt,ratio_vs_exact,ratio_vs_lp,feasible_rate,wall_time_ms,error";

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

inline std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out.precision(10);
  auto opt = [&](const std::optional<double>& v) {
    if (v) out << *v;
    out << ',';
  };
  out << kBenchHeader << '\n';
  for (const auto& r : rows) {
    out << csv_escape(r.instance) << ',' << r.algo << ',' << r.n << ',' << r.m << ',' << r.k << ',';
    opt(r.lp_bound);
    opt(r.cost);
    opt(r.exact_opt);
    opt(r.ratio_vs_exact());
    opt(r.ratio_vs_lp());
    opt(r.feasible_rate);
    out << r.wall_time_ms << ',' << csv_escape(r.error) << '\n';
  }
  return out.str();
}

}  // namespace mina
