#include "mina/mina.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitError = 4;

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = std::stoull(s, &used, 0);
  if (used != s.size()) throw std::invalid_argument("bad seed '" + s + "'");
  return v;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct Globals {
  std::string seed = "0xC0FFEE";
  int trials = 0;
  std::string out = "json";
  int budget = 24;
};

struct SolveArgs {
  std::string instance;
  std::string algo = "coverage:k";
  std::string exact_method = "plain";
  int restarts_floor = 3;
  bool preprocess = false;
  std::string assignment_out;
  std::string lp_dump;
};

mina::ExactOptions exact_options(const Globals& g, const std::string& method) {
  mina::ExactOptions e;
  e.budget = g.budget;
  e.method = method == "bnb" ? mina::ExactMethod::branch_and_bound : mina::ExactMethod::plain;
  return e;
}

int cmd_solve(const Globals& g, const SolveArgs& a) {
  mina::Instance inst;
  try {
    inst = mina::load_instance(a.instance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (!a.lp_dump.empty()) {
    mina::ScaledInstance s = mina::unscaled(inst);
    std::string text = mina::is_connectivity_algo(a.algo) ? mina::build_connectivity_lp(s, false).core.program.dump()
                                                          : mina::build_coverage_lp(s).program.dump();
    write_file(a.lp_dump, text);
  }
  mina::SolveReport rep;
  try {
    rep = mina::run_algo(inst, a.algo, parse_seed(g.seed), g.trials, exact_options(g, a.exact_method),
                         a.restarts_floor, a.preprocess);
  } catch (const mina::NoSolution& e) {
    std::cerr << "no solution: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const mina::ExactError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return std::string(e.what()).rfind("infeasible", 0) == 0 ? kExitInfeasible : kExitError;
  }
  if (g.out == "text") {
    std::cout << mina::to_text(inst, rep);
  } else {
    std::cout << mina::to_json(inst, rep).dump(2) << '\n';
  }
  if (!a.assignment_out.empty() && rep.assignment) {
    write_file(a.assignment_out, mina::serialize_assignment(inst, *rep.assignment));
  }
  return rep.feasible ? kExitOk : kExitInfeasible;
}

int cmd_verify(const std::string& instance_path, const std::string& assignment_path, const std::string& mode) {
  mina::Instance inst;
  mina::Assignment asg(0);
  try {
    inst = mina::load_instance(instance_path);
    asg = mina::parse_assignment(inst, mina::read_file(assignment_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  nlohmann::ordered_json j;
  j["mode"] = mode;
  bool ok = false;
  if (mode == "covering") {
    auto v = mina::is_covering(inst, asg);
    ok = v.covering;
    auto list = nlohmann::ordered_json::array();
    for (int e : v.uncovered) {
      list.push_back({inst.vertex_label(inst.edge(e).u), inst.vertex_label(inst.edge(e).v)});
    }
    j["ok"] = ok;
    j["uncovered"] = list;
  } else {
    auto v = mina::is_connecting(inst, asg);
    ok = v.connecting;
    auto list = nlohmann::ordered_json::array();
    for (const auto& s : v.split) {
      nlohmann::ordered_json item;
      item["group"] = s.group;
      auto parts = nlohmann::ordered_json::array();
      for (const auto& p : s.parts) {
        auto labels = nlohmann::ordered_json::array();
        for (mina::Vertex x : p) labels.push_back(inst.vertex_label(x));
        parts.push_back(labels);
      }
      item["parts"] = parts;
      list.push_back(item);
    }
    j["ok"] = ok;
    j["split_groups"] = list;
  }
  auto cost = mina::max_cost(inst, asg);
  j["max_cost"] = mina::to_double(cost.max_cost);
  j["max_cost_exact"] = mina::format_rational(cost.max_cost);
  std::cout << j.dump(2) << '\n';
  return ok ? kExitOk : kExitFail;
}

struct GenArgs {
  int n = 8;
  int k = 3;
  double density = 0.5;
  std::string cost_lo = "0";
  std::string cost_hi = "1";
  int groups = 0;
  int group_size = 0;
  std::string output;
};

mina::GeneratorParams gen_params(const GenArgs& a, std::uint64_t seed) {
  mina::GeneratorParams p;
  p.n = a.n;
  p.k = a.k;
  p.edge_density = a.density;
  p.cost_lo = mina::parse_rational(a.cost_lo);
  p.cost_hi = mina::parse_rational(a.cost_hi);
  p.num_groups = a.groups;
  p.group_size = a.group_size;
  p.seed = seed;
  return p;
}

int cmd_gen(const Globals& g, const GenArgs& a) {
  std::string text = mina::serialize_instance(mina::generate_random(gen_params(a, parse_seed(g.seed))));
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_file(a.output, text);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string dir;
  int count = 0;
  GenArgs gen;
  std::vector<std::string> algos;
  int threads = 0;
  std::string output;
};

int cmd_bench(const Globals& g, const BenchArgs& a) {
  const std::uint64_t seed = parse_seed(g.seed);
  std::vector<std::pair<std::string, std::function<mina::Instance()>>> sources;
  if (!a.dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".inst") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      sources.emplace_back(f.filename().string(), [f] { return mina::load_instance(f.string()); });
    }
  }
  for (int i = 0; i < a.count; ++i) {
    auto p = gen_params(a.gen, mina::derive_seed(seed, i));
    sources.emplace_back("gen-" + std::to_string(i), [p] { return mina::generate_random(p); });
  }
  auto algos = a.algos.empty() ? mina::algo_names() : a.algos;
  std::vector<mina::BenchTask> tasks;
  for (const auto& [name, load] : sources) {
    for (const auto& algo : algos) tasks.push_back({name, load, algo});
  }
  mina::BenchOptions opt;
  opt.seed = seed;
  opt.trials = g.trials;
  opt.exact.budget = g.budget;
  opt.threads = a.threads;
  std::string csv = mina::to_csv(mina::run_bench(tasks, opt));
  if (a.output.empty()) {
    std::cout << csv;
  } else {
    write_file(a.output, csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mina: min-max coverage and connectivity in multi-interface networks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "master seed (decimal or 0x hex)")->capture_default_str();
  app.add_option("--trials", g.trials, "extra Monte-Carlo trials of the randomized rounding")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--budget", g.budget, "exact oracle cap on total interface slots")->capture_default_str();

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--instance", sa.instance, "instance file")->required();
  solve->add_option("--algo", sa.algo)
      ->check(CLI::IsMember(mina::algo_names()))
      ->capture_default_str();
  solve->add_option("--exact-method", sa.exact_method)->check(CLI::IsMember({"plain", "bnb"}))->capture_default_str();
  solve->add_option("--restarts-floor", sa.restarts_floor)->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_flag("--preprocess", sa.preprocess, "coverage:k rounds the per-guess LP instead of the unscaled one");
  solve->add_option("--assignment-out", sa.assignment_out, "write the assignment here");
  solve->add_option("--lp-dump", sa.lp_dump, "write the base LP in plain text here");

  std::string v_inst, v_asg, v_mode = "covering";
  auto* verify = app.add_subcommand("verify", "check an assignment");
  verify->add_option("--instance", v_inst)->required();
  verify->add_option("--assignment", v_asg)->required();
  verify->add_option("--mode", v_mode)->check(CLI::IsMember({"covering", "connecting"}))->capture_default_str();

  GenArgs ga;
  auto add_gen_options = [](CLI::App* cmd, GenArgs& a) {
    cmd->add_option("--n", a.n)->capture_default_str();
    cmd->add_option("--k", a.k)->capture_default_str();
    cmd->add_option("--density", a.density)->capture_default_str();
    cmd->add_option("--cost-lo", a.cost_lo)->capture_default_str();
    cmd->add_option("--cost-hi", a.cost_hi)->capture_default_str();
    cmd->add_option("--groups", a.groups)->capture_default_str();
    cmd->add_option("--group-size", a.group_size)->capture_default_str();
  };
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  add_gen_options(gen, ga);
  gen->add_option("--output", ga.output, "file (default stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "run algorithms over a batch and print CSV");
  bench->add_option("--dir", ba.dir, "directory of .inst files")->check(CLI::ExistingDirectory);
  bench->add_option("--count", ba.count, "number of generated instances");
  add_gen_options(bench, ba.gen);
  bench->add_option("--algos", ba.algos)->check(CLI::IsMember(mina::algo_names()));
  bench->add_option("--threads", ba.threads, "worker count (default MINA_THREADS or cores)");
  bench->add_option("--output", ba.output, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(g, sa);
    if (*verify) return cmd_verify(v_inst, v_asg, v_mode);
    if (*gen) return cmd_gen(g, ga);
    if (*bench) return cmd_bench(g, ba);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
