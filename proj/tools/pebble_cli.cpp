#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pebble/experiments.hpp"
#include "pebble/instance.hpp"
#include "pebble/mapf.hpp"
#include "pebble/oracle.hpp"
#include "pebble/plan_io.hpp"
#include "pebble/upmt.hpp"
#include "pebble/validate.hpp"

using namespace pebble;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_instance(in);
}

// Writes to `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Options {
  std::string mode;
  std::string in;
  std::string out;
  std::string plan;
  NodeId root = 0;
  std::size_t budget = 0;
  bool unidirectional = false;
  std::string dist = "uniform";
  NodeId n = 0;
  NodeId k = 0;
  std::uint64_t seed = 0;
  std::string config;
  std::vector<NodeId> n_list;
  double k_frac = 0.1;
  int repeats = 1;
};

int cmd_solve(const Options& o) {
  const Instance inst = load_instance(o.in);
  if (o.root < 0 || o.root >= inst.size()) throw UsageError("root out of range");
  Output out(o.out);
  if (o.mode == "upmt") {
    write_plan(out.stream(), inst, solve_upmt(inst, o.root));
  } else {
    const TimedPlan plan = solve_mapf(inst, o.root);
    write_timed_plan(out.stream(), inst, plan, sum_of_costs(plan, inst));
  }
  return kOk;
}

int cmd_validate(const Options& o) {
  const Instance inst = load_instance(o.in);
  std::ifstream plan_in(o.plan);
  if (!plan_in) throw UsageError("cannot open " + o.plan);
  const ValidationReport report =
      o.mode == "upmt" ? validate_upmt(inst, read_plan(plan_in, inst))
                       : validate_mapf(inst, read_timed_plan(plan_in, inst));
  std::cout << render_text(report) << '\n' << render_key_values(report);
  return report.feasible ? kOk : kFailed;
}

int cmd_oracle(const Options& o) {
  const Instance inst = load_instance(o.in);
  inst.check();
  if (o.mode == "matching") {
    std::cout << "opt=" << oracle_opt_matching(inst) << '\n';
  } else if (o.mode == "bfs") {
    const std::size_t budget = o.budget ? o.budget : kDefaultBfsBudget;
    std::cout << "opt=" << oracle_opt_bfs(inst, budget) << '\n';
  } else {
    MapfOracleOptions opt;
    opt.objective = o.mode == "mapf-makespan" ? MapfObjective::kMakespan
                                              : MapfObjective::kSumOfCosts;
    opt.unidirectional = o.unidirectional;
    if (o.budget) opt.state_budget = o.budget;
    const std::int64_t value = oracle_mapf_optimal(inst, opt);
    std::cout << (o.mode == "mapf-makespan" ? "makespan=" : "soc=") << value
              << '\n';
  }
  return kOk;
}

int cmd_gen(const Options& o) {
  if (o.n < 1 || o.k < 0 || o.k > o.n) throw UsageError("need 1 <= n, 0 <= k <= n");
  const TreeDistribution dist =
      o.dist == "path" ? TreeDistribution::kPath : TreeDistribution::kUniform;
  Output out(o.out);
  write_instance(out.stream(), random_instance(o.n, o.k, o.seed, dist));
  return kOk;
}

int cmd_experiment(const Options& o) {
  std::ifstream in(o.config);
  if (!in) throw UsageError("cannot open " + o.config);
  ExperimentConfig cfg;
  try {
    cfg = parse_experiment_config(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string path = o.out.empty() ? cfg.output : o.out;
  const auto rows = run_opt_experiment(cfg);
  Output out(path);
  write_csv(out.stream(), rows);
  return kOk;
}

int cmd_bench(const Options& o) {
  if (o.n_list.empty()) throw UsageError("--n-list is empty");
  const auto rows = run_bench(o.n_list, o.k_frac, o.seed, o.repeats);
  std::printf("%10s %10s %14s %12s %8s\n", "n", "k", "moves", "seconds",
              "ratio");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BenchRow& r = rows[i];
    std::printf("%10d %10d %14lld %12.4f", r.n, r.k,
                static_cast<long long>(r.total_moves), r.seconds);
    if (i > 0 && rows[i - 1].seconds > 0) {
      std::printf(" %8.3f", r.seconds / rows[i - 1].seconds);
    }
    std::printf("\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pebble motion and unlabeled MAPF on trees"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--mode", o.mode)->required()->check(
      CLI::IsMember({"upmt", "mapf"}));
  solve->add_option("--in", o.in, "Instance file")->required();
  solve->add_option("--root", o.root, "Root node id");
  solve->add_option("--out", o.out, "Plan file (default stdout)");

  auto* validate = app.add_subcommand("validate", "Replay and check a plan");
  validate->add_option("--mode", o.mode)->required()->check(
      CLI::IsMember({"upmt", "mapf"}));
  validate->add_option("--in", o.in, "Instance file")->required();
  validate->add_option("--plan", o.plan, "Plan file")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum");
  oracle->add_option("--mode", o.mode)->required()->check(
      CLI::IsMember({"bfs", "matching", "mapf-makespan", "mapf-soc"}));
  oracle->add_option("--in", o.in, "Instance file")->required();
  oracle->add_option("--budget", o.budget, "State budget");
  oracle->add_flag("--unidirectional", o.unidirectional,
                   "Forbid edges used in both directions (mapf modes)");

  auto* gen = app.add_subcommand("gen", "Random instance");
  gen->add_option("--dist", o.dist)->check(CLI::IsMember({"uniform", "path"}));
  gen->add_option("--n", o.n)->required();
  gen->add_option("--k", o.k)->required();
  gen->add_option("--seed", o.seed)->required();
  gen->add_option("--out", o.out, "Instance file (default stdout)");

  auto* experiment = app.add_subcommand("experiment", "OPT sampling to CSV");
  experiment->add_option("--config", o.config, "JSON config")->required();
  experiment->add_option("--out", o.out, "CSV file (overrides config)");

  auto* bench = app.add_subcommand("bench", "Runtime scaling report");
  bench->add_option("--n-list", o.n_list)->required()->delimiter(',');
  bench->add_option("--k-frac", o.k_frac);
  bench->add_option("--seed", o.seed);
  bench->add_option("--repeats", o.repeats)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*validate) return cmd_validate(o);
    if (*oracle) return cmd_oracle(o);
    if (*gen) return cmd_gen(o);
    if (*experiment) return cmd_experiment(o);
    if (*bench) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
