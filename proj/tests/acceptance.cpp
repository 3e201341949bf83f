// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// the number of failed criteria. Pass criterion numbers as arguments to run
// a subset.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "fixtures.hpp"
#include "pebble/demand.hpp"
#include "pebble/experiments.hpp"
#include "pebble/mapf.hpp"
#include "pebble/oracle.hpp"
#include "pebble/upmt.hpp"
#include "pebble/validate.hpp"

using namespace pebble;
using pebble::testing::convoy_instance;
using pebble::testing::spine_instance;
using pebble::testing::detour_instance;
using pebble::testing::crossing_instance;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Every labeled tree with n <= 7, every (P, B) with k in {1, 2, 3}.
Outcome exhaustive_optimality() {
  Outcome out;
  std::vector<Tree> trees;
  for (NodeId n = 1; n <= 7; ++n) {
    pebble::testing::for_each_labeled_tree(
        n, [&](const Tree& t) { trees.push_back(t); });
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::int64_t> checked{0};
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < trees.size(); i = next++) {
      const Tree& tree = trees[i];
      const NodeId n = tree.size();
      RootedTree rooted(tree, 0);
      Instance inst{tree, {}, {}, {}};
      std::int64_t local = 0;
      std::string failure;
      for (NodeId k = 1; k <= std::min<NodeId>(3, n) && failure.empty(); ++k) {
        pebble::testing::for_each_subset(n, k, [&](const std::vector<NodeId>& P) {
          if (!failure.empty()) return;
          const auto dist = configuration_distances(tree, configuration_of(P));
          inst.pebbles = P;
          pebble::testing::for_each_subset(
              n, k, [&](const std::vector<NodeId>& B) {
                if (!failure.empty()) return;
                inst.targets = B;
                const Plan plan = solve_upmt(rooted, inst);
                const std::int64_t bfs = dist.at(configuration_of(B));
                const std::int64_t match = oracle_opt_matching(inst);
                const std::int64_t cert =
                    lower_bound(compute_demands(rooted, inst));
                const ValidationReport rep = validate_upmt(inst, plan);
                if (plan.length() != bfs || bfs != match || match != cert ||
                    !rep.feasible) {
                  std::ostringstream msg;
                  msg << "tree #" << i << " n=" << n << " k=" << k
                      << ": plan=" << plan.length() << " bfs=" << bfs
                      << " matching=" << match << " sum|d|=" << cert
                      << " feasible=" << rep.feasible;
                  failure = msg.str();
                }
                ++local;
              });
        });
      }
      checked += local;
      if (!failure.empty()) {
        std::lock_guard<std::mutex> lock(mu);
        out.require(false, failure);
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (out.pass) {
    out.detail = std::to_string(trees.size()) + " trees, " +
                 std::to_string(checked.load()) + " instances";
  }
  return out;
}

Outcome spine_schedule() {
  Outcome out;
  const Instance inst = spine_instance();
  auto id = [&](const char* s) { return *inst.lookup(s); };
  RootedTree rooted(inst.tree, id("D"));
  MapfScheduler sched(rooted, inst);
  sched.run();

  const std::vector<std::pair<const char*, std::vector<Timestep>>> l = {
      {"A", {0}}, {"B", {1}}, {"C", {2}}, {"D", {2, 3}},
      {"E", {3}}, {"F", {3, 4}}, {"G", {4}}};
  for (const auto& [name, want] : l) {
    auto got = sched.arrivals(id(name));
    out.require(std::vector<Timestep>(got.begin(), got.end()) == want,
                std::string("l(") + name + ") differs");
  }
  for (NodeId u = 0; u < inst.size(); ++u) {
    const std::string name = inst.name(u);
    const Timestep want = name == "C" ? 2 : (name == "E" ? 3 : 0);
    out.require(sched.release(u) == want, "s(" + name + ") differs");
  }
  TimedPlan plan = sched.take_plan();
  out.require(makespan(plan) == 4,
              "makespan " + std::to_string(makespan(plan)));
  out.require(validate_mapf(inst, plan).feasible, "plan infeasible");
  auto traj = reconstruct_trajectories(inst, plan);
  std::string path;
  for (const Waypoint& w : traj[0].visits) path += inst.name(w.node);
  out.require(path == "ABDFG", "agent A path " + path);
  if (out.pass) out.detail = "makespan 4, agent A path A-B-D-F-G";
  return out;
}

std::int64_t mapf_opt(const Instance& inst, MapfObjective obj,
                      bool unidirectional = false) {
  MapfOracleOptions o;
  o.objective = obj;
  o.unidirectional = unidirectional;
  return oracle_mapf_optimal(inst, o);
}

Outcome suboptimality() {
  Outcome out;
  std::ostringstream detail;
  for (int s = 0; s <= 3; ++s) {
    const Instance inst = detour_instance(s);
    const TimedPlan plan = solve_mapf(inst, *inst.lookup("A"));
    const std::int64_t m = makespan(plan);
    const std::int64_t soc = sum_of_costs(plan, inst);
    const std::int64_t om = mapf_opt(inst, MapfObjective::kMakespan);
    const std::int64_t os = mapf_opt(inst, MapfObjective::kSumOfCosts);
    std::ostringstream got;
    got << "s=" << s << " algorithm " << m << "/" << soc << " oracle " << om
        << "/" << os;
    out.require(m == s + 4 && soc == 2 * s + 8 && om == s + 3 &&
                    os == 2 * s + 6,
                got.str());
    detail << (s ? "; " : "") << got.str();
  }
  if (out.pass) out.detail = detail.str();
  return out;
}

Outcome bidirectional() {
  Outcome out;
  const Instance inst = crossing_instance();
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t um = mapf_opt(inst, MapfObjective::kMakespan, true);
  const std::int64_t us = mapf_opt(inst, MapfObjective::kSumOfCosts, true);
  const std::int64_t bm = mapf_opt(inst, MapfObjective::kMakespan);
  const std::int64_t bs = mapf_opt(inst, MapfObjective::kSumOfCosts);
  std::ostringstream got;
  got << "unidirectional " << um << "/" << us << ", bidirectional " << bm
      << "/" << bs << " (" << seconds_since(start) << " s)";
  out.require(um == 6 && us == 20 && bm == 5 && bs == 19, got.str());
  out.detail = got.str();
  return out;
}

Outcome bound_suite() {
  Outcome out;
  const int count = 10'000;
  std::int64_t max_n = 0;
  for (int i = 0; i < count && out.pass; ++i) {
    Rng rng(derive_seed(2024, static_cast<std::uint64_t>(i)));
    const NodeId n = 2 + static_cast<NodeId>(uniform_below(rng, 1999));
    const NodeId k = static_cast<NodeId>(uniform_below(rng, n + 1));
    const NodeId root = static_cast<NodeId>(uniform_below(rng, n));
    const Instance inst = random_instance(n, k, rng());
    max_n = std::max<std::int64_t>(max_n, n);
    const std::int64_t spread = static_cast<std::int64_t>(k) * (n - k);

    const Plan plan = solve_upmt(inst, root);
    const ValidationReport a = validate_upmt(inst, plan);
    const TimedPlan tp = solve_mapf(inst, root);
    const ValidationReport b = validate_mapf(inst, tp);
    std::ostringstream where;
    where << "instance " << i << " (n=" << n << ", k=" << k << "): ";
    out.require(a.feasible && a.meets_bound, where.str() + "upmt " + a.failure);
    out.require(b.feasible, where.str() + "mapf " + b.failure);
    out.require(plan.length() <= spread, where.str() + "OPT > k(n-k)");
    out.require(b.makespan <= n - k, where.str() + "makespan > n-k");
    out.require(b.sum_of_costs <= spread, where.str() + "SOC > k(n-k)");
    out.require(tp.move_count() == plan.length(),
                where.str() + "timed move count != OPT");
  }
  if (out.pass) {
    out.detail = std::to_string(count) + " instances, n up to " +
                 std::to_string(max_n) + ", zero violations";
  }
  return out;
}

Outcome tightness() {
  Outcome out;
  std::ostringstream detail;
  for (auto [n, k] : std::vector<std::pair<NodeId, NodeId>>{
           {7, 3}, {8, 3}, {20, 5}, {100, 10}}) {
    const Instance inst = convoy_instance(n, k);
    const TimedPlan plan = solve_mapf(inst);
    const std::int64_t m = makespan(plan);
    const std::int64_t s = sum_of_costs(plan, inst);
    std::ostringstream got;
    got << "(" << n << "," << k << ") M=" << m << " S=" << s;
    out.require(m == n - k && s == static_cast<std::int64_t>(k) * (n - k),
                got.str());
    if (n <= 8) {
      const std::int64_t om = mapf_opt(inst, MapfObjective::kMakespan);
      const std::int64_t os = mapf_opt(inst, MapfObjective::kSumOfCosts);
      got << " oracle " << om << "/" << os;
      out.require(om == m && os == s, got.str());
    }
    detail << (n == 7 ? "" : "; ") << got.str();
  }
  if (out.pass) out.detail = detail.str();
  return out;
}

Outcome average_case() {
  Outcome out;
  std::ostringstream detail;
  for (NodeId k : {10, 100, 500}) {
    ExperimentConfig cfg;
    cfg.n_values = {1000};
    cfg.k_value = k;
    cfg.samples = 200;
    cfg.seed = 6;
    const CellSummary c = check_expected_bound(cfg).front();
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "k=%d mean %.1f (se %.1f) vs %.1f and 1.1*%.1f", k,
                  c.mean_opt, c.std_error, c.bound_from_d, c.bound_asymptotic);
    out.require(c.pass_d && c.pass_asymptotic, buf);
    detail << (k == 10 ? "" : "; ") << buf;
  }
  if (out.pass) out.detail = detail.str();
  return out;
}

Outcome scaling() {
  Outcome out;
  const auto big = run_bench({1'000'000}, 0.1, 8, 1).front();
  // Several instances per size smooth out tree-to-tree variation in OPT.
  const int repeats = 20;
  const auto pair = run_bench({100'000, 200'000}, 0.1, 9, repeats);
  const double ratio = pair[1].seconds / pair[0].seconds;
  const double move_ratio = static_cast<double>(pair[1].total_moves) /
                            static_cast<double>(pair[0].total_moves);
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "n=1e6: %.2f s (%lld moves); runtime(2e5)/runtime(1e5) = "
                "%.3f (move-count ratio %.3f)",
                big.seconds, static_cast<long long>(big.total_moves), ratio,
                move_ratio);
  out.require(big.seconds < 60.0 && ratio < 2.5, buf);
  out.detail = buf;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria =
      {{"exhaustive small-instance optimality", exhaustive_optimality},
       {"worked example schedule", spine_schedule},
       {"suboptimality counterexample", suboptimality},
       {"bidirectional-edge counterexample", bidirectional},
       {"bound suite", bound_suite},
       {"tightness family", tightness},
       {"average-case bound", average_case},
       {"scaling", scaling}};

  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", number,
                criteria[i].first, o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
