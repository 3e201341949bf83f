#include "pebble/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <thread>

#include <json.hpp>

#include "pebble/demand.hpp"
#include "pebble/upmt.hpp"

namespace pebble {

Rational average_distance(const RootedTree& rooted) {
  const std::int64_t n = rooted.size();
  const auto sizes = rooted.subtree_sizes();
  std::int64_t num = 0;
  for (NodeId u = 0; u < rooted.size(); ++u) {
    if (u == rooted.root()) continue;
    num += 2 * static_cast<std::int64_t>(sizes[u]) * (n - sizes[u]);
  }
  return {num, n * n};
}

Rational average_distance(const Tree& tree, NodeId root) {
  return average_distance(RootedTree(tree, root));
}

void ExperimentConfig::check() const {
  if (n_values.empty()) throw std::invalid_argument("no n values given");
  for (NodeId n : n_values) {
    if (n < 1) throw std::invalid_argument("n must be positive");
  }
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  switch (k_strategy) {
    case KStrategy::kFixed:
      if (k_value < 0 || k_value != std::floor(k_value)) {
        throw std::invalid_argument("fixed k must be a non-negative integer");
      }
      for (NodeId n : n_values) {
        if (k_value > n) throw std::invalid_argument("fixed k exceeds n");
      }
      break;
    case KStrategy::kFraction:
      if (k_value < 0 || k_value > 1) {
        throw std::invalid_argument("k fraction must lie in [0, 1]");
      }
      break;
    case KStrategy::kSweep:
      if (k_step < 1) throw std::invalid_argument("k_step must be positive");
      break;
  }
}

std::vector<NodeId> ExperimentConfig::k_values(NodeId n) const {
  switch (k_strategy) {
    case KStrategy::kFixed:
      return {static_cast<NodeId>(k_value)};
    case KStrategy::kFraction:
      return {static_cast<NodeId>(std::floor(k_value * n))};
    case KStrategy::kSweep: {
      std::vector<NodeId> ks;
      for (NodeId k = 1; k <= n - 1; k += k_step) ks.push_back(k);
      return ks;
    }
  }
  return {};
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  static const std::set<std::string> known = {
      "distribution", "n", "k_strategy", "k", "k_step",
      "samples", "seed", "timing", "output"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  try {
    const std::string dist = j.value("distribution", "uniform");
    if (dist == "uniform") {
      cfg.distribution = TreeDistribution::kUniform;
    } else if (dist == "path") {
      cfg.distribution = TreeDistribution::kPath;
    } else {
      throw std::invalid_argument("unknown distribution '" + dist + "'");
    }
    if (!j.contains("n")) throw std::invalid_argument("config needs 'n'");
    if (j["n"].is_array()) {
      cfg.n_values = j["n"].get<std::vector<NodeId>>();
    } else {
      cfg.n_values = {j["n"].get<NodeId>()};
    }
    const std::string strategy = j.value("k_strategy", "fixed");
    if (strategy == "fixed") {
      cfg.k_strategy = KStrategy::kFixed;
    } else if (strategy == "fraction") {
      cfg.k_strategy = KStrategy::kFraction;
    } else if (strategy == "sweep") {
      cfg.k_strategy = KStrategy::kSweep;
    } else {
      throw std::invalid_argument("unknown k_strategy '" + strategy + "'");
    }
    cfg.k_value = j.value("k", cfg.k_strategy == KStrategy::kSweep ? 0.0 : 1.0);
    cfg.k_step = j.value("k_step", 1);
    cfg.samples = j.value("samples", 1);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.record_runtime = j.value("timing", false);
    cfg.output = j.value("output", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  cfg.check();
  return cfg;
}

double expected_bound(TreeDistribution dist, NodeId n, NodeId k) {
  const double spread = static_cast<double>(k) * (n - k);
  if (dist == TreeDistribution::kUniform) {
    return std::sqrt(spread * std::sqrt(std::numbers::pi * n / 2.0));
  }
  return std::sqrt(spread * (n - 1) / 3.0);
}

namespace {

struct Cell {
  NodeId n;
  NodeId k;
  int sample;
};

ExperimentRow run_cell(const ExperimentConfig& cfg, const Cell& cell) {
  ExperimentRow row{};
  row.n = cell.n;
  row.k = cell.k;
  row.sample = cell.sample;
  row.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(cell.n),
                         static_cast<std::uint64_t>(cell.k),
                         static_cast<std::uint64_t>(cell.sample));
  const Instance inst =
      random_instance(cell.n, cell.k, row.seed, cfg.distribution);

  const auto start = std::chrono::steady_clock::now();
  const RootedTree rooted(inst.tree, 0);
  row.opt = lower_bound(compute_demands(rooted, inst));
  const auto stop = std::chrono::steady_clock::now();
  if (cfg.record_runtime) {
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
  }

  row.bound_worst = static_cast<std::int64_t>(cell.k) * (cell.n - cell.k);
  row.bound_expected = expected_bound(cfg.distribution, cell.n, cell.k);
  row.d_estimate = average_distance(rooted).value();
  if (row.opt > row.bound_worst) {
    throw std::logic_error("OPT exceeds k(n-k); demand computation broken");
  }
  return row;
}

}  // namespace

std::vector<ExperimentRow> run_opt_experiment(const ExperimentConfig& cfg) {
  cfg.check();
  std::vector<Cell> cells;
  for (NodeId n : cfg.n_values) {
    for (NodeId k : cfg.k_values(n)) {
      if (k < 0 || k > n) {
        throw std::invalid_argument("k outside [0, n] for n = " +
                                    std::to_string(n));
      }
      for (int s = 0; s < cfg.samples; ++s) cells.push_back({n, k, s});
    }
  }

  // Workers fill fixed slots, so output order never depends on scheduling.
  std::vector<ExperimentRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size() && !failed; i = next++) {
      try {
        rows[i] = run_cell(cfg, cells[i]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const unsigned workers = std::clamp<unsigned>(
      std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || cells.size() < 2) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "# pebble-opt-experiment columns v1\n";
  out << "n,k,sample,seed,opt,bound_worst,bound_expected,d_estimate,"
         "runtime_ms\n";
  char buf[64];
  for (const ExperimentRow& r : rows) {
    out << r.n << ',' << r.k << ',' << r.sample << ',' << r.seed << ','
        << r.opt << ',' << r.bound_worst << ',';
    std::snprintf(buf, sizeof buf, "%.6g", r.bound_expected);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.6g", r.d_estimate);
    out << buf << ',';
    if (r.runtime_ms) {
      std::snprintf(buf, sizeof buf, "%.6g", *r.runtime_ms);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<CellSummary> summarize_cells(
    const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows) {
  std::vector<CellSummary> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].n == rows[i].n &&
           rows[j].k == rows[i].k) {
      ++j;
    }
    const double m = static_cast<double>(j - i);
    double sum = 0, sum_d = 0;
    for (std::size_t r = i; r < j; ++r) {
      sum += static_cast<double>(rows[r].opt);
      sum_d += rows[r].d_estimate;
    }
    const double mean = sum / m;
    double ss = 0;
    for (std::size_t r = i; r < j; ++r) {
      const double dev = static_cast<double>(rows[r].opt) - mean;
      ss += dev * dev;
    }
    const double sd = m > 1 ? std::sqrt(ss / (m - 1)) : 0.0;

    CellSummary c{};
    c.n = rows[i].n;
    c.k = rows[i].k;
    c.samples = static_cast<int>(j - i);
    c.mean_opt = mean;
    c.std_error = sd / std::sqrt(m);
    c.mean_d = sum_d / m;
    c.bound_from_d =
        std::sqrt(c.mean_d * static_cast<double>(c.k) * (c.n - c.k));
    c.bound_asymptotic = expected_bound(cfg.distribution, c.n, c.k);
    c.pass_d = c.mean_opt <= c.bound_from_d + 3 * c.std_error;
    c.pass_asymptotic = c.mean_opt <= 1.1 * c.bound_asymptotic;
    out.push_back(c);
    i = j;
  }
  return out;
}

std::vector<CellSummary> check_expected_bound(const ExperimentConfig& cfg) {
  if (cfg.samples < 30) {
    throw std::invalid_argument("expected-bound check needs >= 30 samples");
  }
  return summarize_cells(cfg, run_opt_experiment(cfg));
}

namespace {
constexpr int kTimingsPerInstance = 3;
}  // namespace

std::vector<BenchRow> run_bench(const std::vector<NodeId>& n_values,
                                double k_fraction, std::uint64_t seed,
                                int repeats) {
  if (k_fraction < 0 || k_fraction > 1) {
    throw std::invalid_argument("k fraction must lie in [0, 1]");
  }
  std::vector<BenchRow> rows;
  for (NodeId n : n_values) {
    rows.push_back({n, static_cast<NodeId>(std::floor(k_fraction * n)), 0, 0});
  }
  // Sizes are interleaved so that slow phases of a shared machine hit every
  // size alike instead of skewing the ratios.
  for (int r = 0; r < repeats; ++r) {
    for (BenchRow& row : rows) {
      const Instance inst = random_instance(
          row.n, row.k, derive_seed(seed, static_cast<std::uint64_t>(row.n),
                                    static_cast<std::uint64_t>(r)));
      double best = 0;
      std::int64_t moves = 0;
      for (int trial = 0; trial < kTimingsPerInstance; ++trial) {
        std::int64_t sink_count = 0;
        const auto start = std::chrono::steady_clock::now();
        moves = solve_upmt_streaming(
            inst, 0, [&sink_count](const Move&) { ++sink_count; });
        const auto stop = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(stop - start).count();
        best = trial == 0 ? s : std::min(best, s);
      }
      row.total_moves += moves;
      row.seconds += best;
    }
  }
  return rows;
}

}  // namespace pebble
