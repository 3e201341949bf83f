#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pebble/instance.hpp"
#include "pebble/tree.hpp"

namespace pebble {

struct Rational {
  std::int64_t num;
  std::int64_t den;
  double value() const { return static_cast<double>(num) / den; }
};

// Mean distance between two independent uniform nodes (possibly equal):
// Σ over non-root u of 2|T_u|(n - |T_u|) / n². The numerator fits in 64 bits
// for n up to ~2·10⁶.
Rational average_distance(const RootedTree& rooted);
Rational average_distance(const Tree& tree, NodeId root = 0);

enum class KStrategy { kFixed, kFraction, kSweep };

struct ExperimentConfig {
  TreeDistribution distribution = TreeDistribution::kUniform;
  std::vector<NodeId> n_values;
  KStrategy k_strategy = KStrategy::kFixed;
  double k_value = 1;  // k itself for kFixed, the fraction for kFraction
  NodeId k_step = 1;   // kSweep: k = 1, 1 + step, ... <= n - 1
  int samples = 1;
  std::uint64_t seed = 0;
  bool record_runtime = false;
  std::string output;

  // Throws std::invalid_argument on non-positive counts or k outside [0, n].
  void check() const;
  std::vector<NodeId> k_values(NodeId n) const;
};

// JSON object with keys: distribution ("uniform" | "path"), n (array),
// k_strategy ("fixed" | "fraction" | "sweep"), k, k_step, samples, seed,
// timing (bool), output (string). Unknown keys are rejected.
ExperimentConfig parse_experiment_config(std::istream& in);

struct ExperimentRow {
  NodeId n;
  NodeId k;
  int sample;
  std::uint64_t seed;
  std::int64_t opt;
  std::int64_t bound_worst;  // k(n - k)
  double bound_expected;     // distribution-specific average-case bound
  double d_estimate;         // exact mean distance of this sample's tree
  std::optional<double> runtime_ms;
};

// Uniform: sqrt(k(n-k) sqrt(pi n / 2)). Path: sqrt(k(n-k)(n-1)/3).
double expected_bound(TreeDistribution dist, NodeId n, NodeId k);

// One row per (n, k, sample) in that order. OPT comes from Σ|d|, which the
// optimal solver provably attains, so no plan is materialised.
std::vector<ExperimentRow> run_opt_experiment(const ExperimentConfig& cfg);

// Header comment with the column version, a header line, then the rows.
// Floating columns use 6 significant digits; runtime_ms is blank unless
// recorded.
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct CellSummary {
  NodeId n;
  NodeId k;
  int samples;
  double mean_opt;
  double std_error;
  double mean_d;
  double bound_from_d;      // sqrt(D̂ k (n - k))
  double bound_asymptotic;  // expected_bound(dist, n, k)
  bool pass_d;              // mean_opt <= bound_from_d + 3 std_error
  bool pass_asymptotic;     // mean_opt <= 1.1 * bound_asymptotic
};

std::vector<CellSummary> summarize_cells(const ExperimentConfig& cfg,
                                         const std::vector<ExperimentRow>& rows);

// Runs the experiment and checks the average-case bound per cell. Throws
// std::invalid_argument when samples < 30.
std::vector<CellSummary> check_expected_bound(const ExperimentConfig& cfg);

struct BenchRow {
  NodeId n;
  NodeId k;
  std::int64_t total_moves;
  double seconds;  // summed over instances
};

// Times full optimal-plan emission (rooting, demands, solving) into a
// discarding sink on uniform random instances; instance generation is not
// timed. Each n is measured over `repeats` independent instances, each
// solved three times with the fastest run kept.
std::vector<BenchRow> run_bench(const std::vector<NodeId>& n_values,
                                double k_fraction, std::uint64_t seed,
                                int repeats = 1);

}  // namespace pebble
