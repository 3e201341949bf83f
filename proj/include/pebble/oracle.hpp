#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pebble/instance.hpp"
#include "pebble/tree.hpp"

namespace pebble {

// Brute-force ground truth for small instances. None of these routines use
// the demand function except the optional direction filter of the MAPF
// search, which is an input restriction rather than a shortcut.

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unlabeled configuration: bit u set when node u holds a pebble.
using Configuration = std::uint64_t;

Configuration configuration_of(const std::vector<NodeId>& nodes);

std::vector<std::int32_t> distances_from(const Tree& tree, NodeId source);
std::int32_t tree_distance(const Tree& tree, NodeId u, NodeId v);

inline constexpr std::size_t kDefaultBfsBudget = 1'000'000;
inline constexpr std::size_t kDefaultMapfBudget = 5'000'000;

// Minimum number of single-pebble slides from the pebble set to the target
// set, by breadth-first search over configurations. Requires n <= 64 and
// C(n, k) <= state_budget, else throws BudgetExceeded.
std::int64_t oracle_opt_bfs(const Instance& inst,
                            std::size_t state_budget = kDefaultBfsBudget);

// Distance from `start` to every reachable configuration of the same size.
std::unordered_map<Configuration, std::int32_t> configuration_distances(
    const Tree& tree, Configuration start,
    std::size_t state_budget = kDefaultBfsBudget);

// Minimum total cost of a perfect matching on a square cost matrix
// (Hungarian method with potentials, O(k^3)). Returns 0 for k = 0.
std::int64_t min_cost_assignment(
    const std::vector<std::vector<std::int64_t>>& cost,
    std::vector<int>* assignment = nullptr);

// Minimum total pebble-target distance over all assignments.
std::int64_t oracle_opt_matching(const Instance& inst);

enum class MapfObjective { kMakespan, kSumOfCosts };

struct MapfOracleOptions {
  MapfObjective objective = MapfObjective::kMakespan;
  // Forbid using any edge against its net flow direction, i.e. every edge is
  // crossed in at most one direction over the whole plan.
  bool unidirectional = false;
  std::size_t state_budget = kDefaultMapfBudget;
};

// Exact optimum over synchronous plans in which every agent waits or moves
// to a neighbour each timestep, with no vertex conflicts and no swaps
// (following into a node vacated in the same step is allowed). The
// sum-of-costs objective charges each agent its final arrival time. Requires
// n <= 32.
std::int64_t oracle_mapf_optimal(const Instance& inst,
                                 const MapfOracleOptions& options);

}  // namespace pebble
