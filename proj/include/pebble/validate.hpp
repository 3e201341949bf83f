#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pebble/instance.hpp"
#include "pebble/mapf.hpp"
#include "pebble/upmt.hpp"

namespace pebble {

// Outcome of replaying a plan from scratch. `failure` is empty exactly when
// the plan is feasible; otherwise it names the first rule broken, with the
// offending move index (and timestep for timed plans).
struct ValidationReport {
  bool feasible = false;
  bool timed = false;
  std::string failure;
  std::int64_t failure_index = -1;
  Timestep failure_time = -1;

  std::int64_t length = 0;
  std::int64_t lower_bound = 0;
  bool meets_bound = false;

  Timestep makespan = 0;
  std::int64_t sum_of_costs = 0;
  std::vector<std::int64_t> agent_costs;
  std::int64_t move_actions = 0;
  std::int64_t wait_actions = 0;
};

std::string render_text(const ValidationReport& report);
std::string render_key_values(const ValidationReport& report);

// Sequential replay: each move must go between adjacent nodes, from an
// occupied node to an empty one; the final occupied set must equal the
// targets. Also reports whether the length meets Σ|d|.
ValidationReport validate_upmt(const Instance& inst, const Plan& plan);

// Synchronous replay by timestep: no vertex conflicts, no edge swaps, no
// agent moving twice in one step, no move from an empty node or into a node
// whose occupant stays. Per-agent cost is the agent's final arrival time.
ValidationReport validate_mapf(const Instance& inst, const TimedPlan& plan);

struct Waypoint {
  NodeId node;
  Timestep t;
  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

// Start position at time 0 followed by each arrival.
struct Trajectory {
  std::vector<Waypoint> visits;
  NodeId start() const { return visits.front().node; }
  NodeId finish() const { return visits.back().node; }
  std::int64_t moves() const {
    return static_cast<std::int64_t>(visits.size()) - 1;
  }
  // Arrival time at the final node (0 when the agent never moves).
  Timestep cost() const { return visits.back().t; }
  // True when the arrivals are consecutive, i.e. the path is wait* move*.
  bool waits_then_moves() const;
};

// Agent i starts at inst.pebbles[i]. Each move is charged to the agent on
// its source at departure time. Throws std::invalid_argument when the plan
// has a conflict that makes the assignment ill-defined.
std::vector<Trajectory> reconstruct_trajectories(const Instance& inst,
                                                 const TimedPlan& plan);

// Sequential counterpart: the pebble on a move's source is the one moved.
std::vector<std::vector<NodeId>> pebble_paths(const Instance& inst,
                                              const Plan& plan);

}  // namespace pebble
