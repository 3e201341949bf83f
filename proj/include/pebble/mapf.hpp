#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pebble/demand.hpp"
#include "pebble/instance.hpp"
#include "pebble/tree.hpp"

namespace pebble {

using Timestep = std::int32_t;

// An agent leaves `from` at time t and is at `to` at time t + 1.
struct TimedMove {
  NodeId from;
  NodeId to;
  Timestep t;
  friend bool operator==(const TimedMove&, const TimedMove&) = default;
};

struct TimedPlan {
  std::vector<TimedMove> moves;
  std::int64_t move_count() const {
    return static_cast<std::int64_t>(moves.size());
  }
};

// Collision-free unlabeled MAPF on a rooted tree. Agents follow the same
// demand-decreasing edges as the optimal pebble-motion plan; each node keeps
// the sorted times l(u) at which agents pass through it and a release time
// s(u) before which nothing may leave it. All waiting happens before an
// agent's first move.
//
// Children with negative demand are handled first, in child order; every
// other child is visited after its parent has dispatched its agents.
class MapfScheduler {
 public:
  MapfScheduler(const RootedTree& rooted, const Instance& inst);

  void run() { direct_traffic(rooted_.root()); }

  // Processes T_u: pulls agents up from negative-demand children, dispatches
  // every time in l(u) and then descends into the remaining children.
  void direct_traffic(NodeId u);
  // Sends the agent passing u at time t up, or down into the first child
  // still short of agents. Returns nullopt when the agent stays at target u.
  std::optional<TimedMove> send_agent(NodeId u, Timestep t);

  std::span<const Timestep> arrivals(NodeId u) const { return arrivals_[u]; }
  Timestep release(NodeId u) const { return release_[u]; }
  std::int32_t initial_demand(NodeId u) const { return initial_demand_[u]; }
  const DemandTable& demands() const { return table_; }
  // Nodes in the order they were marked processed.
  const std::vector<NodeId>& processing_order() const { return order_; }

  // Moves in emission order.
  const TimedPlan& plan() const { return plan_; }
  TimedPlan take_plan() { return std::move(plan_); }

 private:
  Timestep max_arrival(NodeId u) const {
    return arrivals_[u].empty() ? 0 : arrivals_[u].back();
  }

  const RootedTree& rooted_;
  DemandTable table_;
  std::vector<std::int32_t> initial_demand_;
  std::vector<std::uint8_t> agent_;
  std::vector<std::uint8_t> processed_;
  std::vector<std::vector<Timestep>> arrivals_;
  std::vector<Timestep> release_;
  std::vector<NodeId> order_;
  TimedPlan plan_;
};

// Feasible plan with makespan <= n - k and sum of costs <= k(n - k), moves
// sorted by departure time (stable). Throws std::invalid_argument on an
// invalid instance.
TimedPlan solve_mapf(const Instance& inst, NodeId root = 0);

// Latest arrival time over all moves; 0 for the empty plan.
Timestep makespan(const TimedPlan& plan);

// Sum over agents of their final arrival time, found by replaying the plan.
// Throws std::invalid_argument when the plan is not feasible for `inst`.
std::int64_t sum_of_costs(const TimedPlan& plan, const Instance& inst);

}  // namespace pebble
