#include "pebble/mapf.hpp"

#include <algorithm>
#include <string>

#include "pebble/upmt.hpp"
#include "pebble/validate.hpp"

namespace pebble {

namespace {

[[noreturn]] void defect(const std::string& what) { throw SolverDefect(what); }

struct Frame {
  NodeId u;
  std::uint8_t stage;
  std::size_t next_child;
};

}  // namespace

MapfScheduler::MapfScheduler(const RootedTree& rooted, const Instance& inst)
    : rooted_(rooted), table_(rooted, inst) {
  const NodeId n = rooted.size();
  initial_demand_.resize(n);
  for (NodeId u = 0; u < n; ++u) initial_demand_[u] = table_.demand(u);
  agent_.assign(n, 0);
  for (NodeId p : inst.pebbles) agent_[p] = 1;
  processed_.assign(n, 0);
  arrivals_.resize(n);
  release_.assign(n, 0);
  order_.reserve(n);
}

std::optional<TimedMove> MapfScheduler::send_agent(NodeId u, Timestep t) {
  if (table_.demand(u) < 0) {
    const NodeId up = rooted_.parent(u);
    arrivals_[up].push_back(t + 1);
    table_.add_demand(u, +1);
    plan_.moves.push_back({u, up, t});
    return plan_.moves.back();
  }
  const NodeId down = table_.first_child(u, Sign::kPositive);
  if (down != kNoNode) {
    arrivals_[down].push_back(t + 1);
    table_.add_demand(down, -1);
    plan_.moves.push_back({u, down, t});
    return plan_.moves.back();
  }
  if (!table_.is_target(u) || t != max_arrival(u)) {
    defect("agent at " + std::to_string(u) + " time " + std::to_string(t) +
           " has nowhere to go");
  }
  return std::nullopt;
}

void MapfScheduler::direct_traffic(NodeId start) {
  std::vector<Frame> frames{{start, 0, 0}};
  while (!frames.empty()) {
    const NodeId u = frames.back().u;
    auto kids = rooted_.children(u);

    if (frames.back().stage == 0) {
      const std::int32_t d = table_.demand(u);
      auto& l = arrivals_[u];
      if (d > 0) defect("direct_traffic entered with d > 0");
      if (d < 0) {
        if (!l.empty()) defect("negative-demand node already has arrivals");
        const NodeId p = rooted_.parent(u);
        const Timestep parent_max =
            arrivals_[p].empty() ? 0 : arrivals_[p].back();
        if (release_[u] < parent_max || release_[u] + 1 < release_[p]) {
          defect("release time below the parent's traffic");
        }
      } else if (release_[u] != 0) {
        defect("zero-demand node with non-zero release time");
      }
      if (!l.empty() && l.front() < 1) defect("arrival before time 1");
      if (agent_[u]) l.insert(l.begin(), release_[u]);
      frames.back().stage = 1;
    }

    if (frames.back().stage == 1) {
      NodeId descend = kNoNode;
      while (frames.back().next_child < kids.size()) {
        const NodeId v = kids[frames.back().next_child++];
        if (table_.demand(v) < 0) {
          release_[v] = std::max({release_[u] - 1, max_arrival(u), 0});
          descend = v;
          break;
        }
      }
      if (descend != kNoNode) {
        frames.push_back({descend, 0, 0});
        continue;
      }
      // Sends append to other nodes' lists only, so l(u) is stable here.
      const auto& l = arrivals_[u];
      for (std::size_t i = 0; i < l.size(); ++i) send_agent(u, l[i]);
      processed_[u] = 1;
      order_.push_back(u);
      frames.back().stage = 2;
      frames.back().next_child = 0;
    }

    NodeId descend = kNoNode;
    while (frames.back().next_child < kids.size()) {
      const NodeId v = kids[frames.back().next_child++];
      if (!processed_[v]) {
        descend = v;
        break;
      }
    }
    if (descend != kNoNode) {
      frames.push_back({descend, 0, 0});
      continue;
    }

    const auto& l = arrivals_[u];
    if (table_.demand(u) != 0) defect("node left with non-zero demand");
    for (NodeId v : kids) {
      if (table_.demand(v) != 0) defect("child left with non-zero demand");
    }
    if (!std::is_sorted(l.begin(), l.end()) ||
        std::adjacent_find(l.begin(), l.end()) != l.end()) {
      defect("arrival list of " + std::to_string(u) + " not strictly sorted");
    }
    if (!l.empty() && release_[u] > l.front()) {
      defect("release time after first arrival");
    }
    frames.pop_back();
  }
}

TimedPlan solve_mapf(const Instance& inst, NodeId root) {
  inst.check();
  RootedTree rooted(inst.tree, root);
  MapfScheduler scheduler(rooted, inst);
  scheduler.run();
  TimedPlan plan = scheduler.take_plan();
  std::stable_sort(
      plan.moves.begin(), plan.moves.end(),
      [](const TimedMove& a, const TimedMove& b) { return a.t < b.t; });
  return plan;
}

Timestep makespan(const TimedPlan& plan) {
  Timestep latest = 0;
  for (const TimedMove& m : plan.moves) latest = std::max(latest, m.t + 1);
  return latest;
}

std::int64_t sum_of_costs(const TimedPlan& plan, const Instance& inst) {
  ValidationReport report = validate_mapf(inst, plan);
  if (!report.feasible) {
    throw std::invalid_argument("infeasible plan: " + report.failure);
  }
  return report.sum_of_costs;
}

}  // namespace pebble
