#include "pebble/validate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pebble/demand.hpp"

namespace pebble {

namespace {

std::string node_str(const Instance& inst, NodeId u) {
  return inst.tree.contains(u) ? inst.name(u) : std::to_string(u);
}

void fail(ValidationReport& r, std::string why, std::int64_t index,
          Timestep t = -1) {
  r.feasible = false;
  r.failure = std::move(why);
  r.failure_index = index;
  r.failure_time = t;
}

std::int64_t demand_bound(const Instance& inst) {
  RootedTree rooted(inst.tree, 0);
  return DemandTable(rooted, inst).total_abs();
}

// Returns false (with `r` filled) on the first violated rule.
bool final_matches_targets(const Instance& inst,
                           const std::vector<std::int32_t>& holder,
                           ValidationReport& r, std::int64_t index) {
  for (NodeId b : inst.targets) {
    if (holder[b] < 0) {
      fail(r, "target " + inst.name(b) + " unoccupied at the end", index);
      return false;
    }
  }
  return true;
}

// Shared timed replay. On success fills trajectories and metrics.
bool replay_timed(const Instance& inst, const TimedPlan& plan,
                  ValidationReport& r, std::vector<Trajectory>& traj) {
  const NodeId n = inst.size();
  std::vector<std::size_t> order(plan.moves.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return plan.moves[a].t < plan.moves[b].t;
  });

  std::vector<std::int32_t> holder(n, -1);
  traj.assign(inst.pebbles.size(), {});
  for (std::size_t i = 0; i < inst.pebbles.size(); ++i) {
    holder[inst.pebbles[i]] = static_cast<std::int32_t>(i);
    traj[i].visits.push_back({inst.pebbles[i], 0});
  }

  // Stamps identify membership in the current timestep group.
  std::vector<std::int64_t> src_stamp(n, -1), dst_stamp(n, -1);
  std::vector<NodeId> dest_of(n, kNoNode);
  std::vector<std::int32_t> moving;

  std::size_t begin = 0;
  std::int64_t group = 0;
  while (begin < order.size()) {
    const Timestep t = plan.moves[order[begin]].t;
    std::size_t end = begin;
    while (end < order.size() && plan.moves[order[end]].t == t) ++end;
    if (t < 0) {
      fail(r, "negative timestep", static_cast<std::int64_t>(order[begin]), t);
      return false;
    }

    for (std::size_t i = begin; i < end; ++i) {
      const TimedMove& m = plan.moves[order[i]];
      const auto idx = static_cast<std::int64_t>(order[i]);
      if (!inst.tree.contains(m.from) || !inst.tree.contains(m.to)) {
        fail(r, "node out of range", idx, t);
        return false;
      }
      if (!inst.tree.adjacent(m.from, m.to)) {
        fail(r, "non-adjacent move " + node_str(inst, m.from) + " -> " +
                    node_str(inst, m.to), idx, t);
        return false;
      }
      if (holder[m.from] < 0) {
        fail(r, "move from unoccupied node " + inst.name(m.from), idx, t);
        return false;
      }
      if (src_stamp[m.from] == group) {
        fail(r, "agent at " + inst.name(m.from) + " moves twice", idx, t);
        return false;
      }
      src_stamp[m.from] = group;
      dest_of[m.from] = m.to;
    }
    for (std::size_t i = begin; i < end; ++i) {
      const TimedMove& m = plan.moves[order[i]];
      const auto idx = static_cast<std::int64_t>(order[i]);
      if (src_stamp[m.to] == group && dest_of[m.to] == m.from) {
        fail(r, "edge swap on " + inst.name(m.from) + " - " + inst.name(m.to),
             idx, t);
        return false;
      }
      if (dst_stamp[m.to] == group) {
        fail(r, "vertex conflict at " + inst.name(m.to), idx, t);
        return false;
      }
      dst_stamp[m.to] = group;
      if (holder[m.to] >= 0 && src_stamp[m.to] != group) {
        fail(r, "move to occupied node " + inst.name(m.to), idx, t);
        return false;
      }
    }

    moving.clear();
    for (std::size_t i = begin; i < end; ++i) {
      const TimedMove& m = plan.moves[order[i]];
      moving.push_back(holder[m.from]);
      holder[m.from] = -1;
    }
    for (std::size_t i = begin; i < end; ++i) {
      const TimedMove& m = plan.moves[order[i]];
      const std::int32_t agent = moving[i - begin];
      holder[m.to] = agent;
      traj[agent].visits.push_back({m.to, t + 1});
    }
    begin = end;
    ++group;
  }

  if (!final_matches_targets(inst, holder, r,
                             static_cast<std::int64_t>(plan.moves.size()))) {
    return false;
  }
  return true;
}

}  // namespace

bool Trajectory::waits_then_moves() const {
  for (std::size_t i = 2; i < visits.size(); ++i) {
    if (visits[i].t != visits[i - 1].t + 1) return false;
  }
  return true;
}

ValidationReport validate_upmt(const Instance& inst, const Plan& plan) {
  ValidationReport r;
  r.length = plan.length();
  r.lower_bound = demand_bound(inst);

  const NodeId n = inst.size();
  std::vector<std::int32_t> holder(n, -1);
  for (NodeId p : inst.pebbles) holder[p] = 1;
  for (std::size_t i = 0; i < plan.moves.size(); ++i) {
    const Move& m = plan.moves[i];
    const auto idx = static_cast<std::int64_t>(i);
    if (!inst.tree.contains(m.from) || !inst.tree.contains(m.to)) {
      fail(r, "node out of range", idx);
      return r;
    }
    if (!inst.tree.adjacent(m.from, m.to)) {
      fail(r, "non-adjacent move " + inst.name(m.from) + " -> " +
                  inst.name(m.to), idx);
      return r;
    }
    if (holder[m.from] < 0) {
      fail(r, "empty source " + inst.name(m.from), idx);
      return r;
    }
    if (holder[m.to] >= 0) {
      fail(r, "occupied destination " + inst.name(m.to), idx);
      return r;
    }
    holder[m.from] = -1;
    holder[m.to] = 1;
  }
  if (!final_matches_targets(inst, holder, r, r.length)) return r;
  r.feasible = true;
  r.meets_bound = r.length == r.lower_bound;
  return r;
}

ValidationReport validate_mapf(const Instance& inst, const TimedPlan& plan) {
  ValidationReport r;
  r.timed = true;
  r.length = plan.move_count();
  r.move_actions = r.length;
  r.lower_bound = demand_bound(inst);

  std::vector<Trajectory> traj;
  if (!replay_timed(inst, plan, r, traj)) return r;

  r.feasible = true;
  r.meets_bound = r.length == r.lower_bound;
  for (const Trajectory& tr : traj) {
    r.agent_costs.push_back(tr.cost());
    r.sum_of_costs += tr.cost();
    r.makespan = std::max(r.makespan, tr.cost());
  }
  r.wait_actions = r.sum_of_costs - r.move_actions;
  return r;
}

std::vector<Trajectory> reconstruct_trajectories(const Instance& inst,
                                                 const TimedPlan& plan) {
  ValidationReport r;
  std::vector<Trajectory> traj;
  if (!replay_timed(inst, plan, r, traj)) {
    throw std::invalid_argument("cannot reconstruct trajectories: " +
                                r.failure);
  }
  return traj;
}

std::vector<std::vector<NodeId>> pebble_paths(const Instance& inst,
                                              const Plan& plan) {
  std::vector<std::int32_t> holder(inst.size(), -1);
  std::vector<std::vector<NodeId>> paths(inst.pebbles.size());
  for (std::size_t i = 0; i < inst.pebbles.size(); ++i) {
    holder[inst.pebbles[i]] = static_cast<std::int32_t>(i);
    paths[i].push_back(inst.pebbles[i]);
  }
  for (const Move& m : plan.moves) {
    if (!inst.tree.contains(m.from) || !inst.tree.contains(m.to) ||
        holder[m.from] < 0 || holder[m.to] >= 0) {
      throw std::invalid_argument("plan does not replay");
    }
    const std::int32_t p = holder[m.from];
    holder[m.from] = -1;
    holder[m.to] = p;
    paths[p].push_back(m.to);
  }
  return paths;
}

std::string render_text(const ValidationReport& r) {
  std::ostringstream out;
  out << (r.feasible ? "FEASIBLE" : "INFEASIBLE") << '\n';
  if (!r.feasible) {
    out << "  reason: " << r.failure << " (move " << r.failure_index;
    if (r.timed && r.failure_time >= 0) out << ", t=" << r.failure_time;
    out << ")\n";
  }
  out << "  moves: " << r.length << " (lower bound " << r.lower_bound
      << (r.meets_bound ? ", optimal" : "") << ")\n";
  if (r.timed && r.feasible) {
    out << "  makespan: " << r.makespan << '\n'
        << "  sum of costs: " << r.sum_of_costs << " (" << r.move_actions
        << " moves + " << r.wait_actions << " waits)\n";
  }
  return out.str();
}

std::string render_key_values(const ValidationReport& r) {
  std::ostringstream out;
  out << "feasible=" << (r.feasible ? 1 : 0) << '\n';
  if (!r.feasible) {
    out << "failure=" << r.failure << '\n'
        << "failure_index=" << r.failure_index << '\n';
    if (r.timed) out << "failure_time=" << r.failure_time << '\n';
  }
  out << "length=" << r.length << '\n'
      << "lower_bound=" << r.lower_bound << '\n'
      << "meets_bound=" << (r.meets_bound ? 1 : 0) << '\n';
  if (r.timed && r.feasible) {
    out << "makespan=" << r.makespan << '\n'
        << "sum_of_costs=" << r.sum_of_costs << '\n'
        << "move_actions=" << r.move_actions << '\n'
        << "wait_actions=" << r.wait_actions << '\n';
  }
  return out.str();
}

}  // namespace pebble
