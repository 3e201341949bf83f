#include "pebble/oracle.hpp"

#include <bit>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "pebble/demand.hpp"

namespace pebble {

namespace {

constexpr Configuration bit(NodeId u) { return Configuration{1} << u; }

// C(n, k), saturating at `cap`.
std::size_t binomial_capped(NodeId n, NodeId k, std::size_t cap) {
  k = std::min(k, n - k);
  long double c = 1;
  for (NodeId i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(c + 0.5L);
}

template <typename Fn>
void for_each_node(Configuration c, Fn&& fn) {
  while (c) {
    const int u = std::countr_zero(c);
    fn(static_cast<NodeId>(u));
    c &= c - 1;
  }
}

template <typename Fn>
void for_each_slide(const Tree& tree, Configuration c, Fn&& fn) {
  for_each_node(c, [&](NodeId u) {
    for (NodeId v : tree.neighbors(u)) {
      if (!(c & bit(v))) fn(c ^ bit(u) ^ bit(v));
    }
  });
}

void require_small(const Instance& inst, NodeId max_nodes) {
  if (inst.size() > max_nodes) {
    throw BudgetExceeded("oracle supports at most " +
                         std::to_string(max_nodes) + " nodes, got " +
                         std::to_string(inst.size()));
  }
}

}  // namespace

Configuration configuration_of(const std::vector<NodeId>& nodes) {
  Configuration c = 0;
  for (NodeId u : nodes) c |= bit(u);
  return c;
}

std::vector<std::int32_t> distances_from(const Tree& tree, NodeId source) {
  std::vector<std::int32_t> dist(tree.size(), -1);
  std::vector<NodeId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId v : tree.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::int32_t tree_distance(const Tree& tree, NodeId u, NodeId v) {
  if (!tree.contains(u) || !tree.contains(v)) {
    throw std::out_of_range("tree_distance: node out of range");
  }
  return distances_from(tree, u)[v];
}

std::unordered_map<Configuration, std::int32_t> configuration_distances(
    const Tree& tree, Configuration start, std::size_t state_budget) {
  if (tree.size() > 64) throw BudgetExceeded("configuration BFS needs n <= 64");
  std::unordered_map<Configuration, std::int32_t> dist{{start, 0}};
  std::vector<Configuration> queue{start};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Configuration c = queue[head];
    const std::int32_t next = dist[c] + 1;
    for_each_slide(tree, c, [&](Configuration s) {
      if (dist.emplace(s, next).second) {
        if (dist.size() > state_budget) {
          throw BudgetExceeded("configuration BFS exceeded state budget");
        }
        queue.push_back(s);
      }
    });
  }
  return dist;
}

std::int64_t oracle_opt_bfs(const Instance& inst, std::size_t state_budget) {
  inst.check();
  require_small(inst, 64);
  if (binomial_capped(inst.size(), inst.k(), state_budget) > state_budget) {
    throw BudgetExceeded("C(n, k) exceeds the BFS state budget");
  }
  const Configuration start = configuration_of(inst.pebbles);
  const Configuration goal = configuration_of(inst.targets);
  if (start == goal) return 0;

  std::unordered_map<Configuration, std::int32_t> dist{{start, 0}};
  std::vector<Configuration> queue{start};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Configuration c = queue[head];
    const std::int32_t next = dist[c] + 1;
    bool found = false;
    for_each_slide(inst.tree, c, [&](Configuration s) {
      if (s == goal) found = true;
      if (dist.emplace(s, next).second) queue.push_back(s);
    });
    if (found) return next;
  }
  throw std::logic_error("target configuration unreachable");
}

std::int64_t min_cost_assignment(
    const std::vector<std::vector<std::int64_t>>& cost,
    std::vector<int>* assignment) {
  const int k = static_cast<int>(cost.size());
  if (assignment) assignment->assign(k, -1);
  if (k == 0) return 0;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  // Rows and columns are 1-based; column 0 is the virtual start.
  std::vector<std::int64_t> row_pot(k + 1, 0), col_pot(k + 1, 0);
  std::vector<int> row_of_col(k + 1, 0), prev_col(k + 1, 0);
  for (int row = 1; row <= k; ++row) {
    row_of_col[0] = row;
    int col = 0;
    std::vector<std::int64_t> slack(k + 1, kInf);
    std::vector<char> used(k + 1, 0);
    do {
      used[col] = 1;
      const int r = row_of_col[col];
      std::int64_t delta = kInf;
      int next_col = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const std::int64_t reduced = cost[r - 1][j - 1] - row_pot[r] -
                                     col_pot[j];
        if (reduced < slack[j]) {
          slack[j] = reduced;
          prev_col[j] = col;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          next_col = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          row_pot[row_of_col[j]] += delta;
          col_pot[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      col = next_col;
    } while (row_of_col[col] != 0);
    do {
      const int back = prev_col[col];
      row_of_col[col] = row_of_col[back];
      col = back;
    } while (col != 0);
  }

  std::int64_t total = 0;
  for (int j = 1; j <= k; ++j) {
    const int r = row_of_col[j];
    total += cost[r - 1][j - 1];
    if (assignment) (*assignment)[r - 1] = j - 1;
  }
  return total;
}

std::int64_t oracle_opt_matching(const Instance& inst) {
  inst.check();
  const std::size_t k = inst.pebbles.size();
  std::vector<std::vector<std::int64_t>> cost(k, std::vector<std::int64_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const auto dist = distances_from(inst.tree, inst.pebbles[i]);
    for (std::size_t j = 0; j < k; ++j) cost[i][j] = dist[inst.targets[j]];
  }
  return min_cost_assignment(cost);
}

namespace {

// Enumerates every conflict-free joint step from `occupied`. Frozen agents
// stay put. Calls fn(next_configuration) for each step with at least one
// move.
class JointStepper {
 public:
  JointStepper(const Tree& tree, std::vector<std::vector<NodeId>> allowed)
      : tree_(tree), allowed_(std::move(allowed)) {}

  template <typename Fn>
  void for_each_step(Configuration occupied, Configuration frozen, Fn&& fn) {
    agents_.clear();
    for_each_node(occupied & ~frozen,
                  [&](NodeId u) { agents_.push_back(u); });
    dest_.assign(tree_.size(), kNoNode);
    for_each_node(frozen, [&](NodeId u) { dest_[u] = u; });
    occupied_ = occupied;
    recurse(0, frozen, 0, fn);
  }

 private:
  template <typename Fn>
  void recurse(std::size_t i, Configuration taken, int moved, Fn& fn) {
    if (i == agents_.size()) {
      if (moved > 0) fn(taken);
      return;
    }
    const NodeId u = agents_[i];
    if (!(taken & bit(u))) {
      dest_[u] = u;
      recurse(i + 1, taken | bit(u), moved, fn);
    }
    for (NodeId v : allowed_[u]) {
      if (taken & bit(v)) continue;
      // Swap: the agent on v already chose to move onto u.
      if ((occupied_ & bit(v)) && dest_[v] == u) continue;
      dest_[u] = v;
      recurse(i + 1, taken | bit(v), moved + 1, fn);
    }
    dest_[u] = kNoNode;
  }

  const Tree& tree_;
  std::vector<std::vector<NodeId>> allowed_;
  std::vector<NodeId> agents_;
  std::vector<NodeId> dest_;
  Configuration occupied_ = 0;
};

std::vector<std::vector<NodeId>> allowed_moves(const Instance& inst,
                                               bool unidirectional) {
  const NodeId n = inst.size();
  std::vector<std::vector<NodeId>> allowed(n);
  if (!unidirectional) {
    for (NodeId u = 0; u < n; ++u) {
      auto nbrs = inst.tree.neighbors(u);
      allowed[u].assign(nbrs.begin(), nbrs.end());
    }
    return allowed;
  }
  // The net flow over edge (parent, v) is d(v) pebbles downward; one-way use
  // means only that direction, and no use at all when d(v) = 0.
  RootedTree rooted(inst.tree, 0);
  DemandTable table(rooted, inst);
  for (NodeId v = 0; v < n; ++v) {
    if (v == rooted.root()) continue;
    const NodeId p = rooted.parent(v);
    if (table.demand(v) > 0) allowed[p].push_back(v);
    if (table.demand(v) < 0) allowed[v].push_back(p);
  }
  return allowed;
}

std::int64_t optimal_makespan(const Instance& inst, JointStepper& stepper,
                              std::size_t budget) {
  const Configuration start = configuration_of(inst.pebbles);
  const Configuration goal = configuration_of(inst.targets);
  if (start == goal) return 0;
  std::unordered_map<Configuration, std::int32_t> depth{{start, 0}};
  std::vector<Configuration> queue{start};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Configuration c = queue[head];
    const std::int32_t next = depth[c] + 1;
    bool found = false;
    stepper.for_each_step(c, 0, [&](Configuration s) {
      if (s == goal) found = true;
      if (depth.emplace(s, next).second) queue.push_back(s);
    });
    if (found) return next;
    if (depth.size() > budget) {
      throw BudgetExceeded("MAPF makespan search exceeded state budget");
    }
  }
  throw BudgetExceeded("target configuration unreachable under restriction");
}

// Dijkstra over (occupied, frozen). An unfrozen agent pays one per step;
// freezing an agent on a target is free and permanent, so an optimal plan
// freezes each agent right after its final arrival.
std::int64_t optimal_sum_of_costs(const Instance& inst, JointStepper& stepper,
                                  std::size_t budget) {
  const Configuration start = configuration_of(inst.pebbles);
  const Configuration goal = configuration_of(inst.targets);
  auto key = [](Configuration occ, Configuration frozen) {
    return (occ << 32) | frozen;
  };
  using Entry = std::tuple<std::int64_t, Configuration, Configuration>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_map<std::uint64_t, std::int64_t> best;
  best[key(start, 0)] = 0;
  open.emplace(0, start, 0);
  std::size_t expanded = 0;

  auto relax = [&](std::int64_t cost, Configuration occ, Configuration fr) {
    auto [it, inserted] = best.emplace(key(occ, fr), cost);
    if (!inserted) {
      if (it->second <= cost) return;
      it->second = cost;
    }
    open.emplace(cost, occ, fr);
  };

  while (!open.empty()) {
    auto [cost, occ, frozen] = open.top();
    open.pop();
    if (best[key(occ, frozen)] < cost) continue;
    if (occ == goal) return cost;
    if (++expanded > budget) {
      throw BudgetExceeded("MAPF sum-of-costs search exceeded state budget");
    }
    for_each_node(occ & goal & ~frozen, [&](NodeId u) {
      relax(cost, occ, frozen | bit(u));
    });
    const std::int64_t step_cost = std::popcount(occ & ~frozen);
    stepper.for_each_step(occ, frozen, [&](Configuration next) {
      relax(cost + step_cost, next, frozen);
    });
  }
  throw BudgetExceeded("target configuration unreachable under restriction");
}

}  // namespace

std::int64_t oracle_mapf_optimal(const Instance& inst,
                                 const MapfOracleOptions& options) {
  inst.check();
  require_small(inst, 32);
  JointStepper stepper(inst.tree,
                       allowed_moves(inst, options.unidirectional));
  return options.objective == MapfObjective::kMakespan
             ? optimal_makespan(inst, stepper, options.state_budget)
             : optimal_sum_of_costs(inst, stepper, options.state_budget);
}

}  // namespace pebble
