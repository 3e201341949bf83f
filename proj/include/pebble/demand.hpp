#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pebble/instance.hpp"
#include "pebble/tree.hpp"

namespace pebble {

enum class Sign : std::uint8_t { kNegative = 0, kZero = 1, kPositive = 2 };

inline Sign sign_of(std::int32_t value) {
  return value < 0 ? Sign::kNegative
                   : (value > 0 ? Sign::kPositive : Sign::kZero);
}

// Per-node demand d(u) = targets(T_u) - pebbles(T_u), the occupancy and
// target bits it is derived from, and for every node its children split into
// three intrusive lists by the sign of their current demand. Picking a child
// of a given sign and re-filing a child after a demand change are both O(1).
class DemandTable {
 public:
  // Postorder accumulation over `rooted`; `inst` must be over the same tree.
  DemandTable(const RootedTree& rooted, const Instance& inst);

  NodeId size() const { return static_cast<NodeId>(demand_.size()); }
  NodeId root() const { return root_; }
  NodeId parent(NodeId u) const { return parent_[u]; }

  std::int32_t demand(NodeId u) const { return demand_[u]; }
  bool occupied(NodeId u) const { return occupied_[u] != 0; }
  bool is_target(NodeId u) const { return target_[u] != 0; }

  void set_occupied(NodeId u, bool value) { occupied_[u] = value ? 1 : 0; }
  // Adjusts d(v) and moves v into the sub-list of its parent matching the
  // new sign (appended at the tail) when the sign changes.
  void add_demand(NodeId v, std::int32_t delta);

  // First child of u in the given sub-list, or kNoNode.
  NodeId first_child(NodeId u, Sign sign) const {
    return head_[slot(u, sign)];
  }
  std::vector<NodeId> children_with(NodeId u, Sign sign) const;

  // Sum of |d(u)| over all nodes: the optimal plan length when taken on the
  // initial configuration.
  std::int64_t total_abs() const;

  // Recomputes the recursive identity and the partition from scratch. Used
  // by tests; O(n).
  bool consistent_with(const RootedTree& rooted) const;

 private:
  static constexpr int kSigns = 3;
  std::size_t slot(NodeId u, Sign s) const {
    return static_cast<std::size_t>(u) * kSigns + static_cast<int>(s);
  }
  void link_tail(NodeId v);
  void unlink(NodeId v);

  NodeId root_;
  std::vector<NodeId> parent_;
  std::vector<std::int32_t> demand_;
  std::vector<std::uint8_t> occupied_;
  std::vector<std::uint8_t> target_;
  std::vector<Sign> filed_;
  std::vector<NodeId> head_;
  std::vector<NodeId> tail_;
  std::vector<NodeId> next_;
  std::vector<NodeId> prev_;
};

inline DemandTable compute_demands(const RootedTree& rooted,
                                   const Instance& inst) {
  return DemandTable(rooted, inst);
}

// Σ_u |d(u)|; a lower bound on any feasible plan and, on the initial
// configuration, exactly the optimal length.
inline std::int64_t lower_bound(const DemandTable& table) {
  return table.total_abs();
}

}  // namespace pebble
