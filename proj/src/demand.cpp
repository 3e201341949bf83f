#include "pebble/demand.hpp"

#include <cstdlib>
#include <stdexcept>

namespace pebble {

DemandTable::DemandTable(const RootedTree& rooted, const Instance& inst)
    : root_(rooted.root()) {
  const NodeId n = rooted.size();
  if (inst.size() != n) {
    throw std::invalid_argument("instance and rooted tree differ in size");
  }
  parent_.resize(n);
  for (NodeId u = 0; u < n; ++u) parent_[u] = rooted.parent(u);
  demand_.assign(n, 0);
  occupied_.assign(n, 0);
  target_.assign(n, 0);
  filed_.assign(n, Sign::kZero);
  head_.assign(static_cast<std::size_t>(n) * kSigns, kNoNode);
  tail_.assign(static_cast<std::size_t>(n) * kSigns, kNoNode);
  next_.assign(n, kNoNode);
  prev_.assign(n, kNoNode);

  for (NodeId p : inst.pebbles) occupied_[p] = 1;
  for (NodeId b : inst.targets) target_[b] = 1;

  auto order = rooted.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId u = *it;
    demand_[u] += target_[u] - occupied_[u];
    if (u != root_) demand_[parent_[u]] += demand_[u];
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : rooted.children(u)) {
      filed_[v] = sign_of(demand_[v]);
      link_tail(v);
    }
  }
}

void DemandTable::link_tail(NodeId v) {
  const std::size_t s = slot(parent_[v], filed_[v]);
  prev_[v] = tail_[s];
  next_[v] = kNoNode;
  if (tail_[s] == kNoNode) {
    head_[s] = v;
  } else {
    next_[tail_[s]] = v;
  }
  tail_[s] = v;
}

void DemandTable::unlink(NodeId v) {
  const std::size_t s = slot(parent_[v], filed_[v]);
  if (prev_[v] == kNoNode) {
    head_[s] = next_[v];
  } else {
    next_[prev_[v]] = next_[v];
  }
  if (next_[v] == kNoNode) {
    tail_[s] = prev_[v];
  } else {
    prev_[next_[v]] = prev_[v];
  }
  prev_[v] = next_[v] = kNoNode;
}

void DemandTable::add_demand(NodeId v, std::int32_t delta) {
  demand_[v] += delta;
  if (v == root_) return;
  const Sign now = sign_of(demand_[v]);
  if (now == filed_[v]) return;
  unlink(v);
  filed_[v] = now;
  link_tail(v);
}

std::vector<NodeId> DemandTable::children_with(NodeId u, Sign sign) const {
  std::vector<NodeId> out;
  for (NodeId v = head_[slot(u, sign)]; v != kNoNode; v = next_[v]) {
    out.push_back(v);
  }
  return out;
}

std::int64_t DemandTable::total_abs() const {
  std::int64_t total = 0;
  for (std::int32_t d : demand_) total += std::abs(d);
  return total;
}

bool DemandTable::consistent_with(const RootedTree& rooted) const {
  const NodeId n = size();
  if (rooted.size() != n || rooted.root() != root_) return false;
  for (NodeId u = 0; u < n; ++u) {
    std::int64_t expected = target_[u] - occupied_[u];
    for (NodeId v : rooted.children(u)) expected += demand_[v];
    if (expected != demand_[u]) return false;

    std::size_t listed = 0;
    for (int s = 0; s < kSigns; ++s) {
      const Sign sign = static_cast<Sign>(s);
      for (NodeId v : children_with(u, sign)) {
        if (!rooted.is_child_of(v, u) || sign_of(demand_[v]) != sign ||
            filed_[v] != sign) {
          return false;
        }
        ++listed;
      }
    }
    if (listed != rooted.children(u).size()) return false;
  }
  return true;
}

}  // namespace pebble
