#include "pebble/upmt.hpp"

#include <string>

namespace pebble {

namespace {

[[noreturn]] void defect(const std::string& what) { throw SolverDefect(what); }

// The same instance with nodes renumbered in preorder from the root, so that
// every subtree is a contiguous id range. Each node's child order survives
// (its parent edge is listed first, then its children in visiting order), so
// the solver emits the same plan up to renaming. Random labels otherwise
// make almost every parent/child step a cache miss on large trees.
struct PreorderCopy {
  Instance inst;
  std::vector<NodeId> original;  // new id -> old id
};

PreorderCopy renumber_preorder(const Instance& inst, const RootedTree& rooted) {
  const NodeId n = rooted.size();
  PreorderCopy out;
  out.original.assign(rooted.preorder().begin(), rooted.preorder().end());
  std::vector<NodeId> fresh(n);
  for (NodeId i = 0; i < n; ++i) fresh[out.original[i]] = i;

  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (NodeId i = 1; i < n; ++i) {
    edges.push_back({fresh[rooted.parent(out.original[i])], i});
  }
  out.inst.tree = Tree(n, std::move(edges));
  out.inst.pebbles.reserve(inst.pebbles.size());
  for (NodeId p : inst.pebbles) out.inst.pebbles.push_back(fresh[p]);
  out.inst.targets.reserve(inst.targets.size());
  for (NodeId b : inst.targets) out.inst.targets.push_back(fresh[b]);
  return out;
}

}  // namespace

UpmtSolver::UpmtSolver(const RootedTree& rooted, const Instance& inst,
                       MoveSink sink, bool buffer)
    : rooted_(rooted),
      table_(rooted, inst),
      sink_(std::move(sink)),
      buffer_(buffer) {}

void UpmtSolver::balance_subtrees(NodeId u) {
  if (table_.demand(u) != 0) {
    defect("balance_subtrees requires d(" + std::to_string(u) + ") = 0");
  }
  pending_.assign(1, u);
  while (!pending_.empty()) {
    const NodeId x = pending_.back();
    pending_.pop_back();
    if (table_.demand(x) != 0) {
      defect("subtree root " + std::to_string(x) + " left unbalanced");
    }
    for (;;) {
      const NodeId pos = table_.first_child(x, Sign::kPositive);
      const NodeId neg = table_.first_child(x, Sign::kNegative);
      if (pos == kNoNode && neg == kNoNode) break;
      if (table_.occupied(x)) {
        if (pos == kNoNode) defect("no positive child to inject into");
        inject_pebble(pos);
      } else {
        if (neg == kNoNode) defect("no negative child to extract from");
        extract_pebble(neg);
      }
    }
    auto kids = rooted_.children(x);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      pending_.push_back(*it);
    }
  }
}

void UpmtSolver::inject_pebble(NodeId v) {
  if (v == rooted_.root()) defect("inject_pebble on the root");
  if (!table_.occupied(rooted_.parent(v))) {
    defect("inject_pebble: parent of " + std::to_string(v) + " is empty");
  }
  if (table_.demand(v) <= 0) {
    defect("inject_pebble: d(" + std::to_string(v) + ") <= 0");
  }
  chain_.assign(1, v);
  while (table_.occupied(chain_.back())) {
    const NodeId w = table_.first_child(chain_.back(), Sign::kPositive);
    if (w == kNoNode) defect("inject_pebble: no positive child below");
    chain_.push_back(w);
  }
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
    move_pebble(rooted_.parent(*it), *it);
  }
}

void UpmtSolver::extract_pebble(NodeId v) {
  if (v == rooted_.root()) defect("extract_pebble on the root");
  if (table_.occupied(rooted_.parent(v))) {
    defect("extract_pebble: parent of " + std::to_string(v) + " is occupied");
  }
  if (table_.demand(v) >= 0) {
    defect("extract_pebble: d(" + std::to_string(v) + ") >= 0");
  }
  chain_.assign(1, v);
  while (!table_.occupied(chain_.back())) {
    const NodeId w = table_.first_child(chain_.back(), Sign::kNegative);
    if (w == kNoNode) defect("extract_pebble: no negative child below");
    chain_.push_back(w);
  }
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
    move_pebble(*it, rooted_.parent(*it));
  }
}

void UpmtSolver::move_pebble(NodeId from, NodeId to) {
  if (!table_.occupied(from)) {
    defect("move from empty node " + std::to_string(from));
  }
  if (table_.occupied(to)) {
    defect("move onto occupied node " + std::to_string(to));
  }
  if (rooted_.is_child_of(to, from)) {
    if (table_.demand(to) <= 0) defect("downward move against demand");
    table_.add_demand(to, -1);
  } else if (rooted_.is_child_of(from, to)) {
    if (table_.demand(from) >= 0) defect("upward move against demand");
    table_.add_demand(from, +1);
  } else {
    defect("move between non-adjacent nodes " + std::to_string(from) + " " +
           std::to_string(to));
  }
  table_.set_occupied(from, false);
  table_.set_occupied(to, true);

  const Move m{from, to};
  if (buffer_) plan_.moves.push_back(m);
  if (sink_) sink_(m);
  ++emitted_;
}

Plan solve_upmt(const RootedTree& rooted, const Instance& inst) {
  inst.check();
  UpmtSolver solver(rooted, inst);
  solver.solve();
  return solver.take_plan();
}

Plan solve_upmt(const Instance& inst, NodeId root) {
  inst.check();
  RootedTree rooted(inst.tree, root);
  UpmtSolver solver(rooted, inst);
  solver.solve();
  return solver.take_plan();
}

std::int64_t solve_upmt_streaming(const Instance& inst, NodeId root,
                                  const MoveSink& sink) {
  inst.check();
  const PreorderCopy copy = renumber_preorder(inst, RootedTree(inst.tree, root));
  const RootedTree rooted(copy.inst.tree, 0);
  const auto& original = copy.original;
  MoveSink renamed;
  if (sink) {
    renamed = [&sink, &original](const Move& m) {
      sink({original[m.from], original[m.to]});
    };
  }
  UpmtSolver solver(rooted, copy.inst, std::move(renamed), /*buffer=*/false);
  solver.solve();
  return solver.moves_emitted();
}

}  // namespace pebble
