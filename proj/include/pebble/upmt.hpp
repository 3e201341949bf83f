#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pebble/demand.hpp"
#include "pebble/instance.hpp"
#include "pebble/tree.hpp"

namespace pebble {

struct Move {
  NodeId from;
  NodeId to;
  friend bool operator==(const Move&, const Move&) = default;
};

struct Plan {
  std::vector<Move> moves;
  std::int64_t length() const { return static_cast<std::int64_t>(moves.size()); }
};

// Raised when a solver invariant that holds on every valid input is found
// broken. Never caused by user input that passed Instance::check().
class SolverDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using MoveSink = std::function<void(const Move&)>;

// Optimal unlabeled pebble motion on a rooted tree. Every emitted move
// decreases Σ|d| by one, so the plan length equals the initial Σ|d|.
//
// The recursive procedures are driven by explicit stacks; depth is bounded
// only by memory. The solver borrows `rooted` for its lifetime.
class UpmtSolver {
 public:
  UpmtSolver(const RootedTree& rooted, const Instance& inst,
             MoveSink sink = {}, bool buffer = true);

  // Balances the whole tree from the root.
  void solve() { balance_subtrees(rooted_.root()); }

  // Requires d(u) = 0. Leaves d(v) = 0 for every v in T_u.
  void balance_subtrees(NodeId u);
  // Requires v != root, p(parent(v)) = 1, d(v) > 0. Moves the parent's
  // pebble onto v, first pushing v's own pebble further down if needed.
  void inject_pebble(NodeId v);
  // Requires v != root, p(parent(v)) = 0, d(v) < 0. Moves a pebble from v to
  // its parent, first pulling one up into v if v is empty.
  void extract_pebble(NodeId v);
  // Single edge move with demand bookkeeping. Preconditions are checked and
  // reported as SolverDefect.
  void move_pebble(NodeId from, NodeId to);

  const DemandTable& demands() const { return table_; }
  const Plan& plan() const { return plan_; }
  Plan take_plan() { return std::move(plan_); }
  std::int64_t moves_emitted() const { return emitted_; }

 private:
  const RootedTree& rooted_;
  DemandTable table_;
  MoveSink sink_;
  bool buffer_;
  Plan plan_;
  std::int64_t emitted_ = 0;
  std::vector<NodeId> chain_;
  std::vector<NodeId> pending_;
};

// Solves `inst` rooted at `root`. Throws std::invalid_argument on an invalid
// instance (including |P| != |B|) or std::out_of_range for a bad root.
Plan solve_upmt(const Instance& inst, NodeId root = 0);
Plan solve_upmt(const RootedTree& rooted, const Instance& inst);

// Streams moves to `sink` without buffering; returns the plan length. The
// moves are exactly those of solve_upmt(inst, root). Internally the tree is
// renumbered in preorder for memory locality.
std::int64_t solve_upmt_streaming(const Instance& inst, NodeId root,
                                  const MoveSink& sink);

}  // namespace pebble
