#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pebble {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Unrooted tree on nodes 0..n-1. Construction validates that the edge list
// forms a spanning tree; an invalid edge list throws std::invalid_argument.
class Tree {
 public:
  Tree() : Tree(1, {}) {}
  Tree(NodeId node_count, std::vector<Edge> edges);

  NodeId size() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Neighbours in edge-list insertion order.
  std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u],
            adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  // O(1): uses the parent array of the validation traversal from node 0.
  bool adjacent(NodeId u, NodeId v) const;
  bool contains(NodeId u) const { return u >= 0 && u < node_count_; }

 private:
  NodeId node_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<NodeId> parent_from_zero_;
};

Tree path_tree(NodeId n);
Tree star_tree(NodeId n);

// Decodes a Prüfer sequence of length n-2 (entries in [0, n)) into the
// corresponding labeled tree on n >= 2 nodes. Linear time.
Tree tree_from_prufer(std::span<const NodeId> sequence);

// Tree topology with a designated root. Children keep the neighbour order of
// the underlying tree, which fixes every "pick a child" tie-break downstream.
class RootedTree {
 public:
  RootedTree(const Tree& tree, NodeId root);

  NodeId size() const { return static_cast<NodeId>(parent_.size()); }
  NodeId root() const { return root_; }
  NodeId parent(NodeId u) const { return parent_[u]; }
  std::span<const NodeId> children(NodeId u) const {
    return {children_.data() + child_offsets_[u],
            children_.data() + child_offsets_[u + 1]};
  }
  bool is_child_of(NodeId child, NodeId u) const {
    return child != root_ && parent_[child] == u;
  }
  // Parents precede children; reverse iteration is a valid postorder.
  std::span<const NodeId> preorder() const { return preorder_; }
  std::vector<NodeId> subtree_sizes() const;

 private:
  NodeId root_;
  std::vector<NodeId> parent_;
  std::vector<std::size_t> child_offsets_;
  std::vector<NodeId> children_;
  std::vector<NodeId> preorder_;
};

}  // namespace pebble
