#include "pebble/tree.hpp"

#include <stdexcept>
#include <string>

namespace pebble {

Tree::Tree(NodeId node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 1) {
    throw std::invalid_argument("tree must have at least one node");
  }
  if (edges_.size() != static_cast<std::size_t>(node_count_ - 1)) {
    throw std::invalid_argument("expected " + std::to_string(node_count_ - 1) +
                                " edges, got " + std::to_string(edges_.size()));
  }
  offsets_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) {
    if (!contains(e.u) || !contains(e.v)) {
      throw std::invalid_argument("edge endpoint out of range: " +
                                  std::to_string(e.u) + " " +
                                  std::to_string(e.v));
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    }
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (NodeId i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }

  // With n-1 edges, reaching every node from 0 rules out cycles and
  // duplicate edges.
  parent_from_zero_.assign(node_count_, kNoNode);
  std::vector<char> seen(node_count_, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  NodeId reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : neighbors(u)) {
      if (seen[v]) continue;
      seen[v] = 1;
      parent_from_zero_[v] = u;
      ++reached;
      stack.push_back(v);
    }
  }
  if (reached != node_count_) {
    throw std::invalid_argument(
        "edge set is not a tree (disconnected or cyclic)");
  }
}

bool Tree::adjacent(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v) || u == v) return false;
  return parent_from_zero_[u] == v || parent_from_zero_[v] == u;
}

Tree path_tree(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Tree(n, std::move(edges));
}

Tree star_tree(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId i = 1; i < n; ++i) edges.push_back({0, i});
  return Tree(n, std::move(edges));
}

Tree tree_from_prufer(std::span<const NodeId> sequence) {
  const NodeId n = static_cast<NodeId>(sequence.size()) + 2;
  std::vector<NodeId> degree(n, 1);
  for (NodeId x : sequence) {
    if (x < 0 || x >= n) {
      throw std::invalid_argument("Prüfer entry out of range");
    }
    ++degree[x];
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  NodeId ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  NodeId leaf = ptr;
  for (NodeId x : sequence) {
    edges.push_back({leaf, x});
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, n - 1});
  return Tree(n, std::move(edges));
}

RootedTree::RootedTree(const Tree& tree, NodeId root) : root_(root) {
  const NodeId n = tree.size();
  if (!tree.contains(root)) {
    throw std::out_of_range("root " + std::to_string(root) +
                            " out of range for tree of size " +
                            std::to_string(n));
  }
  parent_.assign(n, kNoNode);
  preorder_.reserve(n);
  child_offsets_.assign(n + 1, 0);

  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    preorder_.push_back(u);
    auto nbrs = tree.neighbors(u);
    for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
      if (*it == parent_[u]) continue;
      parent_[*it] = u;
      stack.push_back(*it);
    }
  }

  for (NodeId u = 0; u < n; ++u) {
    child_offsets_[u + 1] = child_offsets_[u] + tree.degree(u) - (u != root);
  }
  children_.resize(child_offsets_.back());
  for (NodeId u = 0; u < n; ++u) {
    std::size_t at = child_offsets_[u];
    for (NodeId v : tree.neighbors(u)) {
      if (v != parent_[u]) children_[at++] = v;
    }
  }
}

std::vector<NodeId> RootedTree::subtree_sizes() const {
  std::vector<NodeId> size(parent_.size(), 1);
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    if (*it != root_) size[parent_[*it]] += size[*it];
  }
  return size;
}

}  // namespace pebble
