#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pebble/instance.hpp"
#include "pebble/tree.hpp"

namespace pebble::testing {

// Seven-node example used throughout: pebbles on three leaves, targets on
// the spine toward G. Ids by first appearance: A0 B1 D2 C3 F4 E5 G6.
inline Instance spine_instance() {
  return labeled_instance(
      {{"A", "B"}, {"B", "D"}, {"C", "D"}, {"D", "F"}, {"E", "F"}, {"F", "G"}},
      {"A", "C", "E"}, {"D", "F", "G"});
}

// Two agents whose demand-following schedule is one step and two moves
// worse than optimal. `s` extra nodes are spliced into A-C and into B-E.
inline Instance detour_instance(int s = 0) {
  std::vector<std::pair<std::string, std::string>> edges = {
      {"A", "D"}, {"A", "B"}, {"D", "F"}};
  auto chain = [&](const std::string& from, const std::string& to,
                   const std::string& prefix) {
    std::string prev = from;
    for (int i = 1; i <= s; ++i) {
      const std::string next = prefix + std::to_string(i);
      edges.push_back({prev, next});
      prev = next;
    }
    edges.push_back({prev, to});
  };
  chain("A", "C", "X");
  chain("B", "E", "Y");
  return labeled_instance(edges, {"C", "E"}, {"D", "F"});
}

// Sixteen nodes, five agents; optimal plans need an edge used both ways.
inline Instance crossing_instance() {
  return labeled_instance(
      {{"A", "C"}, {"C", "F"}, {"A", "B"}, {"B", "E"}, {"E", "L"},
       {"L", "N"}, {"N", "P"}, {"A", "D"}, {"D", "G"}, {"G", "M"},
       {"M", "O"}, {"E", "H"}, {"E", "I"}, {"E", "J"}, {"E", "K"}},
      {"B", "L", "N", "P", "F"}, {"H", "I", "J", "K", "O"});
}

// Path 0..n-1 with agents on the first k nodes and targets on the last k.
inline Instance convoy_instance(NodeId n, NodeId k) {
  Instance inst{path_tree(n), {}, {}, {}};
  for (NodeId i = 0; i < k; ++i) {
    inst.pebbles.push_back(i);
    inst.targets.push_back(n - k + i);
  }
  return inst;
}

// Calls `f` on every labeled tree with n nodes (n^(n-2) of them for n >= 2).
inline void for_each_labeled_tree(NodeId n,
                                  const std::function<void(const Tree&)>& f) {
  if (n <= 2) {
    f(path_tree(n));
    return;
  }
  std::vector<NodeId> seq(n - 2, 0);
  while (true) {
    f(tree_from_prufer(seq));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) return;
  }
}

// Calls `f` on every k-subset of [0, n) in lexicographic order.
inline void for_each_subset(
    NodeId n, NodeId k,
    const std::function<void(const std::vector<NodeId>&)>& f) {
  std::vector<NodeId> s(k);
  for (NodeId i = 0; i < k; ++i) s[i] = i;
  while (true) {
    f(s);
    NodeId i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (NodeId j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace pebble::testing
