#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pebble/tree.hpp"

namespace pebble {

// Pebbles and targets over a tree. A node may hold both a pebble and a
// target. When the instance was read with symbolic node names, `labels`
// maps node id -> name; otherwise it is empty and ids are printed as-is.
struct Instance {
  Tree tree;
  std::vector<NodeId> pebbles;
  std::vector<NodeId> targets;
  std::vector<std::string> labels;

  NodeId size() const { return tree.size(); }
  NodeId k() const { return static_cast<NodeId>(pebbles.size()); }

  // Throws std::invalid_argument when a node is out of range, repeated
  // within a set, or |pebbles| != |targets|.
  void check() const;

  std::string name(NodeId u) const;
  // Inverse of name(); nullopt for unknown names.
  std::optional<NodeId> lookup(std::string_view name) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line-oriented format:
//   n k
//   u v          (n-1 edge lines)
//   p_1 .. p_k   (pebble line)
//   b_1 .. b_k   (target line)
// '#' comments and blank lines are skipped. Node tokens are integers in
// [0, n) unless any token is non-numeric, in which case every token is a
// label and ids are assigned by first appearance.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(std::string_view text);
void write_instance(std::ostream& out, const Instance& inst);

// Builds an instance from labeled edges and label lists, ids assigned by
// first appearance in `edges`. Used for hand-written fixtures.
Instance labeled_instance(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& pebbles,
    const std::vector<std::string>& targets);

// Portable generator: mt19937_64 output is fixed by the standard, and the
// bounded draw below avoids implementation-defined distributions so that a
// seed reproduces the same instance on every platform.
using Rng = std::mt19937_64;
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);
// Mixes a base seed with stream coordinates (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

// k distinct values from [0, n), uniformly, in draw order.
std::vector<NodeId> sample_without_replacement(Rng& rng, NodeId n, NodeId k);

Tree random_labeled_tree(NodeId n, std::uint64_t seed);
Tree random_labeled_tree(NodeId n, Rng& rng);

enum class TreeDistribution { kUniform, kPath };

// Pebbles and targets are independent uniform k-subsets; they may overlap.
Instance random_instance(NodeId n, NodeId k, std::uint64_t seed,
                         TreeDistribution dist = TreeDistribution::kUniform);

}  // namespace pebble
