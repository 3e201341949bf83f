#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "pebble/instance.hpp"

namespace pebble {
namespace {

TEST(Parse, LabeledInstance) {
  Instance inst = parse_instance_string(
      "# comment\n7 3\nA B\nB D\nC D\nD F\nE F\nF G\n\nA C E\nD F G\n");
  EXPECT_EQ(inst.size(), 7);
  EXPECT_EQ(inst.k(), 3);
  EXPECT_EQ(inst.labels,
            (std::vector<std::string>{"A", "B", "D", "C", "F", "E", "G"}));
  EXPECT_EQ(inst.pebbles, (std::vector<NodeId>{0, 3, 5}));
  EXPECT_EQ(inst.targets, (std::vector<NodeId>{2, 4, 6}));
  EXPECT_EQ(inst.name(3), "C");
  EXPECT_EQ(inst.lookup("G"), 6);
  EXPECT_FALSE(inst.lookup("Z"));
  EXPECT_EQ(inst.tree.edges(), testing::spine_instance().tree.edges());
}

TEST(Parse, NumericInstance) {
  Instance inst = parse_instance_string("4 2\n0 1\n1 2\n1 3\n0 2\n2 3\n");
  EXPECT_TRUE(inst.labels.empty());
  EXPECT_EQ(inst.pebbles, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(inst.name(3), "3");
  EXPECT_EQ(inst.lookup("2"), 2);
  EXPECT_FALSE(inst.lookup("4"));
}

TEST(Parse, SingleNodeNoAgents) {
  Instance inst = parse_instance_string("1 0\n");
  EXPECT_EQ(inst.size(), 1);
  EXPECT_EQ(inst.k(), 0);
}

TEST(Parse, Errors) {
  auto fails = [](const char* text) {
    EXPECT_THROW(parse_instance_string(text), ParseError) << text;
  };
  fails("");
  fails("3\n0 1\n1 2\n");
  fails("x 1\n0 1\n");
  fails("3 1\n0 1\n1 2\n0 2\n0\n1\n");  // cyclic: three edges for n = 3
  fails("4 1\n0 1\n2 3\n2 3\n0\n1\n");  // duplicate edge, disconnected
  fails("3 2\n0 1\n1 2\n0 0\n1 2\n");   // duplicate pebble
  fails("3 2\n0 1\n1 2\n0 1\n1 2 0\n"); // target count != k
  fails("3 1\n0 1\n1 2\n5\n1\n");       // out of range
  fails("3 1\n0 1\n1 2\n0\n");          // missing target line
  fails("3 4\n0 1\n1 2\n0\n1\n");       // k > n
}

TEST(Parse, ErrorCarriesLineNumber) {
  try {
    parse_instance_string("3 1\n0 1\n1 2\n0\n9\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(Parse, RoundTrip) {
  for (const Instance& inst :
       {testing::spine_instance(), random_instance(30, 7, 99),
        random_instance(1, 1, 3)}) {
    std::ostringstream out;
    write_instance(out, inst);
    Instance back = parse_instance_string(out.str());
    EXPECT_EQ(back.tree.edges(), inst.tree.edges());
    EXPECT_EQ(back.pebbles, inst.pebbles);
    EXPECT_EQ(back.targets, inst.targets);
    EXPECT_EQ(back.labels, inst.labels);
  }
}

TEST(Check, RejectsInvalidSets) {
  Instance inst{path_tree(3), {0}, {1, 2}, {}};
  EXPECT_THROW(inst.check(), std::invalid_argument);
  inst.pebbles = {0, 0};
  EXPECT_THROW(inst.check(), std::invalid_argument);
  inst.pebbles = {0, 3};
  EXPECT_THROW(inst.check(), std::invalid_argument);
  inst.pebbles = {0, 1};
  EXPECT_NO_THROW(inst.check());
}

TEST(Random, UniformBelowStaysInRange) {
  Rng rng(5);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000003ULL}) {
    for (int i = 0; i < 1000; ++i) EXPECT_LT(uniform_below(rng, bound), bound);
  }
}

TEST(Random, SameSeedSameInstance) {
  Instance a = random_instance(500, 50, 42);
  Instance b = random_instance(500, 50, 42);
  Instance c = random_instance(500, 50, 43);
  EXPECT_EQ(a.tree.edges(), b.tree.edges());
  EXPECT_EQ(a.pebbles, b.pebbles);
  EXPECT_EQ(a.targets, b.targets);
  EXPECT_NE(a.tree.edges(), c.tree.edges());
}

TEST(Random, SamplesAreDistinctAndInRange) {
  Rng rng(11);
  for (NodeId k : {0, 1, 5, 20}) {
    auto s = sample_without_replacement(rng, 20, k);
    ASSERT_EQ(static_cast<NodeId>(s.size()), k);
    std::set<NodeId> uniq(s.begin(), s.end());
    EXPECT_EQ(static_cast<NodeId>(uniq.size()), k);
    for (NodeId x : s) EXPECT_TRUE(x >= 0 && x < 20);
  }
  EXPECT_THROW(sample_without_replacement(rng, 3, 4), std::invalid_argument);
  EXPECT_THROW(random_instance(3, 4, 0), std::invalid_argument);
}

TEST(Random, GeneratedTreesAreValid) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const NodeId n = 1 + static_cast<NodeId>(seed % 60);
    Tree t = random_labeled_tree(n, seed);
    ASSERT_EQ(t.size(), n);
    // Construction validates; rebuilding from the edge list must succeed.
    EXPECT_NO_THROW(Tree(n, t.edges()));
  }
}

// All 16 labeled trees on 4 nodes should come up equally often.
TEST(Random, LabeledTreesOnFourNodesAreUniform) {
  const int draws = 32000;
  std::map<std::set<std::pair<NodeId, NodeId>>, int> counts;
  Rng rng(2024);
  for (int i = 0; i < draws; ++i) {
    Tree t = random_labeled_tree(4, rng);
    std::set<std::pair<NodeId, NodeId>> key;
    for (const Edge& e : t.edges()) key.insert(std::minmax(e.u, e.v));
    ++counts[key];
  }
  ASSERT_EQ(counts.size(), 16u);
  const double expected = draws / 16.0;
  double chi2 = 0;
  for (const auto& [_, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 15 degrees of freedom; 37.70 is the 0.999 quantile.
  EXPECT_LT(chi2, 37.70);
}

TEST(Random, PathDistributionUsesPath) {
  Instance inst = random_instance(10, 3, 1, TreeDistribution::kPath);
  for (NodeId i = 0; i + 1 < 10; ++i) EXPECT_TRUE(inst.tree.adjacent(i, i + 1));
  EXPECT_TRUE(std::is_sorted(inst.pebbles.begin(), inst.pebbles.end()));
}

}  // namespace
}  // namespace pebble
