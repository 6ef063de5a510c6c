#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "radial/error.hpp"
#include "radial/netgen.hpp"
#include "radial/oracle.hpp"
#include "support/instances.hpp"
#include "support/reference.hpp"

namespace radial {
namespace {

DistributionNetwork topology(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b, kInf, 1.0});
  return make_network(n, edges, NodalValues(n, 0.0));
}

DistributionNetwork cycle(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.push_back({i, (i + 1) % n});
  return topology(n, pairs);
}

DistributionNetwork complete(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return topology(n, pairs);
}

TEST(CountSpanningTrees, KnownFamilies) {
  for (CountMode mode : {CountMode::exact, CountMode::floating}) {
    EXPECT_EQ(count_spanning_trees(cycle(4), mode), 4u);
    EXPECT_EQ(count_spanning_trees(cycle(6), mode), 6u);
    EXPECT_EQ(count_spanning_trees(complete(4), mode), 16u);
    EXPECT_EQ(count_spanning_trees(complete(5), mode), 125u);
    EXPECT_EQ(count_spanning_trees(fixtures::fig2(), mode), 6u);
    EXPECT_EQ(count_spanning_trees(topology(4, {{0, 1}, {1, 2}, {1, 3}}), mode), 1u);
    EXPECT_EQ(count_spanning_trees(topology(4, {{0, 1}, {2, 3}}), mode), 0u);
  }
  EXPECT_EQ(count_spanning_trees(topology(1, {})), 1u);
}

TEST(CountSpanningTrees, MatchesEnumeration) {
  for (int n = 3; n <= 10; ++n) EXPECT_EQ(count_enumerated_trees(cycle(n)), static_cast<std::uint64_t>(n));
  for (int n = 3; n <= 5; ++n) {
    std::uint64_t cayley = 1;
    for (int k = 0; k < n - 2; ++k) cayley *= n;
    EXPECT_EQ(count_enumerated_trees(complete(n)), cayley);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DistributionNetwork net = testing::random_instance(seed);
    const std::uint64_t m = count_spanning_trees(net);
    EXPECT_EQ(m, count_enumerated_trees(net)) << "seed " << seed;
    EXPECT_EQ(m, reference::count_spanning_trees(net)) << "seed " << seed;
  }
}

TEST(EnumerateSpanningTrees, EachTreeOnce) {
  const DistributionNetwork net = complete(4);
  std::set<std::vector<int>> seen;
  enumerate_spanning_trees(net, [&](const std::vector<int>& ids) {
    EXPECT_EQ(ids.size(), 3u);
    EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
    EXPECT_TRUE(seen.insert(ids).second);
    return true;
  });
  EXPECT_EQ(seen.size(), 16u);
}

TEST(EnumerateSpanningTrees, StopsEarlyAndRejectsDisconnected) {
  int visits = 0;
  enumerate_spanning_trees(complete(5), [&](const std::vector<int>&) { return ++visits < 3; });
  EXPECT_EQ(visits, 3);
  EXPECT_THROW(enumerate_spanning_trees(topology(4, {{0, 1}, {2, 3}}), [](const std::vector<int>&) { return true; }),
               InputError);
}

TEST(BruteForceOptimal, Fig2) {
  const DistributionNetwork net = fixtures::fig2();
  const OracleResult r = brute_force_optimal(net);
  ASSERT_TRUE(r.feasible);
  EXPECT_DOUBLE_EQ(r.cost, 22.0);
  EXPECT_EQ(r.trees, 6u);
  RadialSolution expected = fixtures::fig2_optimal(net);
  expected.canonicalize();
  EXPECT_EQ(r.solution, expected);
}

TEST(BruteForceOptimal, Fig3ForestBeatsTree) {
  const DistributionNetwork net = fixtures::fig3();
  const OracleResult r = brute_force_optimal(net);
  ASSERT_TRUE(r.feasible);
  EXPECT_DOUBLE_EQ(r.cost, evaluate_cost(net, fixtures::fig3_msf(net)));
  EXPECT_LT(r.cost, evaluate_cost(net, fixtures::fig3_mst(net)));
}

TEST(BruteForceOptimal, AgreesWithReferenceEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const DistributionNetwork net = testing::random_instance(seed);
    const OracleResult r = brute_force_optimal(net);
    const reference::Optimum o = reference::optimum(net);
    ASSERT_EQ(r.feasible, o.feasible) << "seed " << seed;
    if (!o.feasible) continue;
    EXPECT_NEAR(r.cost, o.cost, 1e-9 * std::max(1.0, o.cost)) << "seed " << seed;
    EXPECT_TRUE(reference::feasible(net, r.solution)) << "seed " << seed;
  }
}

TEST(BruteForceOptimal, SizeGuard) {
  EXPECT_THROW(brute_force_optimal(cycle(13)), InputError);
  EXPECT_NO_THROW(brute_force_optimal(cycle(13), 13));
}

TEST(BruteForceOptimal, InvariantUnderRelabelAndCostScaling) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const DistributionNetwork net = testing::random_instance(seed);
    const OracleResult base = brute_force_optimal(net);
    RawNetwork raw = net.raw();
    std::reverse(raw.nodes.begin(), raw.nodes.end());
    std::reverse(raw.edges.begin(), raw.edges.end());
    for (RawEdge& e : raw.edges) e.cost *= 3.0;
    const OracleResult other = brute_force_optimal(build_network(raw));
    ASSERT_EQ(base.feasible, other.feasible);
    if (base.feasible) EXPECT_NEAR(other.cost, 3.0 * base.cost, 1e-9 * std::max(1.0, other.cost));
  }
}

TEST(PartitionReduction, Fig5Instance) {
  const DistributionNetwork net = partition_reduction_instance({3, 4, 5, 4}, 2);
  EXPECT_EQ(net.node_count(), 7);
  EXPECT_EQ(net.edge_count(), 10);
  EXPECT_DOUBLE_EQ(net.supply(net.id("s1")), 9.0);
  EXPECT_DOUBLE_EQ(net.supply(net.id("s2")), 9.0);
  EXPECT_DOUBLE_EQ(net.edge(*net.find_edge(net.id("s1"), net.id("v0"))).capacity, 1.0);
  EXPECT_EQ(net, fixtures::fig5());
}

TEST(PartitionReduction, FeasibleIffPartitionExists) {
  EXPECT_TRUE(brute_force_optimal(partition_reduction_instance({3, 3}, 2)).feasible);
  EXPECT_FALSE(brute_force_optimal(partition_reduction_instance({3, 5}, 2)).feasible);
  EXPECT_FALSE(brute_force_optimal(partition_reduction_instance({1}, 2)).feasible);
  EXPECT_TRUE(brute_force_optimal(partition_reduction_instance({2, 2}, 2)).feasible);
  EXPECT_TRUE(reference::partition_possible({3, 4, 5, 4}));
  EXPECT_TRUE(brute_force_optimal(fixtures::fig5()).feasible);
}

TEST(PartitionReduction, RejectsBadInput) {
  EXPECT_THROW(partition_reduction_instance({}, 2), InputError);
  EXPECT_THROW(partition_reduction_instance({1, 2}, 0), InputError);
  EXPECT_THROW(partition_reduction_instance({1, -2}, 2), InputError);
}

}  // namespace
}  // namespace radial
