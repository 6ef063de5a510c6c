#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "radial/decomposition.hpp"
#include "radial/error.hpp"
#include "radial/netgen.hpp"
#include "radial/oracle.hpp"
#include "support/instances.hpp"
#include "support/reference.hpp"

namespace radial {
namespace {

DistributionNetwork from_edges(const std::vector<std::pair<std::string, double>>& values,
                               const std::vector<std::pair<std::string, std::string>>& edges) {
  RawNetwork raw;
  for (const auto& [id, p] : values) raw.nodes.push_back({id, std::max(p, 0.0), std::max(-p, 0.0)});
  for (const auto& [a, b] : edges) raw.edges.push_back({a, b, kInf, 1});
  return build_network(raw);
}

double local_value(const Partition& part, int global) {
  for (std::size_t k = 0; k < part.global_node.size(); ++k)
    if (part.global_node[k] == global) return part.values[k];
  ADD_FAILURE() << "node not in partition";
  return 0.0;
}

bool contains(const Partition& part, int global) {
  return std::find(part.global_node.begin(), part.global_node.end(), global) != part.global_node.end();
}

TEST(PreProcess, Fig6FoldsPendantsIntoTheCore) {
  const DistributionNetwork net = fixtures::fig6();
  const PreProcessResult pre = pre_process(net, net.values());
  EXPECT_DOUBLE_EQ(pre.values[net.id("9")], 1.0);
  EXPECT_DOUBLE_EQ(pre.values[net.id("8")], -5.0);
  for (const char* gone : {"3", "11", "12", "13", "14", "15"}) EXPECT_FALSE(pre.in_core[net.id(gone)]) << gone;
  for (const char* kept : {"1", "2", "4", "5", "6", "7", "8", "9", "10", "16"})
    EXPECT_TRUE(pre.in_core[net.id(kept)]) << kept;
  // The caption's four listed pendant edges plus the two that peel node 3.
  EXPECT_EQ(pre.sampled.size(), 6u);
  EXPECT_EQ(pre.sampled.flow(net.id("9"), net.id("12")), 3.0);
  EXPECT_EQ(pre.sampled.flow(net.id("12"), net.id("13")), 1.0);
  EXPECT_EQ(pre.sampled.flow(net.id("8"), net.id("11")), 3.0);
  EXPECT_EQ(pre.sampled.flow(net.id("3"), net.id("14")), 2.0);
  EXPECT_EQ(pre.sampled.flow(net.id("3"), net.id("15")), 3.0);
  EXPECT_EQ(pre.sampled.flow(net.id("3"), net.id("9")), 7.0);
  std::vector<int> expected_sources{net.id("1"), net.id("2"), net.id("9")};
  std::sort(expected_sources.begin(), expected_sources.end());
  EXPECT_EQ(pre.sources, expected_sources);
}

TEST(PreProcess, TreeFullyPeels) {
  const DistributionNetwork net =
      from_edges({{"a", 3}, {"b", -1}, {"c", 0}, {"d", -2}}, {{"a", "b"}, {"b", "c"}, {"b", "d"}});
  const PreProcessResult pre = pre_process(net, net.values());
  EXPECT_TRUE(pre.core_edges.empty());
  EXPECT_EQ(std::count(pre.in_core.begin(), pre.in_core.end(), true), 0);
  // c has value 0, so its edge carries nothing and is not emitted.
  EXPECT_EQ(pre.sampled.size(), 2u);
  EXPECT_EQ(pre.sampled.flow(net.id("a"), net.id("b")), 3.0);
  EXPECT_EQ(pre.sampled.flow(net.id("b"), net.id("d")), 2.0);
}

TEST(PreProcess, CycleIsItsOwnCore) {
  const DistributionNetwork net = fixtures::fig2();
  const PreProcessResult pre = pre_process(net, net.values());
  EXPECT_EQ(pre.core_edges.size(), 6u);
  EXPECT_EQ(pre.sampled.size(), 0u);
  EXPECT_EQ(pre.values, net.values());
}

TEST(PreProcess, StrictModeRejectsOverloadedPendant) {
  RawNetwork raw;
  raw.nodes = {{"s", 3, 0}, {"a", 0, 1}, {"b", 0, 2}};
  raw.edges = {{"s", "a", kInf, 1}, {"a", "b", 1, 1}};
  const DistributionNetwork net = build_network(raw);
  EXPECT_NO_THROW(pre_process(net, net.values()));
  EXPECT_THROW(pre_process(net, net.values(), true), InfeasibleError);
}

TEST(PreProcess, CoreHasMinimumDegreeTwoAndEdgesAreConserved) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const DistributionNetwork net = testing::random_instance(seed);
    const PreProcessResult pre = pre_process(net, net.values());
    std::vector<int> deg(net.node_count(), 0);
    for (int e : pre.core_edges) {
      ++deg[net.edge(e).a];
      ++deg[net.edge(e).b];
    }
    for (int v = 0; v < net.node_count(); ++v) {
      EXPECT_TRUE(deg[v] == 0 || deg[v] >= 2);
      EXPECT_EQ(pre.in_core[v], deg[v] >= 2);
    }
    // Peeled edges plus core edges cover every edge exactly once.
    std::multiset<int> all(pre.core_edges.begin(), pre.core_edges.end());
    const PartitionSet set = islander_partition(net, pre);
    std::multiset<int> parts;
    for (const Partition& p : set.partitions) parts.insert(p.global_edge.begin(), p.global_edge.end());
    EXPECT_EQ(parts, all);
    for (const DirectedEdge& d : pre.sampled.edges) all.insert(*net.find_edge(d.from, d.to));
    std::set<int> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    EXPECT_LE(static_cast<int>(all.size()), net.edge_count());
  }
}

TEST(IslanderPartition, Fig6SplitsAtNodeOne) {
  const DistributionNetwork net = fixtures::fig6();
  const PreProcessResult pre = pre_process(net, net.values());
  const PartitionSet set = islander_partition(net, pre);
  ASSERT_EQ(set.partitions.size(), 2u);
  const int one = net.id("1");
  std::vector<double> replicas;
  for (const Partition& p : set.partitions) {
    ASSERT_TRUE(contains(p, one));
    replicas.push_back(local_value(p, one));
  }
  std::sort(replicas.begin(), replicas.end());
  EXPECT_DOUBLE_EQ(replicas[0], -1.0);
  EXPECT_DOUBLE_EQ(replicas[1], 6.0);
  // The four-cycle 1-4-5-6 is the partition where node 1 supplies 6.
  for (std::size_t l = 0; l < set.partitions.size(); ++l) {
    const Partition& p = set.partitions[l];
    const bool left = contains(p, net.id("4"));
    EXPECT_DOUBLE_EQ(set.separation_adjustments.at({static_cast<int>(l), one}), left ? 6.0 : -1.0);
  }
}

TEST(IslanderPartition, BiconnectedCoreStaysWhole) {
  const DistributionNetwork net = fixtures::fig2();
  const PartitionSet set = islander_partition(net, pre_process(net, net.values()));
  ASSERT_EQ(set.partitions.size(), 1u);
  EXPECT_TRUE(set.separation_adjustments.empty());
  EXPECT_EQ(set.partitions[0].values, net.values());
}

TEST(IslanderPartition, TwoCyclesSharingASource) {
  const DistributionNetwork net = from_edges({{"s", 5}, {"a", -1}, {"b", -1}, {"c", -2}, {"d", -1}},
                                             {{"s", "a"}, {"a", "b"}, {"b", "s"}, {"s", "c"}, {"c", "d"}, {"d", "s"}});
  const PartitionSet set = islander_partition(net, pre_process(net, net.values()));
  ASSERT_EQ(set.partitions.size(), 2u);
  double replica_sum = 0.0;
  for (const Partition& p : set.partitions) {
    // Replica value equals the demand of the partition's other nodes.
    double others = 0.0;
    for (std::size_t k = 0; k < p.global_node.size(); ++k)
      if (p.global_node[k] != net.id("s")) others += net.value(p.global_node[k]);
    EXPECT_DOUBLE_EQ(local_value(p, net.id("s")), -others);
    replica_sum += local_value(p, net.id("s"));
  }
  EXPECT_DOUBLE_EQ(replica_sum, 5.0);
}

TEST(IslanderPartition, SinkArticulationDoesNotSplit) {
  const DistributionNetwork net = from_edges({{"s", 4}, {"a", -1}, {"h", -1}, {"c", -1}, {"d", -1}},
                                             {{"s", "a"}, {"a", "h"}, {"h", "s"}, {"h", "c"}, {"c", "d"}, {"d", "h"}});
  const PartitionSet set = islander_partition(net, pre_process(net, net.values()));
  EXPECT_EQ(set.partitions.size(), 1u);
}

TEST(BalanceSeparation, ChainRoutesNetThroughBothSplits) {
  // A = {a1,a2,s1}, B = {s1,b,s2}, C = {s2,c1,c2}: supply in A, demand in C.
  const DistributionNetwork net =
      from_edges({{"a1", 6}, {"a2", 0}, {"s1", 1}, {"b", 0}, {"s2", 1}, {"c1", -4}, {"c2", -4}},
                 {{"a1", "a2"}, {"a2", "s1"}, {"s1", "a1"}, {"s1", "b"}, {"b", "s2"}, {"s2", "s1"},
                  {"s2", "c1"}, {"c1", "c2"}, {"c2", "s2"}});
  const PartitionSet set = islander_partition(net, pre_process(net, net.values()));
  ASSERT_EQ(set.partitions.size(), 3u);
  const int s1 = net.id("s1"), s2 = net.id("s2");
  for (const Partition& p : set.partitions) {
    double sum = 0.0;
    for (double v : p.values) sum += v;
    EXPECT_NEAR(sum, 0.0, 1e-9);
    if (contains(p, net.id("a1"))) EXPECT_DOUBLE_EQ(local_value(p, s1), -6.0);
    if (contains(p, net.id("b"))) {
      EXPECT_DOUBLE_EQ(local_value(p, s1), 7.0);
      EXPECT_DOUBLE_EQ(local_value(p, s2), -7.0);
    }
    if (contains(p, net.id("c1"))) EXPECT_DOUBLE_EQ(local_value(p, s2), 8.0);
    // Each balanced piece admits a radial distribution on its own.
    EXPECT_TRUE(reference::optimum(p.network, p.values).feasible);
  }
  EXPECT_FALSE(set.fallback_used);
}

TEST(BalanceSeparation, SinglePartitionIsIdentity) {
  PartitionSet set;
  const DistributionNetwork net = fixtures::fig2();
  Partition part;
  part.network = net;
  part.values = net.values();
  for (int v = 0; v < net.node_count(); ++v) part.global_node.push_back(v);
  part.sources = net.sources();
  set.partitions.push_back(part);
  balance_separation_values(set);
  EXPECT_EQ(set.partitions[0].values, net.values());
  EXPECT_TRUE(set.separation_adjustments.empty());
}

TEST(IslanderPartition, CustomBalancerHook) {
  const DistributionNetwork net = fixtures::fig6();
  int calls = 0;
  const PartitionSet set = islander_partition(net, pre_process(net, net.values()), [&](PartitionSet& s) {
    ++calls;
    balance_separation_values(s);
  });
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(set.partitions.size(), 2u);
}

TEST(IslanderPartition, ReplicasSumToOriginalAndPartitionsBalance) {
  int split = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const DistributionNetwork net = testing::split_instance(seed);
    const PreProcessResult pre = pre_process(net, net.values());
    const PartitionSet set = islander_partition(net, pre);
    if (set.partitions.size() > 1) ++split;
    for (const Partition& p : set.partitions) {
      double sum = 0.0;
      for (double v : p.values) sum += v;
      EXPECT_NEAR(sum, 0.0, 1e-9) << "seed " << seed;
    }
    for (const auto& [g, original] : set.split_values) {
      double total = 0.0;
      for (const Partition& p : set.partitions)
        if (contains(p, g)) total += local_value(p, g);
      EXPECT_NEAR(total, original, 1e-9) << "seed " << seed;
    }
    // Partitions overlap only at split nodes.
    std::map<int, int> seen;
    for (const Partition& p : set.partitions)
      for (int g : p.global_node) ++seen[g];
    for (const auto& [g, count] : seen)
      if (count > 1) EXPECT_TRUE(set.split_values.count(g)) << "seed " << seed;
  }
  EXPECT_GT(split, 250);
}

TEST(IslanderPartition, RecombinationMatchesWholeGraphOracle) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 200; ++seed) {
    const DistributionNetwork net = testing::split_instance(seed);
    const PreProcessResult pre = pre_process(net, net.values());
    const PartitionSet set = islander_partition(net, pre);
    if (set.partitions.size() < 2) continue;
    ++checked;
    const OracleResult whole = brute_force_optimal(net);
    bool all = true;
    double sum = 0.0;
    for (const Partition& p : set.partitions) {
      const OracleResult part = brute_force_optimal(p.network, p.values);
      all = all && part.feasible;
      sum += part.cost;
    }
    // Pendant flows are forced, so they join both sides of the comparison.
    bool pendants_fit = true;
    double pendant_cost = 0.0;
    for (std::size_t k = 0; k < pre.sampled.size(); ++k) {
      const auto e = *net.find_edge(pre.sampled.edges[k].from, pre.sampled.edges[k].to);
      pendants_fit = pendants_fit && pre.sampled.flows[k] <= net.edge(e).capacity + kEps;
      pendant_cost += net.edge(e).cost * pre.sampled.flows[k] * pre.sampled.flows[k];
    }
    EXPECT_EQ(whole.feasible, all && pendants_fit) << "seed " << seed;
    if (whole.feasible) EXPECT_NEAR(sum + pendant_cost, whole.cost, 1e-6 * std::max(1.0, whole.cost)) << "seed " << seed;
  }
}

TEST(Articulation, MatchesRemovalDefinition) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DistributionNetwork net = testing::random_instance(seed);
    std::vector<int> all(net.edge_count());
    std::iota(all.begin(), all.end(), 0);
    const std::vector<int> art = articulation_points(net, all);
    for (int v = 0; v < net.node_count(); ++v) {
      // Count components of the graph without v.
      std::vector<int> parent(net.node_count());
      std::iota(parent.begin(), parent.end(), 0);
      int comps = net.node_count() - 1;
      for (const Edge& e : net.edges()) {
        if (e.a == v || e.b == v) continue;
        const int a = reference::find_root(parent, e.a), b = reference::find_root(parent, e.b);
        if (a != b) {
          parent[a] = b;
          --comps;
        }
      }
      const bool is_art = std::find(art.begin(), art.end(), v) != art.end();
      EXPECT_EQ(is_art, comps > 1) << "seed " << seed << " node " << v;
    }
  }
}

}  // namespace
}  // namespace radial
