#include <gtest/gtest.h>

#include <algorithm>

#include "radial/condensation.hpp"
#include "radial/decomposition.hpp"
#include "radial/error.hpp"
#include "radial/netgen.hpp"
#include "radial/sampler.hpp"
#include "support/instances.hpp"

namespace radial {
namespace {

// The fig6 partition that contains the given label.
Partition fig6_partition(const std::string& label) {
  const DistributionNetwork net = fixtures::fig6();
  const PartitionSet set = islander_partition(net, pre_process(net, net.values()));
  for (const Partition& p : set.partitions)
    if (p.network.find_label(label)) return p;
  ADD_FAILURE() << "no partition holds " << label;
  return {};
}

std::vector<double> unsampled_values(const DualGraph& g) {
  std::vector<double> out;
  for (const SuperNode& s : g.supers)
    if (s.kind == SuperKind::unsampled) out.push_back(s.collective_value);
  std::sort(out.begin(), out.end());
  return out;
}

void expect_dual_invariants(const PartitionState& state, const DualGraph& g) {
  const DistributionNetwork& net = *state.net;
  std::vector<int> owner(net.node_count(), -1);
  for (const SuperNode& s : g.supers) {
    double sum = 0.0;
    for (int v : s.members) {
      EXPECT_EQ(owner[v], -1);
      owner[v] = s.id;
      sum += state.p[v];
    }
    EXPECT_NEAR(s.aggregate, sum, 1e-9);
    if (s.kind == SuperKind::sampled) EXPECT_EQ(s.collective_value, 0.0);
    else EXPECT_NEAR(s.collective_value, sum, 1e-9);
  }
  for (int v = 0; v < net.node_count(); ++v) EXPECT_GE(owner[v], 0);
  for (const DualEdge& d : g.edges) {
    EXPECT_EQ(net.find_edge(d.s, d.t), d.edge);
    EXPECT_NE(owner[d.s], owner[d.t]);
    EXPECT_EQ(owner[d.s], d.u);
    EXPECT_EQ(owner[d.t], d.v);
    if (g.supers[d.u].kind != g.supers[d.v].kind) EXPECT_EQ(g.supers[d.u].kind, SuperKind::sampled);
  }
}

TEST(TreeUpdate, MergesSingletons) {
  PolytreeSet trees(2);
  trees.add_tree(0, 1.0);
  trees.add_tree(1, -1.0);
  tree_update(trees, {0, 1});
  ASSERT_EQ(trees.trees().size(), 1u);
  const Polytree& t = trees.trees().front();
  std::vector<int> nodes = t.nodes;
  std::sort(nodes.begin(), nodes.end());
  EXPECT_EQ(nodes, (std::vector<int>{0, 1}));
  EXPECT_EQ(t.edges, (std::vector<DirectedEdge>{{0, 1}}));
}

TEST(TreeUpdate, GrowsIntoUncoveredNode) {
  PolytreeSet trees(3);
  trees.add_tree(0, 2.0);
  tree_update(trees, {0, 2});
  EXPECT_EQ(trees.tree_of(2), trees.tree_of(0));
  EXPECT_FALSE(trees.covered(1));
}

TEST(TreeUpdate, RejectsCyclesAndUncoveredTails) {
  PolytreeSet trees(3);
  trees.add_tree(0, 2.0);
  tree_update(trees, {0, 1});
  EXPECT_THROW(tree_update(trees, {1, 0}), StructureError);
  EXPECT_THROW(tree_update(trees, {2, 0}), StructureError);
}

TEST(TreeUpdate, Fig6TreeAfterTwoSamples) {
  const Partition part = fig6_partition("2");
  const DistributionNetwork& net = part.network;
  PartitionState state = init_state(net, part.values, part.sources);
  net_concad(state, DirectedEdge{net.id("2"), net.id("8")});
  const DualGraph g = net_concad(state, DirectedEdge{net.id("8"), net.id("10")});
  ASSERT_EQ(state.trees.trees().size(), 2u);
  const Polytree& t1 = state.trees.tree(state.trees.tree_of(net.id("9")));
  EXPECT_EQ(t1.nodes, std::vector<int>{net.id("9")});
  const Polytree& t2 = state.trees.tree(state.trees.tree_of(net.id("2")));
  std::vector<int> nodes = t2.nodes;
  std::sort(nodes.begin(), nodes.end());
  std::vector<int> want{net.id("2"), net.id("8"), net.id("10")};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(nodes, want);
  EXPECT_EQ(t2.edges, (std::vector<DirectedEdge>{{net.id("2"), net.id("8")}, {net.id("8"), net.id("10")}}));
  // Un-sampled supers {1,7} and {16}, tree {2,8,10} holding +6.
  EXPECT_EQ(unsampled_values(g), (std::vector<double>{-4.0, -3.0}));
  EXPECT_DOUBLE_EQ(g.supers[g.super_of[net.id("2")]].aggregate, 6.0);
  expect_dual_invariants(state, g);
}

TEST(ConnectedComponents, DisjointEdges) {
  RawNetwork raw;
  raw.nodes = {{"a", 1, 0}, {"b", 0, 1}, {"c", 1, 0}, {"d", 0, 1}};
  raw.edges = {{"a", "b", 1, 1}, {"c", "d", 1, 1}};
  const auto comps = connected_components(build_network(raw));
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(comps[1], (std::vector<int>{2, 3}));
}

TEST(ConnectedComponents, Fig6WithoutSampledNodes) {
  const Partition part = fig6_partition("2");
  const DistributionNetwork& net = part.network;
  std::vector<bool> keep(net.node_count(), true);
  for (const char* s : {"2", "8", "10", "9"}) keep[net.id(s)] = false;
  auto comps = connected_components(net, keep);
  ASSERT_EQ(comps.size(), 2u);
  std::vector<int> a{net.id("1"), net.id("7")};
  std::sort(a.begin(), a.end());
  EXPECT_EQ(comps[0], a);
  EXPECT_EQ(comps[1], std::vector<int>{net.id("16")});
}

TEST(ConnectedComponents, NothingKept) {
  const DistributionNetwork net = fixtures::fig2();
  EXPECT_TRUE(connected_components(net, std::vector<bool>(net.node_count(), false)).empty());
}

TEST(NetConcad, Fig6FirstCall) {
  std::vector<double> collected;
  for (const char* label : {"4", "16"}) {
    const Partition part = fig6_partition(label);
    PartitionState state = init_state(part.network, part.values, part.sources);
    const DualGraph g = net_concad(state);
    expect_dual_invariants(state, g);
    const auto u = unsampled_values(g);
    ASSERT_EQ(u.size(), 1u);
    collected.push_back(u[0]);
  }
  // The four-cycle side holds -6; the other side's sinks sum to -13.
  EXPECT_DOUBLE_EQ(collected[0], -6.0);
  EXPECT_DOUBLE_EQ(collected[1], -13.0);
}

TEST(NetConcad, FullySampledPartitionHasNoUnsampledSupers) {
  const DistributionNetwork net = fixtures::fig7();
  PartitionRun run = run_partition(net, net.values(), net.sources(), make_weight(WeightMode::power));
  const DualGraph g = net_concad(run.state);
  for (const SuperNode& s : g.supers) EXPECT_EQ(s.kind, SuperKind::sampled);
}

TEST(NetConcad, InvariantsHoldThroughoutRandomRuns) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DistributionNetwork net = testing::random_instance(seed);
    PartitionState state = init_state(net, net.values(), net.sources());
    DualGraph g = net_concad(state);
    const WeightFunction w = make_weight(WeightMode::power);
    for (int step = 0; step < net.node_count(); ++step) {
      expect_dual_invariants(state, g);
      const auto cands = weigh_candidates(state, g, w);
      if (cands.empty()) break;
      g = net_concad(state, sampler_select(state, g, w).edge);
    }
    // Values only move between nodes.
    double before = 0.0, after = 0.0;
    for (int v = 0; v < net.node_count(); ++v) {
      before += net.value(v);
      after += state.p[v];
    }
    EXPECT_NEAR(before, after, 1e-9);
  }
}

TEST(SettleEdge, RoutesSurplusThroughResidualCapacity) {
  RawNetwork raw;
  raw.nodes = {{"s", 5, 0}, {"a", 0, 2}, {"b", 0, 3}};
  raw.edges = {{"s", "a", 4, 1}, {"a", "b", 10, 1}};
  const DistributionNetwork net = build_network(raw);
  PartitionState state = init_state(net, net.values(), net.sources());
  net_concad(state, DirectedEdge{0, 1});
  EXPECT_DOUBLE_EQ(state.p[0], 3.0);
  EXPECT_DOUBLE_EQ(state.p[1], 0.0);
  // Only 2 units of capacity remain upstream of a.
  EXPECT_DOUBLE_EQ(accessible_surplus(state)[1], 2.0);
  net_concad(state, DirectedEdge{1, 2});
  EXPECT_DOUBLE_EQ(state.p[0], 1.0);
  EXPECT_DOUBLE_EQ(state.p[2], -1.0);
  EXPECT_DOUBLE_EQ(state.x[0], 4.0);
  EXPECT_DOUBLE_EQ(state.x[1], 2.0);
  EXPECT_DOUBLE_EQ(state.residual_capacity(0), 0.0);
}

TEST(NetConcad, RejectsUnknownOrRepeatedEdges) {
  const DistributionNetwork net = fixtures::fig2();
  PartitionState state = init_state(net, net.values(), net.sources());
  EXPECT_THROW(net_concad(state, DirectedEdge{net.id("1"), net.id("6")}), StructureError);
  net_concad(state, DirectedEdge{net.id("1"), net.id("2")});
  EXPECT_THROW(net_concad(state, DirectedEdge{net.id("1"), net.id("2")}), StructureError);
}

}  // namespace
}  // namespace radial
