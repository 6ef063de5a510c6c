#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace radial {

inline constexpr double kEps = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Signed nodal values p_i, indexed by dense node id. Supply positive.
using NodalValues = std::vector<double>;

struct Edge {
  int a = 0;
  int b = 0;
  double capacity = kInf;
  double cost = 1.0;
};

struct DirectedEdge {
  int from = 0;
  int to = 0;
  auto operator<=>(const DirectedEdge&) const = default;
};

struct RawNode {
  std::string id;
  double supply = 0.0;
  double demand = 0.0;
  bool operator==(const RawNode&) const = default;
};

struct RawEdge {
  std::string a;
  std::string b;
  double capacity = kInf;
  double cost = 1.0;
  bool operator==(const RawEdge&) const = default;
};

struct NetworkMeta {
  std::string name;
  std::uint64_t seed = 0;
  bool operator==(const NetworkMeta&) const = default;
};

struct RawNetwork {
  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;
  NetworkMeta meta;
  bool operator==(const RawNetwork&) const = default;
};

struct BuildOptions {
  bool require_balance = true;
};

// Undirected capacitated network with per-node supply and demand.
// Immutable after construction.
class DistributionNetwork {
 public:
  DistributionNetwork() = default;

  int node_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int other(int e, int v) const { return edges_[e].a == v ? edges_[e].b : edges_[e].a; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }

  double supply(int v) const { return supply_[v]; }
  double demand(int v) const { return demand_[v]; }
  double value(int v) const { return supply_[v] - demand_[v]; }
  NodalValues values() const;
  std::vector<int> sources() const;

  const std::string& label(int v) const { return labels_[v]; }
  // Dense id for a label; throws InputError when absent.
  int id(std::string_view label) const;
  std::optional<int> find_label(std::string_view label) const;
  std::optional<int> find_edge(int u, int v) const;

  const NetworkMeta& meta() const { return meta_; }

  // Same topology with supply/demand taken from signed values.
  DistributionNetwork with_values(const NodalValues& p, BuildOptions opts = {}) const;
  // Subnetwork on the given node ids (ascending order kept) and edge ids.
  DistributionNetwork subnetwork(const std::vector<int>& nodes, const std::vector<int>& edge_ids,
                                 const NodalValues& p, BuildOptions opts = {}) const;

  RawNetwork raw() const;
  bool operator==(const DistributionNetwork& o) const { return raw() == o.raw(); }

  friend DistributionNetwork build_network(const RawNetwork& raw, BuildOptions opts);

 private:
  std::vector<std::string> labels_;
  std::vector<double> supply_;
  std::vector<double> demand_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::unordered_map<std::string, int> label_index_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  NetworkMeta meta_;
};

DistributionNetwork build_network(const RawNetwork& raw, BuildOptions opts = {});

// Convenience builder with labels "0".."n-1" and signed values.
DistributionNetwork make_network(int n, const std::vector<Edge>& edges, const NodalValues& values,
                                 std::string name = {}, BuildOptions opts = {});

// Radial configuration: directed edges with nonnegative flows, parallel arrays.
struct RadialSolution {
  std::vector<DirectedEdge> edges;
  std::vector<double> flows;

  void add(DirectedEdge e, double flow) {
    edges.push_back(e);
    flows.push_back(flow);
  }
  std::size_t size() const { return edges.size(); }
  std::optional<double> flow(int from, int to) const;
  // Sort by (from, to) keeping flows aligned.
  void canonicalize();
  bool operator==(const RadialSolution&) const = default;
};

// Quadratic cost sum C_ij * x_ij^2. Throws InputError for edges absent from the network.
double evaluate_cost(const DistributionNetwork& net, const RadialSolution& sol);

struct Polytree {
  int id = 0;
  std::vector<int> nodes;
  std::vector<DirectedEdge> edges;
  std::vector<int> roots;
  double aggregate = 0.0;
};

// Disjoint rooted directed trees grown during sampling.
class PolytreeSet {
 public:
  explicit PolytreeSet(int node_count = 0) : tree_of_(node_count, -1) {}

  int add_tree(int root, double value);
  // Index into trees(), or -1 when the node is in no tree.
  int tree_of(int v) const { return tree_of_[v]; }
  bool covered(int v) const { return tree_of_[v] >= 0; }
  const std::vector<Polytree>& trees() const { return trees_; }
  const Polytree& tree(int index) const { return trees_[index]; }
  int node_count() const { return static_cast<int>(tree_of_.size()); }
  int covered_count() const;

  void recompute_aggregates(const NodalValues& p);

  // Used by tree_update; exposed for the condensation module.
  void attach(int tree_index, DirectedEdge e);
  int merge(int into, int from, DirectedEdge e);

 private:
  std::vector<Polytree> trees_;
  std::vector<int> tree_of_;
  int next_id_ = 0;
};

enum class SuperKind { sampled, unsampled };

struct SuperNode {
  int id = 0;
  SuperKind kind = SuperKind::unsampled;
  std::vector<int> members;
  // 0 for sampled supers, sum of p for un-sampled ones.
  double collective_value = 0.0;
  // Sum of p over members for both kinds.
  double aggregate = 0.0;
  int tree = -1;
};

struct DualEdge {
  int u = 0;
  int v = 0;
  int s = 0;
  int t = 0;
  int edge = 0;
};

struct DualGraph {
  std::vector<SuperNode> supers;
  std::vector<DualEdge> edges;
  std::vector<int> super_of;
};

}  // namespace radial
