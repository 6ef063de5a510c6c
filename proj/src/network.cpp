#include "radial/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "radial/error.hpp"

namespace radial {
namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

std::string num(double x) {
  std::string s = std::to_string(x);
  return s;
}

}  // namespace

DistributionNetwork build_network(const RawNetwork& raw, BuildOptions opts) {
  DistributionNetwork net;
  const int n = static_cast<int>(raw.nodes.size());
  if (n == 0) throw InputError("network has no nodes");
  net.labels_.reserve(n);
  net.supply_.reserve(n);
  net.demand_.reserve(n);
  double total_supply = 0.0;
  double total_demand = 0.0;
  for (int i = 0; i < n; ++i) {
    const RawNode& node = raw.nodes[i];
    if (!net.label_index_.emplace(node.id, i).second)
      throw InputError("duplicate node id '" + node.id + "'");
    if (!std::isfinite(node.supply) || !std::isfinite(node.demand))
      throw InputError("node '" + node.id + "' has a non-finite value");
    if (node.supply < 0 || node.demand < 0)
      throw InputError("node '" + node.id + "' has negative supply or demand");
    if (node.supply > kEps && node.demand > kEps)
      throw InputError("node '" + node.id + "' is both source and sink");
    net.labels_.push_back(node.id);
    net.supply_.push_back(node.supply);
    net.demand_.push_back(node.demand);
    total_supply += node.supply;
    total_demand += node.demand;
  }
  if (opts.require_balance && std::abs(total_supply - total_demand) > kEps)
    throw InputError("unbalanced totals: supply " + num(total_supply) + " vs demand " +
                     num(total_demand));

  net.incident_.assign(n, {});
  for (const RawEdge& re : raw.edges) {
    auto ia = net.label_index_.find(re.a);
    auto ib = net.label_index_.find(re.b);
    if (ia == net.label_index_.end() || ib == net.label_index_.end())
      throw InputError("edge (" + re.a + "," + re.b + ") references an unknown node");
    const int a = ia->second;
    const int b = ib->second;
    if (a == b) throw InputError("self-loop at node '" + re.a + "'");
    if (std::isnan(re.capacity) || re.capacity < 0)
      throw InputError("edge (" + re.a + "," + re.b + ") has negative capacity");
    if (!std::isfinite(re.cost) || re.cost < 0)
      throw InputError("edge (" + re.a + "," + re.b + ") has negative or non-finite cost");
    const int e = static_cast<int>(net.edges_.size());
    if (!net.edge_index_.emplace(pair_key(a, b), e).second)
      throw InputError("duplicate edge (" + re.a + "," + re.b + ")");
    net.edges_.push_back(Edge{a, b, re.capacity, re.cost});
    net.incident_[a].push_back(e);
    net.incident_[b].push_back(e);
  }
  net.meta_ = raw.meta;
  return net;
}

DistributionNetwork make_network(int n, const std::vector<Edge>& edges, const NodalValues& values,
                                 std::string name, BuildOptions opts) {
  if (static_cast<int>(values.size()) != n) throw InputError("value vector size mismatch");
  RawNetwork raw;
  raw.meta.name = std::move(name);
  for (int i = 0; i < n; ++i) {
    RawNode node{std::to_string(i), 0.0, 0.0};
    if (values[i] > 0) node.supply = values[i];
    else node.demand = -values[i];
    raw.nodes.push_back(node);
  }
  for (const Edge& e : edges) {
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) throw InputError("edge endpoint out of range");
    raw.edges.push_back(RawEdge{std::to_string(e.a), std::to_string(e.b), e.capacity, e.cost});
  }
  return build_network(raw, opts);
}

NodalValues DistributionNetwork::values() const {
  NodalValues p(node_count());
  for (int i = 0; i < node_count(); ++i) p[i] = value(i);
  return p;
}

std::vector<int> DistributionNetwork::sources() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (supply_[i] > kEps) out.push_back(i);
  return out;
}

int DistributionNetwork::id(std::string_view label) const {
  auto v = find_label(label);
  if (!v) throw InputError("unknown node id '" + std::string(label) + "'");
  return *v;
}

std::optional<int> DistributionNetwork::find_label(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> DistributionNetwork::find_edge(int u, int v) const {
  if (u == v) return std::nullopt;
  auto it = edge_index_.find(pair_key(u, v));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

DistributionNetwork DistributionNetwork::with_values(const NodalValues& p, BuildOptions opts) const {
  RawNetwork r = raw();
  if (static_cast<int>(p.size()) != node_count()) throw InputError("value vector size mismatch");
  for (int i = 0; i < node_count(); ++i) {
    r.nodes[i].supply = p[i] > 0 ? p[i] : 0.0;
    r.nodes[i].demand = p[i] < 0 ? -p[i] : 0.0;
  }
  return build_network(r, opts);
}

DistributionNetwork DistributionNetwork::subnetwork(const std::vector<int>& nodes,
                                                    const std::vector<int>& edge_ids,
                                                    const NodalValues& p, BuildOptions opts) const {
  RawNetwork r;
  r.meta = meta_;
  for (int v : nodes) {
    RawNode node{labels_[v], 0.0, 0.0};
    if (p[v] > 0) node.supply = p[v];
    else node.demand = -p[v];
    r.nodes.push_back(node);
  }
  for (int e : edge_ids) {
    const Edge& ed = edges_[e];
    r.edges.push_back(RawEdge{labels_[ed.a], labels_[ed.b], ed.capacity, ed.cost});
  }
  return build_network(r, opts);
}

RawNetwork DistributionNetwork::raw() const {
  RawNetwork r;
  r.meta = meta_;
  for (int i = 0; i < node_count(); ++i) r.nodes.push_back(RawNode{labels_[i], supply_[i], demand_[i]});
  for (const Edge& e : edges_)
    r.edges.push_back(RawEdge{labels_[e.a], labels_[e.b], e.capacity, e.cost});
  return r;
}

std::optional<double> RadialSolution::flow(int from, int to) const {
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k].from == from && edges[k].to == to) return flows[k];
  return std::nullopt;
}

void RadialSolution::canonicalize() {
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return edges[x] < edges[y]; });
  RadialSolution out;
  for (std::size_t k : order) out.add(edges[k], flows[k]);
  *this = std::move(out);
}

double evaluate_cost(const DistributionNetwork& net, const RadialSolution& sol) {
  double cost = 0.0;
  for (std::size_t k = 0; k < sol.edges.size(); ++k) {
    const DirectedEdge& d = sol.edges[k];
    if (d.from < 0 || d.to < 0 || d.from >= net.node_count() || d.to >= net.node_count())
      throw InputError("solution edge references a node outside the network");
    auto e = net.find_edge(d.from, d.to);
    if (!e)
      throw InputError("solution edge (" + net.label(d.from) + "," + net.label(d.to) +
                       ") is not in the network");
    const double x = sol.flows[k];
    if (x != 0.0) cost += net.edge(*e).cost * x * x;
  }
  return cost;
}

int PolytreeSet::add_tree(int root, double value) {
  Polytree t;
  t.id = next_id_++;
  t.nodes = {root};
  t.roots = {root};
  t.aggregate = value;
  trees_.push_back(std::move(t));
  tree_of_[root] = static_cast<int>(trees_.size()) - 1;
  return tree_of_[root];
}

int PolytreeSet::covered_count() const {
  return static_cast<int>(std::count_if(tree_of_.begin(), tree_of_.end(), [](int t) { return t >= 0; }));
}

void PolytreeSet::recompute_aggregates(const NodalValues& p) {
  for (Polytree& t : trees_) {
    t.aggregate = 0.0;
    for (int v : t.nodes) t.aggregate += p[v];
  }
}

void PolytreeSet::attach(int tree_index, DirectedEdge e) {
  Polytree& t = trees_[tree_index];
  t.edges.push_back(e);
  t.nodes.push_back(e.to);
  tree_of_[e.to] = tree_index;
}

int PolytreeSet::merge(int into, int from, DirectedEdge e) {
  // Keep the lower index so indices of unrelated trees shift predictably.
  if (from < into) std::swap(into, from);
  Polytree absorbed = std::move(trees_[from]);
  Polytree& keep = trees_[into];
  keep.nodes.insert(keep.nodes.end(), absorbed.nodes.begin(), absorbed.nodes.end());
  keep.edges.insert(keep.edges.end(), absorbed.edges.begin(), absorbed.edges.end());
  keep.edges.push_back(e);
  keep.roots.insert(keep.roots.end(), absorbed.roots.begin(), absorbed.roots.end());
  std::sort(keep.roots.begin(), keep.roots.end());
  keep.aggregate += absorbed.aggregate;
  trees_.erase(trees_.begin() + from);
  for (int& t : tree_of_) {
    if (t == from) t = into;
    else if (t > from) --t;
  }
  return into;
}

}  // namespace radial
