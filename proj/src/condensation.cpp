#include "radial/condensation.hpp"

#include <algorithm>
#include <deque>

#include "radial/error.hpp"

namespace radial {

double PartitionState::residual_capacity(int e) const { return net->edge(e).capacity - x[e]; }

PartitionState init_state(const DistributionNetwork& net, const NodalValues& p,
                          const std::vector<int>& sources) {
  PartitionState s;
  s.net = &net;
  s.p = p;
  s.demand.assign(net.node_count(), 0.0);
  for (int v = 0; v < net.node_count(); ++v) s.demand[v] = p[v] < 0 ? -p[v] : 0.0;
  s.x.assign(net.edge_count(), 0.0);
  s.dir.assign(net.edge_count(), 0);
  s.trees = PolytreeSet(net.node_count());
  std::vector<int> roots = sources;
  std::sort(roots.begin(), roots.end());
  for (int r : roots) s.trees.add_tree(r, p[r]);
  return s;
}

void tree_update(PolytreeSet& trees, DirectedEdge e) {
  const int ti = trees.tree_of(e.from);
  if (ti < 0) throw StructureError("tree_update: tail node is not in any polytree");
  const int tj = trees.tree_of(e.to);
  if (tj == ti) throw StructureError("tree_update: edge would close a cycle inside one polytree");
  if (tj < 0) trees.attach(ti, e);
  else trees.merge(ti, tj, e);
}

std::vector<std::vector<int>> connected_components(const DistributionNetwork& g,
                                                   const std::vector<bool>& keep) {
  const int n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int r = 0; r < n; ++r) {
    if (!keep[r] || seen[r]) continue;
    std::vector<int> comp;
    std::vector<int> stack{r};
    seen[r] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int e : g.incident(v)) {
        const int w = g.other(e, v);
        if (keep[w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<std::vector<int>> connected_components(const DistributionNetwork& g) {
  return connected_components(g, std::vector<bool>(g.node_count(), true));
}

std::vector<double> accessible_surplus(const PartitionState& s) {
  const DistributionNetwork& net = *s.net;
  const int n = net.node_count();
  std::vector<std::vector<int>> in_edges(n);
  std::vector<int> indeg(n, 0);
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!s.dir[e]) continue;
    const int to = s.dir[e] > 0 ? net.edge(e).b : net.edge(e).a;
    in_edges[to].push_back(e);
    ++indeg[to];
  }
  std::vector<double> access(n, 0.0);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (s.trees.covered(v) && indeg[v] == 0) queue.push_back(v);
  std::vector<int> remaining = indeg;
  std::vector<std::vector<int>> out_edges(n);
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!s.dir[e]) continue;
    const int from = s.dir[e] > 0 ? net.edge(e).a : net.edge(e).b;
    out_edges[from].push_back(e);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    double a = std::max(s.p[v], 0.0);
    for (int e : in_edges[v]) {
      const int u = net.other(e, v);
      a += std::min(std::max(s.residual_capacity(e), 0.0), access[u]);
    }
    access[v] = a;
    for (int e : out_edges[v]) {
      const int w = net.other(e, v);
      if (--remaining[w] == 0) queue.push_back(w);
    }
  }
  return access;
}

namespace {

// BFS along sampled edges with residual capacity. Forward follows edge
// direction, backward goes against it. Returns the path as edge ids ordered
// from the start node outward, or empty when no node matches.
struct Reach {
  int node = -1;
  std::vector<int> path;
  double bottleneck = kInf;
};

Reach search(const PartitionState& s, int start, bool forward, bool want_surplus) {
  const DistributionNetwork& net = *s.net;
  auto matches = [&](int v) { return want_surplus ? s.p[v] > kEps : s.p[v] < -kEps; };
  Reach r;
  if (matches(start)) {
    r.node = start;
    return r;
  }
  std::vector<int> via(net.node_count(), -2);
  via[start] = -1;
  std::deque<int> queue{start};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    std::vector<std::pair<int, int>> next;
    for (int e : net.incident(v)) {
      if (!s.dir[e] || s.residual_capacity(e) <= kEps) continue;
      const int tail = s.dir[e] > 0 ? net.edge(e).a : net.edge(e).b;
      const bool leaves_v = tail == v;
      if (leaves_v != forward) continue;
      const int w = net.other(e, v);
      if (via[w] != -2) continue;
      next.push_back({w, e});
    }
    std::sort(next.begin(), next.end());
    for (auto [w, e] : next) {
      via[w] = e;
      if (matches(w)) {
        r.node = w;
        for (int u = w; via[u] >= 0; u = net.other(via[u], u)) {
          r.path.push_back(via[u]);
          r.bottleneck = std::min(r.bottleneck, s.residual_capacity(via[u]));
        }
        std::reverse(r.path.begin(), r.path.end());
        return r;
      }
      queue.push_back(w);
    }
  }
  return r;
}

}  // namespace

double settle_edge(PartitionState& s, DirectedEdge d) {
  const auto e = s.net->find_edge(d.from, d.to);
  if (!e) throw StructureError("settle_edge: not a network edge");
  double moved = 0.0;
  while (true) {
    if (s.residual_capacity(*e) <= kEps) break;
    const Reach up = search(s, d.from, false, true);
    if (up.node < 0) break;
    const Reach down = search(s, d.to, true, false);
    if (down.node < 0) break;
    double theta = std::min({s.p[up.node], -s.p[down.node], up.bottleneck, down.bottleneck,
                             s.residual_capacity(*e)});
    if (theta <= kEps) break;
    for (int c : up.path) s.x[c] += theta;
    for (int c : down.path) s.x[c] += theta;
    s.x[*e] += theta;
    s.p[up.node] -= theta;
    s.p[down.node] += theta;
    moved += theta;
  }
  return moved;
}

DualGraph net_concad(PartitionState& s, std::optional<DirectedEdge> new_edge) {
  const DistributionNetwork& net = *s.net;
  const int n = net.node_count();
  if (new_edge) {
    const auto e = net.find_edge(new_edge->from, new_edge->to);
    if (!e) throw StructureError("net_concad: sampled edge is not in the partition");
    if (s.dir[*e]) throw StructureError("net_concad: edge already sampled");
    tree_update(s.trees, *new_edge);
    s.dir[*e] = net.edge(*e).a == new_edge->from ? 1 : -1;
    s.sampled.push_back(*new_edge);
    settle_edge(s, *new_edge);
  }
  s.trees.recompute_aggregates(s.p);

  DualGraph g;
  g.super_of.assign(n, -1);
  for (int t = 0; t < static_cast<int>(s.trees.trees().size()); ++t) {
    const Polytree& tree = s.trees.tree(t);
    SuperNode sn;
    sn.id = static_cast<int>(g.supers.size());
    sn.kind = SuperKind::sampled;
    sn.members = tree.nodes;
    std::sort(sn.members.begin(), sn.members.end());
    sn.collective_value = 0.0;
    sn.aggregate = tree.aggregate;
    sn.tree = t;
    for (int v : sn.members) g.super_of[v] = sn.id;
    g.supers.push_back(std::move(sn));
  }
  std::vector<bool> keep(n);
  for (int v = 0; v < n; ++v) keep[v] = !s.trees.covered(v);
  for (auto& comp : connected_components(net, keep)) {
    SuperNode sn;
    sn.id = static_cast<int>(g.supers.size());
    sn.kind = SuperKind::unsampled;
    for (int v : comp) {
      sn.collective_value += s.p[v];
      g.super_of[v] = sn.id;
    }
    sn.aggregate = sn.collective_value;
    sn.members = std::move(comp);
    g.supers.push_back(std::move(sn));
  }
  for (int e = 0; e < net.edge_count(); ++e) {
    if (s.dir[e]) continue;
    int a = net.edge(e).a, b = net.edge(e).b;
    int su = g.super_of[a], sv = g.super_of[b];
    if (su == sv) continue;
    const bool a_sampled = g.supers[su].kind == SuperKind::sampled;
    const bool b_sampled = g.supers[sv].kind == SuperKind::sampled;
    if ((!a_sampled && b_sampled) || (a_sampled == b_sampled && sv < su)) {
      std::swap(a, b);
      std::swap(su, sv);
    }
    g.edges.push_back(DualEdge{su, sv, a, b, e});
  }
  return g;
}

}  // namespace radial
