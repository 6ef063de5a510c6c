#include "radial/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "radial/error.hpp"
#include "radial/tree_flow.hpp"

namespace radial {

double power_weight(const WeightContext& c) {
  const double denom = c.cost * c.d_j * c.d_j + c.f_hat;
  if (denom <= 0.0) return kInf;
  return c.p_i / denom;
}

double uniform_weight(const WeightContext& c) { return c.p_i; }

WeightFunction make_weight(WeightMode mode) {
  if (mode == WeightMode::uniform) return uniform_weight;
  return power_weight;
}

std::vector<double> normalize_weights(std::vector<double> raw) {
  double max_finite = 0.0;
  bool any_finite = false;
  for (double w : raw)
    if (std::isfinite(w)) {
      max_finite = any_finite ? std::max(max_finite, w) : w;
      any_finite = true;
    }
  for (double& w : raw)
    if (!std::isfinite(w)) w = any_finite && max_finite > 0 ? max_finite : 1.0;
  double total = 0.0;
  for (double w : raw) total += w;
  if (total > 0)
    for (double& w : raw) w /= total;
  return raw;
}

namespace {

// Topological order of covered nodes along sampled edges.
std::vector<int> topo_order(const PartitionState& s, std::vector<std::vector<int>>& in_edges) {
  const DistributionNetwork& net = *s.net;
  const int n = net.node_count();
  in_edges.assign(n, {});
  std::vector<std::vector<int>> out_edges(n);
  std::vector<int> indeg(n, 0);
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!s.dir[e]) continue;
    const int from = s.dir[e] > 0 ? net.edge(e).a : net.edge(e).b;
    const int to = net.other(e, from);
    in_edges[to].push_back(e);
    out_edges[from].push_back(e);
    ++indeg[to];
  }
  std::vector<int> order;
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (s.trees.covered(v) && indeg[v] == 0) queue.push_back(v);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int e : out_edges[v]) {
      const int w = net.other(e, v);
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  return order;
}

// Distinct neighbouring supers per super node.
std::vector<int> neighbour_counts(const DualGraph& dual) {
  std::vector<std::set<int>> nb(dual.supers.size());
  for (const DualEdge& d : dual.edges) {
    nb[d.u].insert(d.v);
    nb[d.v].insert(d.u);
  }
  std::vector<int> out(dual.supers.size());
  for (std::size_t k = 0; k < nb.size(); ++k) out[k] = static_cast<int>(nb[k].size());
  return out;
}

}  // namespace

std::vector<double> path_estimates(const PartitionState& s) {
  const DistributionNetwork& net = *s.net;
  std::vector<std::vector<int>> in_edges;
  const std::vector<int> order = topo_order(s, in_edges);
  std::vector<double> f(net.node_count(), 0.0);
  for (int v : order) {
    if (in_edges[v].empty()) continue;
    double best = kInf;
    for (int e : in_edges[v]) {
      const int u = net.other(e, v);
      best = std::min(best, f[u] + net.edge(e).cost * s.demand[v]);
    }
    f[v] = best;
  }
  return f;
}

std::vector<WeightedCandidate> weigh_candidates(const PartitionState& s, const DualGraph& dual,
                                                const WeightFunction& weight) {
  const DistributionNetwork& net = *s.net;
  const std::vector<double> access = accessible_surplus(s);
  const std::vector<double> f_hat = path_estimates(s);
  const std::vector<int> nb = neighbour_counts(dual);
  const auto covers = [&](int i, int j, int e) {
    const double need = std::max(0.0, -s.p[j]);
    return need > kEps && access[i] >= need - kEps && s.residual_capacity(e) >= need - kEps;
  };
  // Per unsampled super, the single supplying super able to cover it alone;
  // -1 when none, -2 when several.
  std::vector<int> sole_cover(dual.supers.size(), -1);
  for (const DualEdge& d : dual.edges) {
    const bool pos_u = dual.supers[d.u].aggregate > kEps;
    if (pos_u == (dual.supers[d.v].aggregate > kEps)) continue;
    const int src = pos_u ? d.u : d.v;
    const int dst = pos_u ? d.v : d.u;
    if (dual.supers[src].kind != SuperKind::sampled || dual.supers[dst].kind != SuperKind::unsampled) continue;
    if (!covers(pos_u ? d.s : d.t, pos_u ? d.t : d.s, d.edge)) continue;
    int& slot = sole_cover[dst];
    slot = slot == -1 || slot == src ? src : -2;
  }
  // Per sampled super, the single un-sampled super it can still feed; -1 / -2 as above.
  std::vector<int> sole_target(dual.supers.size(), -1);
  for (const DualEdge& d : dual.edges) {
    const bool pos_u = dual.supers[d.u].aggregate > kEps;
    if (pos_u == (dual.supers[d.v].aggregate > kEps)) continue;
    const int src = pos_u ? d.u : d.v;
    const int dst = pos_u ? d.v : d.u;
    if (dual.supers[src].kind != SuperKind::sampled || dual.supers[dst].kind != SuperKind::unsampled) continue;
    if (access[pos_u ? d.s : d.t] <= kEps) continue;
    int& slot = sole_target[src];
    slot = slot == -1 || slot == dst ? dst : -2;
  }
  std::vector<WeightedCandidate> out;
  std::vector<double> raw;
  for (const DualEdge& d : dual.edges) {
    const SuperNode& su = dual.supers[d.u];
    const SuperNode& sv = dual.supers[d.v];
    const bool pos_u = su.aggregate > kEps;
    const bool pos_v = sv.aggregate > kEps;
    if (pos_u == pos_v) continue;
    const SuperNode& src = pos_u ? su : sv;
    const SuperNode& dst = pos_u ? sv : su;
    if (src.kind != SuperKind::sampled) continue;
    const int i = pos_u ? d.s : d.t;
    const int j = pos_u ? d.t : d.s;
    if (access[i] <= kEps) continue;
    WeightContext ctx;
    ctx.p_i = access[i];
    ctx.cost = net.edge(d.edge).cost;
    ctx.d_j = std::max(0.0, -s.p[j]);
    ctx.f_hat = f_hat[i];
    const double w = weight(ctx);
    if (!(w > 0.0)) continue;
    WeightedCandidate c;
    c.dual = d;
    c.edge = {i, j};
    c.edge_id = d.edge;
    if (dst.kind == SuperKind::unsampled && nb[dst.id] == 1) {
      c.queue = QueueKind::pendant;
    } else if (dst.kind == SuperKind::unsampled && covers(i, j, d.edge) &&
               sole_cover[pos_u ? d.v : d.u] == (pos_u ? d.u : d.v)) {
      // Only one neighbouring tree can meet this target alone: serve it first.
      c.queue = QueueKind::pendant;
    } else if (dst.kind == SuperKind::unsampled && sole_target[pos_u ? d.u : d.v] == (pos_u ? d.v : d.u) &&
               s.residual_capacity(d.edge) >= std::min(access[i], ctx.d_j) - kEps) {
      // The supplying tree has no other outlet left.
      c.queue = QueueKind::pendant;
    } else {
      // Sufficient when the edge can carry the target's own deficit, or
      // everything the supplying side can offer.
      const double need = std::min(access[i], ctx.d_j);
      c.queue = s.residual_capacity(d.edge) >= need - kEps ? QueueKind::sufficient : QueueKind::fallback;
    }
    out.push_back(c);
    raw.push_back(w);
  }
  const std::vector<double> w = normalize_weights(raw);
  for (std::size_t k = 0; k < out.size(); ++k) out[k].weight = w[k];
  std::stable_sort(out.begin(), out.end(), [](const WeightedCandidate& x, const WeightedCandidate& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.edge < y.edge;
  });
  return out;
}

WeightedCandidate sampler_select(const PartitionState& s, const DualGraph& dual,
                                 const WeightFunction& weight) {
  const std::vector<WeightedCandidate> q = weigh_candidates(s, dual, weight);
  if (q.empty()) throw StructureError("sampler: no candidate edge");
  const WeightedCandidate* first_sufficient = nullptr;
  const WeightedCandidate* first_fallback = nullptr;
  for (const WeightedCandidate& c : q) {
    if (c.queue == QueueKind::pendant) return c;
    if (c.queue == QueueKind::sufficient && !first_sufficient) first_sufficient = &c;
    if (c.queue == QueueKind::fallback && !first_fallback) first_fallback = &c;
  }
  return first_sufficient ? *first_sufficient : *first_fallback;
}

std::vector<SourceToLeafPath> source_to_leaf_paths(const PartitionState& s) {
  const DistributionNetwork& net = *s.net;
  const std::vector<double> access = accessible_surplus(s);
  std::vector<std::vector<int>> out_edges(net.node_count());
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!s.dir[e]) continue;
    const int from = s.dir[e] > 0 ? net.edge(e).a : net.edge(e).b;
    out_edges[from].push_back(e);
  }
  std::vector<SourceToLeafPath> out;
  for (int t = 0; t < static_cast<int>(s.trees.trees().size()); ++t) {
    for (int root : s.trees.tree(t).roots) {
      struct Item {
        int v;
        std::vector<int> nodes;
        double bottleneck;
      };
      std::vector<Item> stack{{root, {root}, kInf}};
      while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        if (out_edges[it.v].empty()) {
          if (it.nodes.size() > 1)
            out.push_back(SourceToLeafPath{t, it.nodes, it.bottleneck, access[it.v]});
          continue;
        }
        for (auto k = out_edges[it.v].rbegin(); k != out_edges[it.v].rend(); ++k) {
          const int w = net.other(*k, it.v);
          Item next{w, it.nodes, std::min(it.bottleneck, s.residual_capacity(*k))};
          next.nodes.push_back(w);
          stack.push_back(std::move(next));
        }
      }
    }
  }
  return out;
}

PartitionRun run_partition(const DistributionNetwork& net, const NodalValues& p,
                           const std::vector<int>& sources, const WeightFunction& weight) {
  PartitionRun run{init_state(net, p, sources), {}, 0, false, {}};
  run.dual = net_concad(run.state);
  const int limit = std::max(0, net.node_count() - 1);
  while (run.iterations < limit) {
    const std::vector<WeightedCandidate> q = weigh_candidates(run.state, run.dual, weight);
    if (q.empty()) break;
    const WeightedCandidate pick = sampler_select(run.state, run.dual, weight);
    run.queues.push_back(pick.queue);
    run.dual = net_concad(run.state, pick.edge);
    ++run.iterations;
  }
  run.balanced = std::all_of(run.state.p.begin(), run.state.p.end(),
                             [](double v) { return std::abs(v) <= kEps; });
  return run;
}

PartitionRun run_partition(const Partition& part, const WeightFunction& weight) {
  return run_partition(part.network, part.values, part.sources, weight);
}

namespace {

double overload(double x, double cap) {
  const double a = std::abs(x);
  return a > cap ? a - cap : 0.0;
}

class SpanningState {
 public:
  SpanningState(const DistributionNetwork& net, const NodalValues& p) : net_(net), p_(p) {
    in_tree_.assign(net.edge_count(), false);
    flow_.assign(net.edge_count(), 0.0);
  }

  void set_tree(const std::vector<bool>& in_tree) {
    in_tree_ = in_tree;
    refresh();
  }

  void refresh() {
    ids_.clear();
    for (int e = 0; e < net_.edge_count(); ++e)
      if (in_tree_[e]) ids_.push_back(e);
    const ForestFlow ff = forest_flow(net_, ids_, p_);
    std::fill(flow_.begin(), flow_.end(), 0.0);
    violation_ = 0.0;
    for (std::size_t k = 0; k < ids_.size(); ++k) {
      flow_[ids_[k]] = ff.flow[k];
      violation_ += overload(ff.flow[k], net_.edge(ids_[k]).capacity);
    }
    imbalance_ = ff.max_imbalance;
    adj_.assign(net_.node_count(), {});
    for (int e : ids_) {
      adj_[net_.edge(e).a].push_back(e);
      adj_[net_.edge(e).b].push_back(e);
    }
  }

  // Tree path from u to v as (edge, sign) with sign +1 when walked a->b.
  std::vector<std::pair<int, int>> path(int u, int v) const {
    std::vector<int> via(net_.node_count(), -2);
    via[u] = -1;
    std::deque<int> queue{u};
    while (!queue.empty() && via[v] == -2) {
      const int x = queue.front();
      queue.pop_front();
      for (int e : adj_[x]) {
        const int y = net_.other(e, x);
        if (via[y] != -2) continue;
        via[y] = e;
        queue.push_back(y);
      }
    }
    std::vector<std::pair<int, int>> out;
    if (via[v] == -2) return out;
    for (int y = v; via[y] >= 0;) {
      const int e = via[y];
      const int x = net_.other(e, y);
      out.push_back({e, net_.edge(e).a == x ? 1 : -1});
      y = x;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  const std::vector<bool>& in_tree() const { return in_tree_; }
  double flow(int e) const { return flow_[e]; }
  double violation() const { return violation_; }
  double imbalance() const { return imbalance_; }
  double cost() const {
    double c = 0.0;
    for (int e : ids_) c += net_.edge(e).cost * flow_[e] * flow_[e];
    return c;
  }
  void swap_edges(int add, int remove) {
    in_tree_[add] = true;
    if (remove >= 0) in_tree_[remove] = false;
    refresh();
  }

 private:
  const DistributionNetwork& net_;
  const NodalValues& p_;
  std::vector<bool> in_tree_;
  std::vector<int> ids_;
  std::vector<double> flow_;
  std::vector<std::vector<int>> adj_;
  double violation_ = 0.0;
  double imbalance_ = 0.0;
};

// Squared utilization of a capacitated edge; zero when uncapacitated.
double pressure(double x, double cap) { return std::isinf(cap) ? 0.0 : (x / cap) * (x / cap); }

struct Move {
  double violation = kInf;
  double pressure = kInf;
  int untargeted = 1;
  double cost = kInf;
  int add = -1;
  int remove = -1;

  auto key() const { return std::tie(violation, untargeted, cost, pressure, add, remove); }
};

}  // namespace

RewireResult rewire(const PartitionState& state, const RewireOptions& opts) {
  const DistributionNetwork& net = *state.net;
  const NodalValues p0 = net.values();
  const int n = net.node_count();
  RewireResult out;

  const bool clean = std::all_of(state.p.begin(), state.p.end(), [](double v) { return std::abs(v) <= kEps; });
  if (clean) {
    out.solution = flows_on_polyforest(net, state.sampled, p0);
    out.solution.canonicalize();
    out.resolved = true;
    return out;
  }

  std::vector<bool> deficit(n, false);
  for (int v = 0; v < n; ++v) deficit[v] = state.p[v] < -kEps;

  // Complete the sampled forest to a spanning forest of the partition,
  // preferring edges that reach deficit nodes, then wide and cheap ones.
  std::vector<bool> in_tree(net.edge_count(), false);
  DisjointSets ds(n);
  for (int e = 0; e < net.edge_count(); ++e)
    if (state.dir[e]) {
      in_tree[e] = true;
      ds.unite(net.edge(e).a, net.edge(e).b);
    }
  std::vector<int> extra;
  for (int e = 0; e < net.edge_count(); ++e)
    if (!state.dir[e]) extra.push_back(e);
  std::sort(extra.begin(), extra.end(), [&](int x, int y) {
    const Edge& ex = net.edge(x);
    const Edge& ey = net.edge(y);
    const int tx = (deficit[ex.a] || deficit[ex.b]) ? 0 : 1;
    const int ty = (deficit[ey.a] || deficit[ey.b]) ? 0 : 1;
    return std::make_tuple(tx, -ex.capacity, ex.cost, x) < std::make_tuple(ty, -ey.capacity, ey.cost, y);
  });
  for (int e : extra)
    if (ds.unite(net.edge(e).a, net.edge(e).b)) {
      in_tree[e] = true;
      out.moves.push_back({e, -1});
    }

  SpanningState span(net, p0);
  span.set_tree(in_tree);
  std::vector<bool> best_tree = span.in_tree();
  double best_violation = span.violation();

  const int m = net.edge_count();
  const int budget = opts.max_swaps > 0 ? opts.max_swaps : 10 * n + 200;
  const int tenure = std::max(1, std::min(std::max(3, n / 4), (m - n + 1) / 2));
  const int stall_limit = 2 * n + 10;
  std::vector<int> tabu_until(m, -1);
  std::mt19937_64 rng(static_cast<std::uint64_t>(m) * 1315423911ULL + static_cast<std::uint64_t>(n));
  int iter = 0, stall = 0;
  while (span.violation() > kEps && span.imbalance() <= kEps && iter < budget) {
    Move best, fallback;
    std::vector<Move> admissible;
    const double base = span.violation();
    for (int f = 0; f < m; ++f) {
      if (span.in_tree()[f]) continue;
      const Edge& ef = net.edge(f);
      const auto cyc = span.path(ef.a, ef.b);
      if (cyc.empty()) continue;
      double cyc_before = 0.0;
      for (auto [c, sg] : cyc) cyc_before += overload(span.flow(c), net.edge(c).capacity);
      const int untargeted = (deficit[ef.a] || deficit[ef.b]) ? 0 : 1;
      for (auto [e, sg_e] : cyc) {
        // Circulation that zeroes e: walk the path a->b, return through f.
        const double theta = -span.flow(e) * sg_e;
        double after = base - cyc_before + overload(theta, ef.capacity);
        double dcost = ef.cost * theta * theta;
        double dpress = pressure(theta, ef.capacity);
        for (auto [c, sg] : cyc) {
          const double cap = net.edge(c).capacity;
          const double x0 = span.flow(c);
          if (c == e) {
            dcost -= net.edge(c).cost * x0 * x0;
            dpress -= pressure(x0, cap);
            continue;
          }
          const double x = x0 + theta * sg;
          after += overload(x, cap);
          dcost += net.edge(c).cost * (x * x - x0 * x0);
          dpress += pressure(x, cap) - pressure(x0, cap);
        }
        if (after < 0) after = 0;
        // Pressure changes within tolerance compare as equal.
        if (std::abs(dpress) <= 1e-12) dpress = 0.0;
        Move mv{after, dpress, untargeted, dcost, f, e};
        // Violations within tolerance compare as equal.
        if (std::abs(mv.violation - fallback.violation) <= kEps) mv.violation = fallback.violation;
        if (mv.key() < fallback.key()) fallback = mv;
        const bool tabu = tabu_until[f] > iter || tabu_until[e] > iter;
        if (tabu && after >= best_violation - kEps) continue;
        admissible.push_back(mv);
        if (std::abs(mv.violation - best.violation) <= kEps) mv.violation = best.violation;
        if (mv.key() < best.key()) best = mv;
      }
    }
    // Occasional random move to leave plateaus.
    if (!admissible.empty() && best.violation >= base - kEps && (rng() % 100) < 15)
      best = admissible[rng() % admissible.size()];
    // Every move tabu: take the best one regardless.
    if (best.add < 0) best = fallback;
    if (best.add < 0) break;
    span.swap_edges(best.add, best.remove);
    out.moves.push_back({best.add, best.remove});
    ++out.swaps;
    tabu_until[best.add] = iter + tenure;
    tabu_until[best.remove] = iter + tenure;
    ++iter;
    if (span.violation() < best_violation - kEps) {
      best_violation = span.violation();
      best_tree = span.in_tree();
      stall = 0;
    } else if (++stall >= stall_limit) {
      // Restart from the best tree with a few random exchanges.
      span.set_tree(best_tree);
      for (int k = 0; k < 1 + n / 4; ++k) {
        std::vector<int> outside;
        for (int f = 0; f < m; ++f)
          if (!span.in_tree()[f] && !span.path(net.edge(f).a, net.edge(f).b).empty()) outside.push_back(f);
        if (outside.empty()) break;
        const int f = outside[rng() % outside.size()];
        const auto cyc = span.path(net.edge(f).a, net.edge(f).b);
        const int e = cyc[rng() % cyc.size()].first;
        span.swap_edges(f, e);
        out.moves.push_back({f, e});
        ++out.swaps;
      }
      std::fill(tabu_until.begin(), tabu_until.end(), -1);
      stall = 0;
    }
  }
  if (span.violation() > best_violation + kEps) span.set_tree(best_tree);

  out.violation = span.violation();
  out.resolved = span.violation() <= kEps && span.imbalance() <= kEps;
  // Orient each edge along its flow; zero-flow edges keep a sampled direction.
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!span.in_tree()[e]) continue;
    const Edge& ed = net.edge(e);
    const double x = span.flow(e);
    DirectedEdge d{ed.a, ed.b};
    if (x < -kEps || (std::abs(x) <= kEps && state.dir[e] < 0)) d = {ed.b, ed.a};
    out.solution.add(d, std::abs(x) <= kEps ? 0.0 : std::abs(x));
  }
  out.solution.canonicalize();
  return out;
}

}  // namespace radial
