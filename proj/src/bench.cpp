#include "radial/bench.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

#include "radial/error.hpp"
#include "radial/forward.hpp"
#include "radial/netgen.hpp"
#include "radial/oracle.hpp"

namespace radial {
namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError("bench spec: " + what); }

std::pair<double, double> range(const Json& v, const char* key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    bad(std::string(key) + " must be a [lo, hi] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

struct Outcome {
  bool feasible = false;
  double time_ms = 0.0;
  double cost = 0.0;
  std::optional<double> gap;
};

}  // namespace

int default_sources(int n) { return std::clamp(n / 12, 1, std::min(20, std::max(1, n - 1))); }

WeightMode parse_weight(const std::string& name) {
  if (name == "power") return WeightMode::power;
  if (name == "uniform") return WeightMode::uniform;
  throw InputError("unknown weight mode: " + name);
}

BenchSpec parse_bench_spec(const Json& doc) {
  if (!doc.is_object()) bad("expected an object");
  BenchSpec s;
  if (auto it = doc.find("sizes"); it != doc.end()) {
    if (!it->is_array()) bad("sizes must be an array");
    for (const Json& v : *it) {
      if (!v.is_number_integer() || v.get<int>() < 3) bad("sizes must be integers >= 3");
      s.sizes.push_back(v.get<int>());
    }
  }
  if (auto it = doc.find("seeds"); it != doc.end()) {
    if (it->is_number_integer()) {
      if (it->get<long long>() < 0) bad("seeds must be non-negative");
      for (std::uint64_t i = 0; i < it->get<std::uint64_t>(); ++i) s.seeds.push_back(i);
    } else if (it->is_array()) {
      for (const Json& v : *it) {
        if (!v.is_number_unsigned()) bad("seeds must be non-negative integers");
        s.seeds.push_back(v.get<std::uint64_t>());
      }
    } else {
      bad("seeds must be a count or an array");
    }
  } else {
    s.seeds = {0};
  }
  if (auto it = doc.find("k"); it != doc.end()) {
    if (!it->is_number_integer()) bad("k must be an integer");
    s.k = it->get<int>();
  }
  if (auto it = doc.find("beta"); it != doc.end()) {
    if (!it->is_number()) bad("beta must be a number");
    s.beta = it->get<double>();
  }
  if (auto it = doc.find("sources"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<int>() < 1) bad("sources must be a positive integer");
    s.sources = it->get<int>();
  }
  if (auto it = doc.find("weight"); it != doc.end()) {
    if (!it->is_string()) bad("weight must be a string");
    s.weight = parse_weight(it->get<std::string>());
  }
  if (auto it = doc.find("slack"); it != doc.end()) {
    if (it->is_string() && it->get<std::string>() == "inf") s.slack = kInf;
    else if (it->is_number() && it->get<double>() > 0) s.slack = it->get<double>();
    else bad("slack must be a positive number or \"inf\"");
  }
  if (auto it = doc.find("demand"); it != doc.end()) std::tie(s.demand_min, s.demand_max) = range(*it, "demand");
  if (auto it = doc.find("cost"); it != doc.end()) std::tie(s.cost_min, s.cost_max) = range(*it, "cost");
  if (auto it = doc.find("oracle"); it != doc.end()) {
    if (!it->is_boolean()) bad("oracle must be a boolean");
    s.oracle = it->get<bool>();
  }
  return s;
}

std::vector<BenchRow> run_bench(const BenchSpec& spec, int jobs) {
  struct Task {
    int size;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int n : spec.sizes)
    for (std::uint64_t seed : spec.seeds) tasks.push_back({n, seed});
  std::vector<Outcome> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  auto work = [&](std::size_t i) {
    try {
      const Task& t = tasks[i];
      const Graph g = watts_strogatz(t.size, spec.k, spec.beta, t.seed);
      ValueOptions vo;
      vo.sources = spec.sources ? *spec.sources : default_sources(t.size);
      vo.demand_min = spec.demand_min;
      vo.demand_max = spec.demand_max;
      vo.slack = spec.slack;
      vo.cost_min = spec.cost_min;
      vo.cost_max = spec.cost_max;
      vo.seed = t.seed;
      vo.name = "ws" + std::to_string(t.size) + "-" + std::to_string(t.seed);
      const DistributionNetwork net = assign_balanced_values(g, vo);
      ForwardOptions fo;
      fo.weight = spec.weight;
      if (spec.oracle && net.node_count() <= kOracleMaxNodes) {
        const OracleResult o = brute_force_optimal(net);
        if (o.feasible) fo.oracle_cost = o.cost;
      }
      const ForwardResult r = forward_solve(net, fo);
      out[i] = {r.report.feasible(), r.stats.time_ms, r.stats.cost, r.stats.gap};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = static_cast<unsigned>(std::max(1, jobs));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, tasks.size()); ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) work(i);
      });
    for (std::thread& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<BenchRow> rows;
  std::size_t i = 0;
  for (int n : spec.sizes) {
    BenchRow row;
    row.size = n;
    double gap_sum = 0.0;
    int gaps = 0;
    for (std::size_t s = 0; s < spec.seeds.size(); ++s, ++i) {
      ++row.instances;
      row.feasible += out[i].feasible ? 1 : 0;
      row.mean_time_ms += out[i].time_ms;
      row.mean_cost += out[i].cost;
      if (out[i].gap) {
        gap_sum += *out[i].gap;
        ++gaps;
      }
    }
    if (row.instances > 0) {
      row.mean_time_ms /= row.instances;
      row.mean_cost /= row.instances;
    }
    if (gaps > 0) row.mean_gap = gap_sum / gaps;
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "size,instances,feasible,mean_time_ms,mean_cost,mean_gap\n";
  os << std::setprecision(10);
  for (const BenchRow& r : rows) {
    os << r.size << ',' << r.instances << ',' << r.feasible << ',' << r.mean_time_ms << ',' << r.mean_cost << ',';
    if (r.mean_gap) os << *r.mean_gap;
    os << '\n';
  }
  return os.str();
}

}  // namespace radial
