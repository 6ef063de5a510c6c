#include "radial/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "radial/error.hpp"

namespace radial {
namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw InputError("schema error at " + field + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  const std::string field = where.empty() ? key : where + "." + key;
  if (!obj.is_object()) schema(where.empty() ? "document" : where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(field, "missing field");
  return *it;
}

double number(const Json& obj, const char* key, const std::string& where, bool allow_inf = false) {
  const Json& v = require(obj, key, where);
  if (allow_inf && v.is_string() && v.get<std::string>() == "inf") return kInf;
  if (!v.is_number()) schema(where + "." + key, allow_inf ? "expected a number or \"inf\"" : "expected a number");
  return v.get<double>();
}

std::string text(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) schema(where + "." + key, "expected a string");
  return v.get<std::string>();
}

const Json& array(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_array()) schema(where.empty() ? key : where + "." + key, "expected an array");
  return v;
}

Json parse_text(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

Json capacity_json(double c) { return std::isinf(c) ? Json("inf") : Json(c); }

Json report_json(const VerificationReport& r) {
  Json j;
  j["capacity_ok"] = r.capacity_ok;
  j["conservation_ok"] = r.conservation_ok;
  j["radial_ok"] = r.radial_ok;
  j["max_capacity_violation"] = r.max_capacity_violation;
  j["max_conservation_residual"] = r.max_conservation_residual;
  j["offending"] = r.offending_items;
  return j;
}

Json stats_json(const ForwardStats& s) {
  Json j;
  j["time_ms"] = s.time_ms;
  j["preprocess_ms"] = s.preprocess_ms;
  j["partition_ms"] = s.partition_ms;
  j["sampling_ms"] = s.sampling_ms;
  j["merge_ms"] = s.merge_ms;
  j["partitions"] = s.partitions;
  j["pre_sampled"] = s.pre_sampled;
  j["sampled_edges"] = s.sampled_edges;
  j["rewires"] = s.rewires;
  j["resolved"] = s.resolved;
  j["gap"] = s.gap ? Json(*s.gap) : Json(nullptr);
  return j;
}

}  // namespace

Json network_to_json(const DistributionNetwork& net) {
  const RawNetwork raw = net.raw();
  Json doc;
  doc["meta"] = {{"name", raw.meta.name}, {"seed", raw.meta.seed}};
  doc["nodes"] = Json::array();
  for (const RawNode& n : raw.nodes) doc["nodes"].push_back({{"id", n.id}, {"supply", n.supply}, {"demand", n.demand}});
  doc["edges"] = Json::array();
  for (const RawEdge& e : raw.edges)
    doc["edges"].push_back({{"a", e.a}, {"b", e.b}, {"capacity", capacity_json(e.capacity)}, {"cost", e.cost}});
  return doc;
}

RawNetwork raw_from_json(const Json& doc) {
  RawNetwork raw;
  if (!doc.is_object()) schema("document", "expected an object");
  if (auto it = doc.find("meta"); it != doc.end()) {
    if (!it->is_object()) schema("meta", "expected an object");
    if (it->contains("name")) raw.meta.name = text(*it, "name", "meta");
    if (it->contains("seed")) {
      const Json& s = (*it)["seed"];
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
        schema("meta.seed", "expected a non-negative integer");
      raw.meta.seed = s.get<std::uint64_t>();
    }
  }
  const Json& nodes = array(doc, "nodes", "");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    raw.nodes.push_back({text(nodes[i], "id", where), number(nodes[i], "supply", where),
                         number(nodes[i], "demand", where)});
  }
  const Json& edges = array(doc, "edges", "");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    raw.edges.push_back({text(edges[i], "a", where), text(edges[i], "b", where),
                         number(edges[i], "capacity", where, true), number(edges[i], "cost", where)});
  }
  return raw;
}

DistributionNetwork network_from_json(const Json& doc, BuildOptions opts) {
  return build_network(raw_from_json(doc), opts);
}

std::string dump_network(const DistributionNetwork& net) { return network_to_json(net).dump(2) + "\n"; }

DistributionNetwork parse_network(const std::string& s, BuildOptions opts) {
  return network_from_json(parse_text(s), opts);
}

DistributionNetwork load_network(const std::string& path, BuildOptions opts) {
  return parse_network(read_file(path), opts);
}

void save_network(const DistributionNetwork& net, const std::string& path) {
  write_file_atomic(path, dump_network(net));
}

Json solution_to_json(const DistributionNetwork& net, const RadialSolution& sol, const VerificationReport& report,
                      const ForwardStats* stats) {
  Json doc;
  doc["network"] = network_to_json(net);
  doc["cost"] = evaluate_cost(net, sol);
  doc["feasible"] = report.feasible();
  doc["report"] = report_json(report);
  doc["edges"] = Json::array();
  for (std::size_t k = 0; k < sol.size(); ++k)
    doc["edges"].push_back(
        {{"from", net.label(sol.edges[k].from)}, {"to", net.label(sol.edges[k].to)}, {"flow", sol.flows[k]}});
  if (stats) doc["stats"] = stats_json(*stats);
  return doc;
}

SolutionDocument solution_from_json(const Json& doc) {
  SolutionDocument out;
  out.network = network_from_json(require(doc, "network", ""), BuildOptions{.require_balance = false});
  out.cost = number(doc, "cost", "");
  const Json& f = require(doc, "feasible", "");
  if (!f.is_boolean()) schema("feasible", "expected a boolean");
  out.feasible = f.get<bool>();
  const Json& edges = array(doc, "edges", "");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const std::string from = text(edges[i], "from", where), to = text(edges[i], "to", where);
    auto u = out.network.find_label(from);
    auto v = out.network.find_label(to);
    if (!u) schema(where + ".from", "unknown node " + from);
    if (!v) schema(where + ".to", "unknown node " + to);
    out.solution.add({*u, *v}, number(edges[i], "flow", where));
  }
  return out;
}

std::string dump_solution(const DistributionNetwork& net, const RadialSolution& sol,
                          const VerificationReport& report, const ForwardStats* stats) {
  return solution_to_json(net, sol, report, stats).dump(2) + "\n";
}

void save_solution(const DistributionNetwork& net, const RadialSolution& sol, const VerificationReport& report,
                   const std::string& path, const ForwardStats* stats) {
  write_file_atomic(path, dump_solution(net, sol, report, stats));
}

SolutionDocument load_solution(const std::string& path) { return solution_from_json(parse_text(read_file(path))); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& s) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << s;
    if (!out.flush()) throw InputError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw InputError("cannot write " + path + ": " + ec.message());
}

}  // namespace radial
