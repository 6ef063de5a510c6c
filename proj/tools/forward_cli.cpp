#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "radial/bench.hpp"
#include "radial/error.hpp"
#include "radial/forward.hpp"
#include "radial/io.hpp"
#include "radial/netgen.hpp"
#include "radial/oracle.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;

std::string yes_no(bool b) { return b ? "true" : "false"; }

void print_report(const radial::VerificationReport& r) {
  std::cout << "capacity_ok=" << yes_no(r.capacity_ok) << " conservation_ok=" << yes_no(r.conservation_ok)
            << " radial_ok=" << yes_no(r.radial_ok) << " max_capacity_violation=" << r.max_capacity_violation
            << " max_conservation_residual=" << r.max_conservation_residual << "\n";
  for (const std::string& item : r.offending_items) std::cout << "offending: " << item << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial configuration solver for distribution networks"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for randomized generation")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Solve a network file");
  std::string solve_path, solve_out, weight = "power";
  bool strict = false;
  int jobs = 0;
  bool with_oracle = false;
  solve->add_option("network", solve_path, "Network file")->required();
  solve->add_option("--weight", weight, "Sampling weight")->check(CLI::IsMember({"power", "uniform"}));
  solve->add_flag("--strict-capacity", strict, "Reject instances whose forced pendant flows break capacity");
  solve->add_option("--jobs", jobs, "Solve partitions in parallel with up to N workers");
  solve->add_option("--out", solve_out, "Solution file to write");
  solve->add_flag("--oracle", with_oracle, "Report the gap to the exhaustive optimum");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum over spanning forests");
  std::string oracle_path;
  int max_n = radial::kOracleMaxNodes;
  oracle->add_option("network", oracle_path, "Network file")->required();
  oracle->add_option("--max-n", max_n, "Node-count guard")->capture_default_str();

  auto* gen = app.add_subcommand("generate", "Generate a network file");
  std::string model = "ws", fixture, gen_out, slack = "inf", name;
  int n = 120, k = 4, sources = 0;
  double beta = 0.1, dmin = 1, dmax = 10, cmin = 0.5, cmax = 2.0;
  gen->add_option("--model", model, "ws or fixture")->check(CLI::IsMember({"ws", "fixture"}));
  gen->add_option("--fixture", fixture, "Fixture name for --model fixture");
  gen->add_option("--n", n, "Node count")->capture_default_str();
  gen->add_option("--k", k, "Lattice neighbour count")->capture_default_str();
  gen->add_option("--beta", beta, "Rewiring probability")->capture_default_str();
  gen->add_option("--sources", sources, "Source count (default n/12 clamped to [1,20])");
  gen->add_option("--slack", slack, "Capacity slack factor or inf")->capture_default_str();
  gen->add_option("--demand-min", dmin)->capture_default_str();
  gen->add_option("--demand-max", dmax)->capture_default_str();
  gen->add_option("--cost-min", cmin)->capture_default_str();
  gen->add_option("--cost-max", cmax)->capture_default_str();
  gen->add_option("--name", name, "Network name");
  gen->add_option("--out", gen_out, "Output path (stdout if absent)");

  auto* verify = app.add_subcommand("verify", "Re-verify a solution file");
  std::string verify_path;
  verify->add_option("solution", verify_path, "Solution file")->required();

  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and print a CSV table");
  std::string spec_path, bench_out;
  int bench_jobs = 1;
  bench->add_option("--spec", spec_path, "Suite specification file")->required();
  bench->add_option("--jobs", bench_jobs, "Parallel instances")->capture_default_str();
  bench->add_option("--out", bench_out, "CSV output path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) {
      const radial::DistributionNetwork net = radial::load_network(solve_path);
      radial::ForwardOptions opts;
      opts.weight = radial::parse_weight(weight);
      opts.strict_capacity = strict;
      opts.parallel = jobs != 0;
      opts.jobs = jobs;
      if (with_oracle) {
        const radial::OracleResult o = radial::brute_force_optimal(net);
        if (o.feasible) opts.oracle_cost = o.cost;
      }
      const radial::ForwardResult r = radial::forward_solve(net, opts);
      if (!solve_out.empty()) radial::save_solution(net, r.solution, r.report, solve_out, &r.stats);
      std::cout << "cost=" << r.stats.cost << " time_ms=" << r.stats.time_ms
                << " feasible=" << yes_no(r.report.feasible()) << " partitions=" << r.stats.partitions
                << " rewires=" << r.stats.rewires;
      if (r.stats.gap) std::cout << " gap=" << *r.stats.gap;
      std::cout << "\n";
      return r.report.feasible() ? kOk : kInfeasible;
    }
    if (*oracle) {
      const radial::DistributionNetwork net = radial::load_network(oracle_path);
      const radial::OracleResult o = radial::brute_force_optimal(net, max_n);
      if (!o.feasible) {
        std::cout << "infeasible\n";
        return kInfeasible;
      }
      std::cout << o.cost << "\n";
      return kOk;
    }
    if (*gen) {
      radial::DistributionNetwork net;
      if (model == "fixture") {
        if (fixture.empty()) throw radial::InputError("--fixture is required with --model fixture");
        net = fixture == "ieee33" ? radial::fixtures::ieee33(seed) : radial::fixtures::by_name(fixture);
      } else {
        const radial::Graph g = radial::watts_strogatz(n, k, beta, seed);
        radial::ValueOptions vo;
        vo.sources = sources > 0 ? sources : radial::default_sources(n);
        vo.demand_min = dmin;
        vo.demand_max = dmax;
        vo.slack = slack == "inf" ? radial::kInf : std::stod(slack);
        vo.cost_min = cmin;
        vo.cost_max = cmax;
        vo.seed = seed;
        vo.name = name.empty() ? "ws" + std::to_string(n) + "-" + std::to_string(seed) : name;
        net = radial::assign_balanced_values(g, vo);
      }
      if (gen_out.empty()) std::cout << radial::dump_network(net);
      else radial::save_network(net, gen_out);
      return kOk;
    }
    if (*verify) {
      const radial::SolutionDocument doc = radial::load_solution(verify_path);
      const radial::VerificationReport r = radial::verify_solution(doc.network, doc.solution);
      std::cout << "feasible=" << yes_no(r.feasible()) << " cost=" << radial::evaluate_cost(doc.network, doc.solution)
                << "\n";
      print_report(r);
      return r.feasible() ? kOk : kInfeasible;
    }
    if (*bench) {
      const radial::BenchSpec spec = radial::parse_bench_spec(radial::Json::parse(radial::read_file(spec_path)));
      const std::string csv = radial::bench_csv(radial::run_bench(spec, bench_jobs));
      if (bench_out.empty()) std::cout << csv;
      else radial::write_file_atomic(bench_out, csv);
      return kOk;
    }
  } catch (const radial::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const radial::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
