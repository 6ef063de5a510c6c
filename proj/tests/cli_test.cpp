#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "radial/io.hpp"
#include "radial/netgen.hpp"
#include "radial/oracle.hpp"

namespace radial {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(RADIAL_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("radial-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string save(const DistributionNetwork& net, const std::string& name) const {
    save_network(net, path(name));
    return path(name);
  }
  fs::path dir_;
};

TEST_F(Cli, SolveFig2) {
  const std::string net = save(fixtures::fig2(), "fig2.json");
  const CliRun r = run_cli("solve " + net + " --oracle --out " + path("sol.json"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("feasible=true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("gap="), std::string::npos) << r.out;
  const SolutionDocument doc = load_solution(path("sol.json"));
  EXPECT_TRUE(doc.feasible);
  EXPECT_GE(doc.cost, 22.0 - 1e-9);

  const CliRun v = run_cli("verify " + path("sol.json"));
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("feasible=true"), std::string::npos);
}

TEST_F(Cli, SolveFig5InParallelWithUniformWeight) {
  const std::string net = save(fixtures::fig5(), "fig5.json");
  const CliRun r = run_cli("solve " + net + " --jobs 2 --weight uniform");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("feasible=true"), std::string::npos);
}

TEST_F(Cli, InputErrorsExitWithTwo) {
  RawNetwork raw = fixtures::fig2().raw();
  raw.nodes[0].supply += 1;
  write_file_atomic(path("bad.json"), dump_network(build_network(raw, {.require_balance = false})));
  EXPECT_EQ(run_cli("solve " + path("bad.json")).code, 2);
  EXPECT_EQ(run_cli("solve " + path("missing.json")).code, 2);
  write_file_atomic(path("garbage.json"), "{\"nodes\": 3}");
  EXPECT_EQ(run_cli("solve " + path("garbage.json")).code, 2);
  EXPECT_EQ(run_cli("solve " + path("bad.json") + " --weight nope").code, 2);
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("generate --model ws --n 10 --beta 2").code, 2);
}

TEST_F(Cli, Oracle) {
  const CliRun ok = run_cli("oracle " + save(fixtures::fig2(), "fig2.json"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "22\n");
  const CliRun no = run_cli("oracle " + save(partition_reduction_instance({3, 5}, 2), "no.json"));
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "infeasible\n");
  EXPECT_EQ(run_cli("oracle " + save(fixtures::ieee33(), "big.json")).code, 2);
}

TEST_F(Cli, GenerateIsDeterministic) {
  EXPECT_EQ(run_cli("--seed 4 generate --model ws --n 30 --out " + path("a.json")).code, 0);
  EXPECT_EQ(run_cli("--seed 4 generate --model ws --n 30 --out " + path("b.json")).code, 0);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  const DistributionNetwork net = load_network(path("a.json"));
  EXPECT_EQ(net.node_count(), 30);
  EXPECT_EQ(net.edge_count(), 60);
  const CliRun fx = run_cli("generate --model fixture --fixture fig7");
  EXPECT_EQ(fx.code, 0);
  EXPECT_EQ(parse_network(fx.out), fixtures::fig7());
}

TEST_F(Cli, BenchCsv) {
  write_file_atomic(path("empty.json"), R"({"sizes": [], "seeds": 1})");
  const CliRun empty = run_cli("bench --spec " + path("empty.json"));
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "size,instances,feasible,mean_time_ms,mean_cost,mean_gap\n");

  write_file_atomic(path("small.json"), R"({"sizes": [6, 24], "seeds": 3, "k": 2})");
  const CliRun r = run_cli("bench --jobs 2 --spec " + path("small.json") + " --out " + path("out.csv"));
  EXPECT_EQ(r.code, 0);
  const std::string csv = read_file(path("out.csv"));
  std::istringstream lines(csv);
  std::string header, row6, row24;
  std::getline(lines, header);
  std::getline(lines, row6);
  std::getline(lines, row24);
  EXPECT_EQ(row6.rfind("6,3,3,", 0), 0u) << csv;
  EXPECT_NE(row6.back(), ',') << csv;
  EXPECT_EQ(row24.rfind("24,3,3,", 0), 0u) << csv;
  EXPECT_EQ(row24.back(), ',') << csv;
}

}  // namespace
}  // namespace radial
