#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dexnet/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(DEXNET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path dir;
  explicit TempDir(const char* tag) {
    dir = fs::temp_directory_path() /
          (std::string("dexnet_cli_") + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
};

const std::string kFixture = std::string(DEXNET_SOURCE_DIR) + "/fixtures/small";

}  // namespace

TEST_CASE("unknown subcommands and flags exit 2") {
  CHECK(run_cli("bogus") == 2);
  CHECK(run_cli("stats --no-such-flag") == 2);
  CHECK(run_cli("") == 2);
}

TEST_CASE("help exits 0") { CHECK(run_cli("--help") == 0); }

TEST_CASE("runtime failures exit 1") {
  TempDir out("missing");
  CHECK(run_cli("stats --dataset /nonexistent --out " + (out.dir / "x").string()) ==
        1);
}

TEST_CASE("stats writes the declared report files within the time budget") {
  TempDir out("stats");
  auto start = std::chrono::steady_clock::now();
  int rc = run_cli("stats --dataset " + kFixture + " --date 2020-12-31 --out " +
                   out.dir.string());
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  REQUIRE(rc == 0);
  CHECK(elapsed < 10.0);
  for (const char* name :
       {"degree_distribution.csv", "fit.json", "betweenness_nodes.csv",
        "betweenness_edges.csv", "kcore.json", "gini.json", "components.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(out.dir / name));
  }
}

TEST_CASE("the bundled fixture matches its generator") {
  auto files = dexnet::make_fixture_dataset(500, 20200505);
  CHECK(slurp(kFixture + "/pairs.jsonl") == files.pairs_jsonl);
  CHECK(slurp(kFixture + "/pair_days.jsonl") == files.pair_days_jsonl);
  CHECK(slurp(kFixture + "/token_days.jsonl") == files.token_days_jsonl);
  CHECK(slurp(kFixture + "/reference_prices.csv") == files.reference_prices_csv);
}

TEST_CASE("attack outputs are byte-identical across reruns") {
  TempDir out1("attack1"), out2("attack2");
  const std::string flags = " --dataset " + kFixture +
                            " --strategies tvl,degree,betweenness,random"
                            " --n 50 --seed 7 --out ";
  REQUIRE(run_cli("attack" + flags + out1.dir.string()) == 0);
  REQUIRE(run_cli("attack" + flags + out2.dir.string()) == 0);
  for (const char* name : {"trace_tvl.csv", "trace_degree.csv",
                           "trace_betweenness.csv", "trace_random.csv",
                           "attack_traces.csv", "attack_meta.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(out1.dir / name));
    CHECK(slurp(out1.dir / name) == slurp(out2.dir / name));
  }
}

TEST_CASE("build and report write their summaries") {
  TempDir out("report");
  REQUIRE(run_cli("build --dataset " + kFixture + " --out " + out.dir.string()) == 0);
  CHECK(fs::exists(out.dir / "graph_summary.json"));
  REQUIRE(run_cli("report --dataset " + kFixture + " --out " + out.dir.string()) ==
          0);
  CHECK(fs::exists(out.dir / "summary.json"));
  CHECK(fs::exists(out.dir / "comparison.csv"));
}

TEST_CASE("evolve writes the series with the pinned columns") {
  TempDir out("evolve");
  REQUIRE(run_cli("evolve --dataset " + kFixture +
                  " --start 2020-05-05 --end 2020-05-25 --out " +
                  out.dir.string()) == 0);
  std::string csv = slurp(out.dir / "evolution.csv");
  CHECK(csv.rfind("date,nodes,edges,components,avg_degree,alpha,max_k,"
                  "kcore_size,kcore_avg_degree,kcore_ratio\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);  // header + 21 days
}
