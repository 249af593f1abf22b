// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Criteria are property-based at desk scale; the full-crawl
// reproduction recipe lives in the README.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dexnet/centrality.hpp"
#include "dexnet/ingest.hpp"
#include "dexnet/metrics.hpp"
#include "dexnet/powerlaw.hpp"
#include "dexnet/rng.hpp"
#include "dexnet/robustness.hpp"
#include "dexnet/synthetic.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace dexnet;

namespace {

struct Criterion {
  int number;
  std::string description;
  std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// --- 1: betweenness vs exhaustive enumeration ------------------------------

bool betweenness_oracle(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  double worst = 0;
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 5 + rng.bounded(46);  // <= 50 nodes
    std::size_t m = n + rng.bounded(n);
    auto g = oracles::random_test_graph(n, m, rng.next_u64());
    auto scores = brandes_scores(g);
    auto reference = oracles::brute_betweenness(g);
    for (NodeId v = 0; v < g.node_count(); ++v)
      worst = std::max(worst, std::abs(scores.node[v] / 2.0 - reference.node[v]));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      worst = std::max(worst, std::abs(scores.edge[e] / 2.0 - reference.edge[e]));
  }
  double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, "200 graphs, max |error| %.2e, %.1fs", worst,
                elapsed);
  detail = buf;
  return worst <= 1e-9 && elapsed < 60.0;
}

// --- 2: k-core vs peeling ---------------------------------------------------

bool kcore_oracle(std::string& detail) {
  Rng rng(202);
  std::size_t graphs = 0, mismatches = 0;
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 10 + rng.bounded(191);  // <= 200 nodes
    std::size_t m = n + rng.bounded(2 * n);
    auto g = oracles::random_test_graph(n, m, rng.next_u64());
    ++graphs;
    if (core_decomposition(g).core_number != oracles::peeling_core_numbers(g))
      ++mismatches;
  }
  detail = std::to_string(graphs) + " graphs, " + std::to_string(mismatches) +
           " mismatches";
  return mismatches == 0;
}

// --- 3: power-law round-trip ------------------------------------------------

bool powerlaw_roundtrip(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  double worst_continuous = 0, worst_discrete = 0;
  for (double alpha : {1.8, 2.5, 3.5}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto c = synth_power_law(alpha, 1.0, 100000,
                               named_stream(seed, "acceptance-continuous"),
                               FitMode::continuous);
      worst_continuous = std::max(
          worst_continuous, std::abs(fit(c, FitMode::continuous).alpha - alpha));
      auto d = synth_power_law(alpha, 5.0, 100000,
                               named_stream(seed, "acceptance-discrete"),
                               FitMode::discrete);
      worst_discrete = std::max(worst_discrete,
                                std::abs(fit(d, FitMode::discrete).alpha - alpha));
    }
  }
  double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max |alpha error| continuous %.4f, discrete %.4f, %.1fs",
                worst_continuous, worst_discrete, elapsed);
  detail = buf;
  return worst_continuous <= 0.05 && worst_discrete <= 0.1 && elapsed < 30.0;
}

// --- 4: gini equivalence ----------------------------------------------------

bool gini_equivalence(std::string& detail) {
  std::vector<double> hand = {0, 0, 0, 1};
  if (gini(hand) != 0.75) {
    detail = "hand case [0,0,0,1] != 0.75";
    return false;
  }
  Rng rng(404);
  long double worst = 0;
  for (int round = 0; round < 1000; ++round) {
    std::size_t n = 2 + rng.bounded(1999);
    std::vector<double> values(n);
    for (auto& v : values) v = rng.uniform01() * 1000.0;
    worst = std::max(worst, std::abs(static_cast<long double>(gini(values)) -
                                     oracles::gini_double_sum(values)));
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "1000 vectors, max |diff| %.2Le", worst);
  detail = buf;
  return worst <= 1e-12;
}

// --- 5: TVL conservation on the bundled fixture -----------------------------

bool tvl_conservation(std::string& detail) {
  Dataset ds = load_fixture(fs::path(DEXNET_SOURCE_DIR) / "fixtures" / "small");
  TrustedTokenConfig config;
  config.reference_prices = load_reference_prices(
      fs::path(DEXNET_SOURCE_DIR) / "fixtures" / "small" / "reference_prices.csv");

  std::unordered_map<std::string, const PairRecord*> by_address;
  for (const auto& p : ds.pairs) by_address[p.pair_address] = &p;

  std::set<Day> dates;
  for (const auto& s : ds.pair_days) dates.insert(s.date);

  std::size_t checked = 0, violations = 0;
  for (Day date : dates) {
    std::vector<PairDaySample> day_rows;
    for (const auto& s : ds.pair_days)
      if (s.date == date) day_rows.push_back(s);
    auto kept = filter_outliers(day_rows, ds.pairs, config).kept;

    std::unordered_map<std::string, Fixed6> trusted_prices;
    for (const auto& s : ds.token_days)
      if (s.date == date && config.is_trusted(s.token_address))
        trusted_prices[s.token_address] = s.price_usd;

    for (const auto& sample : kept) {
      const PairRecord& pair = *by_address.at(sample.pair_address);
      const bool t0 = config.is_trusted(pair.token0);
      const bool t1 = config.is_trusted(pair.token1);
      if (t0 == t1) continue;  // conservation applies to one-trusted pools
      PoolContribution c = pool_contributions(pair, sample, trusted_prices, config);
      const Fixed6 trusted_reserve = t0 ? sample.reserve0 : sample.reserve1;
      const Fixed6 trusted_value = trusted_prices.at(c.token_b).mul(trusted_reserve);
      ++checked;
      if (c.contribution_a_preclamp + trusted_value != sample.reserve_usd)
        ++violations;
    }
  }
  detail = std::to_string(checked) + " trusted pools, " +
           std::to_string(violations) + " violations";
  return checked > 0 && violations == 0;
}

// --- 6: robustness from-scratch oracle --------------------------------------

bool robustness_oracle(std::string& detail) {
  std::size_t checked_steps = 0, mismatches = 0, monotonicity_breaks = 0;
  std::vector<LiquidityGraph> fixtures;
  fixtures.push_back(with_synthetic_tvl(preferential_attachment(300, 1, 61), 61));
  fixtures.push_back(
      with_synthetic_tvl(oracles::random_test_graph(1000, 1500, 62), 62));
  {
    Dataset ds = load_fixture(fs::path(DEXNET_SOURCE_DIR) / "fixtures" / "small");
    TrustedTokenConfig config;
    std::vector<PairDaySample> day_rows;
    Day last = 0;
    for (const auto& s : ds.pair_days) last = std::max(last, s.date);
    for (const auto& s : ds.pair_days)
      if (s.date == last) day_rows.push_back(s);
    auto kept = filter_outliers(day_rows, ds.pairs, config).kept;
    std::unordered_map<std::string, Fixed6> pool_tvl;
    for (const auto& s : kept) pool_tvl[s.pair_address] = s.reserve_usd;
    fixtures.push_back(build_graph(ds.pairs, pool_tvl, {}, ds.tokens, last));
  }

  for (const auto& g : fixtures) {
    for (auto strategy : {AttackStrategy::tvl, AttackStrategy::betweenness,
                          AttackStrategy::degree, AttackStrategy::random}) {
      auto order = rank_tokens(g, strategy, {}, 99);
      const std::size_t n_remove = std::min<std::size_t>(40, order.size());
      auto trace = simulate_removal(g, order, n_remove);

      std::vector<std::string> removed;
      double last_lost = 0;
      std::size_t last_edges = trace.initial_edges;
      for (const auto& step : trace.steps) {
        removed.push_back(step.removed_token);
        auto reference = oracles::recompute_damage(g, removed);
        ++checked_steps;
        if (step.edges_remaining != reference.edges_remaining ||
            step.component_count != reference.component_count ||
            step.tvl_lost_fraction !=
                ratio(reference.tvl_lost, trace.initial_tvl_usd))
          ++mismatches;
        if (step.edges_remaining > last_edges || step.tvl_lost_fraction < last_lost)
          ++monotonicity_breaks;
        last_edges = step.edges_remaining;
        last_lost = step.tvl_lost_fraction;
      }
    }
  }
  detail = std::to_string(checked_steps) + " steps, " +
           std::to_string(mismatches) + " oracle mismatches, " +
           std::to_string(monotonicity_breaks) + " monotonicity breaks";
  return mismatches == 0 && monotonicity_breaks == 0;
}

// --- 7: qualitative strategy ordering ----------------------------------------

bool strategy_ordering(std::string& detail) {
  int ok_seeds = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = with_synthetic_tvl(preferential_attachment(200, 1, seed), seed);
    std::vector<AttackPlan> plans;
    for (auto strategy : {AttackStrategy::tvl, AttackStrategy::betweenness,
                          AttackStrategy::degree, AttackStrategy::random}) {
      AttackPlan plan;
      plan.strategy = strategy;
      plan.protected_tokens = {};
      plan.n_remove = 100;
      plan.seed = named_stream(seed, "acceptance-ordering");
      plans.push_back(plan);
    }
    auto traces = run_attack_suite(g, plans);
    auto at = [&](AttackStrategy s) -> const RemovalStep& {
      return traces.at(s).steps.back();
    };
    const auto& deg = at(AttackStrategy::degree);
    const auto& bet = at(AttackStrategy::betweenness);
    const auto& tvl = at(AttackStrategy::tvl);
    const auto& rnd = at(AttackStrategy::random);

    const bool degree_min_edges = deg.edges_remaining <= bet.edges_remaining &&
                                  deg.edges_remaining <= tvl.edges_remaining &&
                                  deg.edges_remaining < rnd.edges_remaining;
    const bool betweenness_max_components =
        bet.component_count >= deg.component_count &&
        bet.component_count >= tvl.component_count &&
        bet.component_count > rnd.component_count;
    const bool random_least_damage =
        rnd.edges_remaining > deg.edges_remaining &&
        rnd.edges_remaining > bet.edges_remaining &&
        rnd.edges_remaining > tvl.edges_remaining &&
        rnd.component_count < deg.component_count &&
        rnd.component_count < bet.component_count &&
        rnd.component_count < tvl.component_count &&
        rnd.tvl_lost_fraction < deg.tvl_lost_fraction &&
        rnd.tvl_lost_fraction < bet.tvl_lost_fraction &&
        rnd.tvl_lost_fraction < tvl.tvl_lost_fraction;
    if (degree_min_edges && betweenness_max_components && random_least_damage)
      ++ok_seeds;
  }
  detail = std::to_string(ok_seeds) + "/10 seeds reproduce the ordering";
  return ok_seeds == 10;
}

// --- 8: random-reference core structure --------------------------------------

bool random_reference_core(std::string& detail) {
  int ok_seeds = 0;
  double avg_low = 1e9, avg_high = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_reference(10000, 10250, named_stream(seed, "acceptance-rrc"));
    auto cores = core_decomposition(g);
    std::vector<NodeId> two_core;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (cores.core_number[v] >= 2) two_core.push_back(v);
    auto sub = g.induced(two_core);
    const double avg = sub.node_count() ? average_degree(sub) : 0.0;
    avg_low = std::min(avg_low, avg);
    avg_high = std::max(avg_high, avg);
    if (cores.max_k == 2 && avg >= 2.5 && avg <= 3.0) ++ok_seeds;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/10 seeds, 2-core avg degree in [%.3f, %.3f]",
                ok_seeds, avg_low, avg_high);
  detail = buf;
  return ok_seeds == 10;
}

// --- 9: CLI pipeline determinism ---------------------------------------------

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

bool cli_determinism(std::string& detail) {
  const std::string fixture = std::string(DEXNET_SOURCE_DIR) + "/fixtures/small";
  const std::string refs = fixture + "/reference_prices.csv";
  std::vector<fs::path> out_dirs;
  struct Run {
    int parallel;
    int repeat;
  };
  const std::vector<Run> runs = {{1, 1}, {1, 2}, {4, 1}, {4, 2}};

  for (const auto& run : runs) {
    fs::path dir = fs::temp_directory_path() /
                   ("dexnet_accept_p" + std::to_string(run.parallel) + "_r" +
                    std::to_string(run.repeat) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string common = " --dataset " + fixture + " --seed 7 --parallel " +
                               std::to_string(run.parallel) +
                               " --reference-prices " + refs + " --out " +
                               dir.string();
    if (run_cli("stats" + common) != 0 ||
        run_cli("evolve --dataset " + fixture + " --parallel " +
                std::to_string(run.parallel) +
                " --start 2020-05-05 --end 2020-12-31 --out " + dir.string()) != 0 ||
        run_cli("attack" + common +
                " --strategies tvl,degree,betweenness,random --n 100") != 0 ||
        run_cli("report" + common) != 0) {
      detail = "a pipeline run failed";
      return false;
    }
    out_dirs.push_back(dir);
  }

  std::size_t files = 0;
  bool identical = true;
  for (const auto& entry : fs::directory_iterator(out_dirs[0])) {
    ++files;
    const std::string reference = slurp(entry.path());
    for (std::size_t i = 1; i < out_dirs.size(); ++i)
      if (slurp(out_dirs[i] / entry.path().filename()) != reference) {
        identical = false;
        detail = "differs: " + entry.path().filename().string();
      }
  }
  for (const auto& dir : out_dirs) fs::remove_all(dir);
  if (!identical) return false;
  detail = std::to_string(files) +
           " files byte-identical across 2 runs x parallelism {1,4}";
  return files >= 14;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "betweenness matches exhaustive enumeration (<=50 nodes, 1e-9)",
       betweenness_oracle},
      {2, "core numbers match iterative peeling (<=200 nodes, exact)",
       kcore_oracle},
      {3, "power-law round-trip recovers alpha (1e5 samples, 3 alphas x 5 seeds)",
       powerlaw_roundtrip},
      {4, "gini sorted identity equals pairwise definition (1e-12)",
       gini_equivalence},
      {5, "per-pool TVL conservation on the bundled fixture (exact)",
       tvl_conservation},
      {6, "attack traces equal from-scratch recomputation, damage monotone",
       robustness_oracle},
      {7, "strategy ordering: degree razes pools, betweenness shatters, random "
          "spares",
       strategy_ordering},
      {8, "random reference at 10k nodes: max core 2, 2-core degree in [2.5,3]",
       random_reference_core},
      {9, "CLI pipeline byte-identical across runs and parallelism",
       cli_determinism},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d: %s - %s (%s)\n", criterion.number,
                ok ? "PASS" : "FAIL", criterion.description.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
