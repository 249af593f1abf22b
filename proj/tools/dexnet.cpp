// dexnet: token-graph analytics for Uniswap-V2-style pool datasets.
//
// Subcommands: ingest, build, stats, evolve, attack, report. Every run is
// deterministic given the dataset, flags, and seed; outputs are plain CSV
// and JSON files under --out.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "dexnet/centrality.hpp"
#include "dexnet/dynamics.hpp"
#include "dexnet/errors.hpp"
#include "dexnet/ingest.hpp"
#include "dexnet/metrics.hpp"
#include "dexnet/powerlaw.hpp"
#include "dexnet/report.hpp"
#include "dexnet/rng.hpp"
#include "dexnet/robustness.hpp"
#include "dexnet/subgraph_client.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CommonArgs {
  std::string dataset;
  std::string out_dir;
  std::string date;
  std::uint64_t seed = 1;
  int parallel = 0;

  std::vector<std::string> trusted;
  std::string reference_prices;
  std::string outlier_cap = "1000000000";
  double deviation_factor = 3.0;
};

void add_trust_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--trusted", args.trusted,
                  "trusted token addresses (default WETH,USDC,USDT,DAI,WBTC)")
      ->delimiter(',');
  cmd->add_option("--reference-prices", args.reference_prices,
                  "CSV of reference prices for the outlier filter");
  cmd->add_option("--cap", args.outlier_cap,
                  "reserveUSD cap for pools without a trusted token");
  cmd->add_option("--deviation-factor", args.deviation_factor,
                  "allowed implied/reference price ratio for trusted tokens");
}

dexnet::TrustedTokenConfig trust_config(const CommonArgs& args) {
  dexnet::TrustedTokenConfig config;
  if (!args.trusted.empty()) config.trusted = args.trusted;
  config.outlier_cap_usd = dexnet::Fixed6::parse(args.outlier_cap);
  config.deviation_factor = args.deviation_factor;
  if (!args.reference_prices.empty())
    config.reference_prices = dexnet::load_reference_prices(args.reference_prices);
  config.validate();
  return config;
}

void apply_parallelism(int parallel) {
#ifdef _OPENMP
  if (parallel > 0) omp_set_num_threads(parallel);
#else
  (void)parallel;
#endif
}

fs::path ensure_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  fs::create_directories(dir);
  return dir;
}

dexnet::Day resolve_date(const CommonArgs& args, const dexnet::Dataset& ds) {
  if (!args.date.empty()) return dexnet::parse_day(args.date);
  dexnet::Day latest = 0;
  bool found = false;
  for (const auto& s : ds.pair_days) {
    latest = found ? std::max(latest, s.date) : s.date;
    found = true;
  }
  if (!found) {
    for (const auto& p : ds.pairs) {
      dexnet::Day d = dexnet::day_from_unix(p.created_at);
      latest = found ? std::max(latest, d) : d;
      found = true;
    }
  }
  if (!found) throw dexnet::ArgumentError("dataset is empty; cannot pick a date");
  return latest;
}

struct DayBuild {
  dexnet::LiquidityGraph graph;
  dexnet::FilterResult filter;
  dexnet::TokenTvlResult token_tvl;
  std::size_t day_samples = 0;
};

// One day's pipeline: filter that day's samples, reconstruct token TVL,
// attach pool TVL from kept samples, assemble the graph.
DayBuild build_for_day(const dexnet::Dataset& ds,
                       const dexnet::TrustedTokenConfig& config,
                       dexnet::Day date) {
  DayBuild out;
  std::vector<dexnet::PairDaySample> day_rows;
  for (const auto& s : ds.pair_days)
    if (s.date == date) day_rows.push_back(s);
  out.day_samples = day_rows.size();

  std::vector<dexnet::TokenDaySample> day_tokens;
  for (const auto& s : ds.token_days)
    if (s.date == date) day_tokens.push_back(s);

  out.filter = dexnet::filter_outliers(day_rows, ds.pairs, config);
  out.token_tvl =
      dexnet::reconstruct_token_tvl(ds.pairs, out.filter.kept, day_tokens, config);

  std::unordered_map<std::string, dexnet::Fixed6> pool_tvl;
  for (const auto& s : out.filter.kept) pool_tvl[s.pair_address] = s.reserve_usd;

  out.graph =
      dexnet::build_graph(ds.pairs, pool_tvl, out.token_tvl.tvl, ds.tokens, date);
  return out;
}

ordered_json trusted_share_json(const dexnet::TokenTvlResult& tvl) {
  ordered_json j;
  j["pools_with_trusted"] = tvl.pools_with_trusted;
  j["pools_total"] = tvl.pools_total;
  j["fraction"] = tvl.pools_total
                      ? static_cast<double>(tvl.pools_with_trusted) /
                            static_cast<double>(tvl.pools_total)
                      : 0.0;
  return j;
}

ordered_json fit_result_json(const dexnet::FitResult& fit) {
  ordered_json j;
  j["alpha"] = fit.alpha;
  j["xmin"] = fit.xmin;
  j["sigma"] = fit.sigma;
  j["ks_distance"] = fit.ks_distance;
  j["n_tail"] = fit.n_tail;
  j["mode"] = dexnet::fit_mode_str(fit.mode);
  return j;
}

int cmd_ingest(const CommonArgs& args, const dexnet::FetchOptions& fetch,
               const std::string& start, const std::string& end) {
  dexnet::DayRange range{dexnet::parse_day(start), dexnet::parse_day(end)};
  dexnet::FetchOptions options = fetch;
  if (args.parallel > 0) options.parallelism = args.parallel;
  dexnet::Dataset ds = dexnet::fetch_dataset(options, range);
  dexnet::write_dataset(ds, ensure_out_dir(args.out_dir));
  std::cerr << "ingested " << ds.pairs.size() << " pairs, " << ds.pair_days.size()
            << " pair-day rows, " << ds.token_days.size() << " token-day rows ("
            << ds.duplicate_rows_dropped << " duplicate rows dropped)\n";
  return 0;
}

int cmd_build(const CommonArgs& args) {
  dexnet::Dataset ds = dexnet::load_fixture(args.dataset);
  dexnet::TrustedTokenConfig config = trust_config(args);
  dexnet::Day date = resolve_date(args, ds);
  DayBuild day = build_for_day(ds, config, date);

  dexnet::Fixed6 market;
  for (const auto& e : day.graph.edges()) market += e.tvl_usd;
  dexnet::Fixed6 token_total;
  for (const auto& n : day.graph.nodes()) token_total += n.tvl_usd;

  std::map<std::string, std::size_t> rejected;
  for (const auto& r : day.filter.rejected) ++rejected[r.reason];

  ordered_json j;
  j["as_of"] = dexnet::day_str(date);
  j["nodes"] = day.graph.node_count();
  j["edges"] = day.graph.edge_count();
  j["market_tvl_usd"] = market.str();
  j["token_tvl_total_usd"] = token_total.str();
  j["day_samples"] = day.day_samples;
  ordered_json rej = ordered_json::object();
  for (const auto& [reason, count] : rejected) rej[reason] = count;
  j["outliers_rejected"] = std::move(rej);
  j["clamped_contributions"] = day.token_tvl.clamped_pools;
  j["trusted_pool_share"] = trusted_share_json(day.token_tvl);
  j["duplicate_rows_dropped"] = ds.duplicate_rows_dropped;

  fs::path dir = ensure_out_dir(args.out_dir);
  dexnet::write_text_file(dir / "graph_summary.json", j.dump(2) + "\n");
  return 0;
}

int cmd_stats(const CommonArgs& args) {
  dexnet::Dataset ds = dexnet::load_fixture(args.dataset);
  dexnet::TrustedTokenConfig config = trust_config(args);
  dexnet::Day date = resolve_date(args, ds);
  DayBuild day = build_for_day(ds, config, date);
  const dexnet::LiquidityGraph& g = day.graph;
  fs::path dir = ensure_out_dir(args.out_dir);

  auto dist = dexnet::degree_distribution(g);
  dexnet::write_text_file(dir / "degree_distribution.csv",
                          dexnet::degree_distribution_csv(dist));

  {
    std::vector<double> degrees;
    for (dexnet::NodeId v = 0; v < g.node_count(); ++v)
      if (g.degree_at(v) > 0)
        degrees.push_back(static_cast<double>(g.degree_at(v)));
    try {
      dexnet::FitResult fit = dexnet::fit(degrees, dexnet::FitMode::discrete);
      dexnet::write_text_file(dir / "fit.json", dexnet::fit_json(fit));
    } catch (const dexnet::ArgumentError& e) {
      ordered_json j;
      j["error"] = e.what();
      dexnet::write_text_file(dir / "fit.json", j.dump(2) + "\n");
    }
  }

  dexnet::BetweennessScores scores = dexnet::brandes_scores(g);
  dexnet::write_text_file(
      dir / "betweenness_nodes.csv",
      dexnet::centrality_csv(g, dexnet::node_report(g, scores, true)));
  dexnet::write_text_file(
      dir / "betweenness_edges.csv",
      dexnet::centrality_csv(g, dexnet::edge_report(g, scores, true)));

  {
    dexnet::CoreDecomposition cores = dexnet::core_decomposition(g);
    dexnet::MaxCore max_core = dexnet::max_core_subgraph(g);
    dexnet::write_text_file(dir / "kcore.json",
                            dexnet::kcore_json(cores, max_core));
  }

  dexnet::write_text_file(dir / "components.json",
                          dexnet::components_json(dexnet::components(g)));

  {
    ordered_json j;
    std::vector<double> token_tvl, pool_tvl;
    for (const auto& n : g.nodes()) token_tvl.push_back(n.tvl_usd.to_double());
    for (const auto& e : g.edges()) pool_tvl.push_back(e.tvl_usd.to_double());
    try {
      j["gini_token_tvl"] = dexnet::gini(token_tvl);
      j["gini_pool_tvl"] = dexnet::gini(pool_tvl);
    } catch (const dexnet::ArgumentError& e) {
      j["error"] = e.what();
    }
    dexnet::write_text_file(dir / "gini.json", j.dump(2) + "\n");

    auto tvl_fit = [&](const std::vector<double>& values, const char* filename) {
      std::vector<double> positive;
      for (double v : values)
        if (v > 0) positive.push_back(v);
      try {
        dexnet::FitResult fit = dexnet::fit(positive, dexnet::FitMode::continuous);
        dexnet::write_text_file(dir / filename, dexnet::fit_json(fit));
      } catch (const dexnet::ArgumentError& e) {
        std::cerr << "skipping " << filename << ": " << e.what() << "\n";
      }
    };
    tvl_fit(token_tvl, "fit_token_tvl.json");
    tvl_fit(pool_tvl, "fit_pool_tvl.json");
  }
  return 0;
}

int cmd_evolve(const CommonArgs& args, const std::string& start,
               const std::string& end) {
  dexnet::Dataset ds = dexnet::load_fixture(args.dataset);
  if (ds.pairs.empty()) throw dexnet::ArgumentError("dataset has no pairs");

  dexnet::Day first = 0, last = 0;
  bool found = false;
  for (const auto& p : ds.pairs) {
    dexnet::Day d = dexnet::day_from_unix(p.created_at);
    first = found ? std::min(first, d) : d;
    last = found ? std::max(last, d) : d;
    found = true;
  }
  if (!start.empty()) first = dexnet::parse_day(start);
  if (!end.empty()) last = dexnet::parse_day(end);

  auto snapshots = dexnet::daily_snapshots(ds.pairs, first, last);
  dexnet::EvolutionSeries series = dexnet::evolution_series(snapshots);

  fs::path dir = ensure_out_dir(args.out_dir);
  dexnet::write_text_file(dir / "evolution.csv", dexnet::evolution_csv(series));
  return 0;
}

int cmd_attack(const CommonArgs& args, const std::vector<std::string>& strategies,
               std::int64_t n_remove, const std::vector<std::string>& protect,
               bool recompute) {
  if (strategies.empty()) throw dexnet::ArgumentError("no strategies given");
  dexnet::Dataset ds = dexnet::load_fixture(args.dataset);
  dexnet::TrustedTokenConfig config = trust_config(args);
  dexnet::Day date = resolve_date(args, ds);
  DayBuild day = build_for_day(ds, config, date);
  const dexnet::LiquidityGraph& g = day.graph;

  std::vector<std::string> protected_tokens =
      protect.empty() ? dexnet::kDefaultProtectedTokens : protect;

  std::size_t shielded_present = 0;
  for (const auto& t : std::set<std::string>(protected_tokens.begin(),
                                             protected_tokens.end()))
    if (g.index_of(t)) ++shielded_present;
  const std::size_t eligible = g.node_count() - shielded_present;

  const std::size_t requested =
      n_remove < 0 ? std::min<std::size_t>(1000, eligible)
                   : static_cast<std::size_t>(n_remove);

  std::vector<dexnet::AttackPlan> plans;
  for (const auto& name : strategies) {
    dexnet::AttackPlan plan;
    plan.strategy = dexnet::parse_strategy(name);
    plan.protected_tokens = protected_tokens;
    plan.n_remove = requested;
    plan.seed = dexnet::named_stream(args.seed, "attack/" + name);
    plan.recompute_ranking = recompute;
    plans.push_back(std::move(plan));
  }

  auto traces = dexnet::run_attack_suite(g, plans);

  fs::path dir = ensure_out_dir(args.out_dir);
  std::vector<const dexnet::RemovalTrace*> ordered;
  ordered_json meta;
  for (const auto& name : strategies) {
    const auto& trace = traces.at(dexnet::parse_strategy(name));
    dexnet::write_text_file(dir / ("trace_" + name + ".csv"),
                            dexnet::trace_csv(trace));
    ordered.push_back(&trace);
    ordered_json m;
    m["initial_edges"] = trace.initial_edges;
    m["initial_tvl_usd"] = trace.initial_tvl_usd.str();
    m["steps"] = trace.steps.size();
    meta[name] = std::move(m);
  }
  dexnet::write_text_file(dir / "attack_traces.csv",
                          dexnet::traces_long_csv(ordered));
  dexnet::write_text_file(dir / "attack_meta.json", meta.dump(2) + "\n");
  return 0;
}

int cmd_report(const CommonArgs& args) {
  dexnet::Dataset ds = dexnet::load_fixture(args.dataset);
  dexnet::TrustedTokenConfig config = trust_config(args);
  dexnet::Day date = resolve_date(args, ds);
  DayBuild day = build_for_day(ds, config, date);
  const dexnet::LiquidityGraph& g = day.graph;

  ordered_json j;
  j["as_of"] = dexnet::day_str(date);
  j["nodes"] = g.node_count();
  j["edges"] = g.edge_count();
  j["components"] = dexnet::components(g).count;
  j["average_degree"] = dexnet::average_degree(g);

  dexnet::MaxCore core = dexnet::max_core_subgraph(g);
  ordered_json core_json;
  core_json["k"] = core.k;
  core_json["nodes"] = core.subgraph.node_count();
  core_json["edges"] = core.subgraph.edge_count();
  core_json["average_degree"] = core.subgraph.node_count()
                                    ? dexnet::average_degree(core.subgraph)
                                    : 0.0;
  j["max_core"] = std::move(core_json);

  {
    std::vector<double> token_tvl, pool_tvl;
    for (const auto& n : g.nodes()) token_tvl.push_back(n.tvl_usd.to_double());
    for (const auto& e : g.edges()) pool_tvl.push_back(e.tvl_usd.to_double());
    try {
      j["gini_token_tvl"] = dexnet::gini(token_tvl);
      j["gini_pool_tvl"] = dexnet::gini(pool_tvl);
    } catch (const dexnet::ArgumentError&) {
      j["gini_token_tvl"] = nullptr;
      j["gini_pool_tvl"] = nullptr;
    }
  }

  dexnet::Fixed6 market;
  for (const auto& e : g.edges()) market += e.tvl_usd;
  j["market_tvl_usd"] = market.str();
  j["trusted_pool_share"] = trusted_share_json(day.token_tvl);

  {
    std::vector<double> degrees;
    for (dexnet::NodeId v = 0; v < g.node_count(); ++v)
      if (g.degree_at(v) > 0)
        degrees.push_back(static_cast<double>(g.degree_at(v)));
    try {
      j["degree_fit"] =
          fit_result_json(dexnet::fit(degrees, dexnet::FitMode::discrete));
    } catch (const dexnet::ArgumentError&) {
      j["degree_fit"] = nullptr;
    }
  }

  auto comparison = dexnet::core_periphery_comparison(
      g, dexnet::named_stream(args.seed, "random-reference"));

  fs::path dir = ensure_out_dir(args.out_dir);
  dexnet::write_text_file(dir / "summary.json", j.dump(2) + "\n");
  dexnet::write_text_file(dir / "comparison.csv",
                          dexnet::comparison_csv(comparison));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"token-graph analytics for Uniswap-V2-style pool datasets"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonArgs args;
  dexnet::FetchOptions fetch;
  std::string start_date, end_date;
  std::vector<std::string> strategies = {"tvl", "betweenness", "degree", "random"};
  std::vector<std::string> protect;
  std::int64_t n_remove = -1;
  bool recompute = false;

  auto add_common = [&](CLI::App* cmd, bool needs_dataset = true) {
    if (needs_dataset)
      cmd->add_option("--dataset", args.dataset, "dataset directory (JSON Lines)")
          ->required();
    cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--seed", args.seed, "root seed for all randomness");
    cmd->add_option("--parallel", args.parallel, "worker thread limit")
        ->check(CLI::Range(1, 256));
  };

  CLI::App* ingest = app.add_subcommand("ingest", "fetch a dataset from a subgraph");
  ingest->add_option("--endpoint", fetch.endpoint, "subgraph HTTP endpoint")
      ->envname("DEXNET_SUBGRAPH_URL")
      ->required();
  ingest->add_option("--key", fetch.api_key, "API key (bearer token)")
      ->envname("DEXNET_SUBGRAPH_KEY");
  ingest->add_option("--page-size", fetch.page_size, "records per request (<=1000)");
  ingest->add_option("--start", start_date, "first day, YYYY-MM-DD")->required();
  ingest->add_option("--end", end_date, "last day, YYYY-MM-DD")->required();
  add_common(ingest, false);

  CLI::App* build = app.add_subcommand("build", "build one day's token graph");
  build->add_option("--date", args.date, "as-of day (default: latest sampled)");
  add_common(build);
  add_trust_flags(build, args);

  CLI::App* stats = app.add_subcommand("stats", "static network metrics for one day");
  stats->add_option("--date", args.date, "as-of day (default: latest sampled)");
  add_common(stats);
  add_trust_flags(stats, args);

  CLI::App* evolve = app.add_subcommand("evolve", "daily evolution series");
  evolve->add_option("--start", start_date, "first day (default: first pair)");
  evolve->add_option("--end", end_date, "last day (default: last pair)");
  add_common(evolve);

  CLI::App* attack = app.add_subcommand("attack", "token-collapse simulation");
  attack->add_option("--date", args.date, "as-of day (default: latest sampled)");
  attack->add_option("--strategies", strategies, "removal strategies")
      ->delimiter(',');
  attack->add_option("--n", n_remove, "tokens to remove (default min(1000, eligible))");
  attack->add_option("--protect", protect, "protected token addresses")
      ->delimiter(',');
  attack->add_flag("--recompute", recompute, "re-rank after every removal");
  add_common(attack);
  add_trust_flags(attack, args);

  CLI::App* report = app.add_subcommand("report", "summary and random-reference table");
  report->add_option("--date", args.date, "as-of day (default: latest sampled)");
  add_common(report);
  add_trust_flags(report, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  apply_parallelism(args.parallel);

  try {
    if (ingest->parsed()) return cmd_ingest(args, fetch, start_date, end_date);
    if (build->parsed()) return cmd_build(args);
    if (stats->parsed()) return cmd_stats(args);
    if (evolve->parsed()) return cmd_evolve(args, start_date, end_date);
    if (attack->parsed())
      return cmd_attack(args, strategies, n_remove, protect, recompute);
    if (report->parsed()) return cmd_report(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
