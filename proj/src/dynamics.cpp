#include "dexnet/dynamics.hpp"

#include <algorithm>

#include "dexnet/errors.hpp"
#include "dexnet/metrics.hpp"
#include "dexnet/powerlaw.hpp"

namespace dexnet {

std::vector<LiquidityGraph> daily_snapshots(
    const std::vector<PairRecord>& pairs, Day start, Day end,
    std::span<const PairDaySample> pair_days) {
  if (start > end)
    throw ArgumentError("snapshot range is empty: " + day_str(start) + " > " +
                        day_str(end));

  std::vector<const PairRecord*> sorted;
  sorted.reserve(pairs.size());
  for (const auto& p : pairs) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(),
            [](const PairRecord* a, const PairRecord* b) {
              return a->created_at < b->created_at;
            });

  std::map<Day, std::unordered_map<std::string, Fixed6>> tvl_by_day;
  for (const auto& s : pair_days)
    tvl_by_day[s.date][s.pair_address] = s.reserve_usd;

  static const std::unordered_map<std::string, Fixed6> kNoTvl;
  static const std::unordered_map<std::string, TokenRecord> kNoMeta;

  std::vector<LiquidityGraph> snapshots;
  snapshots.reserve(static_cast<std::size_t>(end - start + 1));
  std::vector<PairRecord> included;
  std::size_t next = 0;
  for (Day d = start; d <= end; ++d) {
    const std::int64_t cutoff = day_end_unix(d);
    while (next < sorted.size() && sorted[next]->created_at <= cutoff)
      included.push_back(*sorted[next++]);
    auto tvl = tvl_by_day.find(d);
    snapshots.push_back(build_graph(
        included, tvl == tvl_by_day.end() ? kNoTvl : tvl->second, kNoTvl,
        kNoMeta, d));
  }
  return snapshots;
}

namespace {

EvolutionRow row_for_snapshot(const LiquidityGraph& g) {
  EvolutionRow row;
  row.date = g.as_of();
  row.nodes = g.node_count();
  row.edges = g.edge_count();
  try {
    ComponentSummary comp = components(g);
    row.component_count = comp.count;
    if (g.node_count() == 0) {
      row.error = "empty graph";
      return row;
    }
    row.average_degree = average_degree(g);

    CoreDecomposition cores = core_decomposition(g);
    row.max_k = cores.max_k;
    std::vector<NodeId> core_nodes;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (cores.core_number[v] >= cores.max_k) core_nodes.push_back(v);
    row.kcore_size = core_nodes.size();
    row.kcore_node_ratio = static_cast<double>(row.kcore_size) /
                           static_cast<double>(row.nodes);
    std::size_t core_edges = 0;
    for (const auto& e : g.edges())
      if (cores.core_number[e.a] >= cores.max_k &&
          cores.core_number[e.b] >= cores.max_k)
        ++core_edges;
    row.kcore_average_degree =
        row.kcore_size ? 2.0 * static_cast<double>(core_edges) /
                             static_cast<double>(row.kcore_size)
                       : 0.0;

    // Daily alpha: discrete fit over positive degrees, cut-off re-selected
    // each day. Days that cannot satisfy the fit preconditions simply leave
    // alpha absent.
    std::vector<double> degrees;
    degrees.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (g.degree_at(v) > 0)
        degrees.push_back(static_cast<double>(g.degree_at(v)));
    if (degrees.size() >= 10) {
      try {
        row.alpha = fit(degrees, FitMode::discrete).alpha;
      } catch (const ArgumentError&) {
        row.alpha.reset();
      }
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

EvolutionSeries evolution_series(std::span<const LiquidityGraph> snapshots) {
  if (snapshots.empty())
    throw ArgumentError("evolution series needs at least one snapshot");

  EvolutionSeries series;
  series.rows.resize(snapshots.size());
  const auto count = static_cast<std::int64_t>(snapshots.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i)
    series.rows[static_cast<std::size_t>(i)] =
        row_for_snapshot(snapshots[static_cast<std::size_t>(i)]);
  return series;
}

}  // namespace dexnet
