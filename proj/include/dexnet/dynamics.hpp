#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dexnet/graph.hpp"

namespace dexnet {

// One topology snapshot per day in [start, end]; the snapshot for day d
// holds every pair created up to the end of d. Days without new pairs
// repeat the previous topology. TVL attributes are not attached by default
// (the daily statistics are topological); passing pair-day samples joins
// each day's pool TVL onto its snapshot's edges.
std::vector<LiquidityGraph> daily_snapshots(
    const std::vector<PairRecord>& pairs, Day start, Day end,
    std::span<const PairDaySample> pair_days = {});

struct EvolutionRow {
  Day date = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t component_count = 0;
  double average_degree = 0;
  std::optional<double> alpha;  // absent when the day's degree fit can't run
  std::uint32_t max_k = 0;
  std::size_t kcore_size = 0;
  double kcore_average_degree = 0;
  double kcore_node_ratio = 0;
  std::optional<std::string> error;  // row-level failure, series continues
};

struct EvolutionSeries {
  std::vector<EvolutionRow> rows;  // dates strictly increasing
};

// Per-snapshot statistics; rows are independent and computed in parallel.
// Throws ArgumentError on an empty snapshot collection.
EvolutionSeries evolution_series(std::span<const LiquidityGraph> snapshots);

}  // namespace dexnet
