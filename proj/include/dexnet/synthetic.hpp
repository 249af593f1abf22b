#pragma once

#include <cstdint>
#include <string>

#include "dexnet/graph.hpp"
#include "dexnet/types.hpp"

namespace dexnet {

// Preferential-attachment (Barabasi-Albert) graph: starts from a small
// clique and attaches each new node to `edges_per_node` distinct existing
// nodes with probability proportional to degree. Used for scale-free test
// fixtures and benchmarks.
LiquidityGraph preferential_attachment(std::size_t n, std::size_t edges_per_node,
                                       std::uint64_t seed);

// Assigns deterministic pseudo-random edge TVLs (log-uniform across
// `decades` orders of magnitude) and node TVLs equal to the sum of incident
// edge TVLs, mimicking how pool value concentrates on hubs.
LiquidityGraph with_synthetic_tvl(const LiquidityGraph& g, std::uint64_t seed,
                                  int decades = 6);

// Schema-faithful synthetic dataset: `n_pairs` pools over a trusted-token
// backbone plus a long tail of minor tokens, day samples and trusted-token
// prices for a few sample dates, and a couple of deliberate outliers. The
// bundled fixtures/small dataset is this generator's output.
struct FixtureFiles {
  std::string pairs_jsonl;
  std::string pair_days_jsonl;
  std::string token_days_jsonl;
  std::string reference_prices_csv;
};

FixtureFiles make_fixture_dataset(std::size_t n_pairs, std::uint64_t seed);

}  // namespace dexnet
