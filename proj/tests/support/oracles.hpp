#pragma once

// Independent reference implementations used to check the library kernels.
// These stay deliberately naive: explicit path enumeration, repeated
// peeling, BFS flood fill, the O(n^2) pairwise Gini, and from-scratch
// recomputation of attack damage.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dexnet/graph.hpp"

namespace oracles {

struct BruteBetweenness {
  std::vector<double> node;  // unnormalized, unordered pairs counted once
  std::vector<double> edge;
};

// Enumerates every shortest path of every unordered pair.
BruteBetweenness brute_betweenness(const dexnet::LiquidityGraph& g);

// Sum over connected unordered pairs of their shortest-path length.
double total_pairwise_distance(const dexnet::LiquidityGraph& g);

// Core numbers by repeated minimum-degree peeling.
std::vector<std::uint32_t> peeling_core_numbers(const dexnet::LiquidityGraph& g);

struct ComponentCounts {
  std::size_t count = 0;
  std::vector<std::size_t> sizes;  // descending
};

ComponentCounts bfs_components(const dexnet::LiquidityGraph& g);

long double gini_double_sum(std::span<const double> values);

struct DamageSnapshot {
  std::size_t edges_remaining = 0;
  std::size_t component_count = 0;
  dexnet::Fixed6 tvl_lost;
};

// Damage after deleting `removed` tokens, recomputed from the surviving
// subgraph alone.
DamageSnapshot recompute_damage(const dexnet::LiquidityGraph& g,
                                std::span<const std::string> removed);

// Seeded G(n, m)-style test graph (our own sampling, separate from the
// library's generator).
dexnet::LiquidityGraph random_test_graph(std::size_t n, std::size_t m,
                                         std::uint64_t seed);

}  // namespace oracles
