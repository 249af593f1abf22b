#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dexnet/graph.hpp"

namespace dexnet {

// degree -> number of nodes with that degree.
std::map<std::uint32_t, std::size_t> degree_distribution(const LiquidityGraph& g);

// 2E/N; throws ArgumentError on an empty graph.
double average_degree(const LiquidityGraph& g);

struct ComponentSummary {
  std::size_t count = 0;
  std::vector<std::size_t> sizes;  // descending; isolated nodes count as size 1
};
ComponentSummary components(const LiquidityGraph& g);

// Incremental component counter over a fixed node set (union by rank with
// path halving). Used by the daily-evolution consistency checks.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  NodeId find(NodeId v);
  bool unite(NodeId a, NodeId b);  // true when two components merged
  std::size_t component_count() const { return components_; }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::uint8_t> rank_;
  std::size_t components_;
};

struct CoreDecomposition {
  std::vector<std::uint32_t> core_number;  // by node id
  std::uint32_t max_k = 0;
  // k_group_sizes[k] = number of nodes with core number >= k, k in [0, max_k].
  std::vector<std::size_t> k_group_sizes;
};

// Batagelj-Zaversnik bucket peeling, O(N + E).
CoreDecomposition core_decomposition(const LiquidityGraph& g);

struct MaxCore {
  std::uint32_t k = 0;
  LiquidityGraph subgraph;
};

// Induced subgraph on the nodes with the highest core number; every node in
// it has induced degree >= k. Throws ArgumentError on an empty graph.
MaxCore max_core_subgraph(const LiquidityGraph& g);

// Gini coefficient of a non-negative sample, in [0, 1). Computed with the
// sorted rank identity; equals the pairwise |xi-xj| definition. Throws
// ArgumentError when the input is empty or sums to zero.
double gini(std::span<const double> values);

// Uniform simple random graph with exactly n nodes and m edges (rejection
// sampling over unordered pairs). Deterministic for a fixed seed.
LiquidityGraph random_reference(std::size_t n, std::size_t m, std::uint64_t seed);

struct ComparisonRow {
  std::string metric;
  double observed = 0;
  double random_value = 0;
};

// Observed graph vs. a size-matched random graph: node count, average
// degree, max core k, core group size, core group average degree.
std::vector<ComparisonRow> core_periphery_comparison(const LiquidityGraph& g,
                                                     std::uint64_t seed);

}  // namespace dexnet
