#pragma once

#include <string>
#include <vector>

#include "dexnet/graph.hpp"

namespace dexnet {

// Raw Brandes accumulations, summed over ordered source/target pairs
// (each unordered pair counted twice). Shortest paths are unweighted.
struct BetweennessScores {
  std::vector<double> node;  // by node id
  std::vector<double> edge;  // by edge id
};

// OpenMP kernel: sources are processed in fixed-size chunks and partial
// scores merged in chunk order, so the result is bit-identical for any
// thread count.
BetweennessScores brandes_scores(const LiquidityGraph& g);

// Single-threaded reference implementation, kept for tests and benchmarks.
BetweennessScores brandes_scores_serial(const LiquidityGraph& g);

struct CentralityReport {
  enum class Kind { node, edge };
  Kind kind = Kind::node;
  bool normalized = false;
  std::vector<double> scores;  // by node id (Kind::node) or edge id
};

// Per-node C_B; normalization divides by (n-1)(n-2)/2 with n the node count
// of the whole graph. Graphs with fewer than 3 nodes report all zeros when
// normalized.
CentralityReport node_betweenness(const LiquidityGraph& g, bool normalized);
// Per-edge C_B; normalization divisor n(n-1)/2.
CentralityReport edge_betweenness(const LiquidityGraph& g, bool normalized);

// Same reports derived from precomputed raw scores (one Brandes pass can
// feed all four reports).
CentralityReport node_report(const LiquidityGraph& g, const BetweennessScores& s,
                             bool normalized);
CentralityReport edge_report(const LiquidityGraph& g, const BetweennessScores& s,
                             bool normalized);

struct RankedScore {
  std::string id;  // token address, or "low:high" address pair for edges
  double score = 0;
};

// Entries sorted by score descending, ties by id ascending. Scores below
// 1e-12 are clamped to zero.
std::vector<RankedScore> ranked_entries(const LiquidityGraph& g,
                                        const CentralityReport& report);

std::string edge_pair_id(const LiquidityGraph& g, EdgeId e);

}  // namespace dexnet
