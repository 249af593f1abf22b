#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dexnet/types.hpp"

namespace dexnet {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct GraphNode {
  std::string address;
  std::string symbol;
  Fixed6 tvl_usd;
};

struct GraphEdge {
  NodeId a = 0;  // a < b (node-index order)
  NodeId b = 0;
  std::string pair_address;
  Fixed6 tvl_usd;
  std::int64_t created_at = 0;
};

struct AdjEntry {
  NodeId neighbor;
  EdgeId edge;
};

// Simple undirected token graph, immutable after construction. Nodes are
// sorted by address and edges by endpoint indices, so identical inputs
// always produce an identical graph.
class LiquidityGraph {
 public:
  LiquidityGraph() = default;

  // Construction from validated parts; `nodes` must be address-sorted and
  // edge endpoints must refer to them. Used by build_graph and generators.
  LiquidityGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges,
                 Day as_of);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Day as_of() const { return as_of_; }

  const GraphNode& node(NodeId v) const { return nodes_[v]; }
  const GraphEdge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const GraphNode> nodes() const { return nodes_; }
  std::span<const GraphEdge> edges() const { return edges_; }

  std::optional<NodeId> index_of(std::string_view address) const;

  std::span<const AdjEntry> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::uint32_t degree_at(NodeId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  // Eq.-style degree lookup by token address; throws NotFoundError.
  std::uint32_t degree(std::string_view address) const;

  // Induced subgraph on the given node ids (attributes preserved).
  LiquidityGraph induced(std::span<const NodeId> keep) const;

 private:
  void build_adjacency();

  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<AdjEntry> adjacency_;
  std::unordered_map<std::string, NodeId> index_;
  Day as_of_ = 0;
};

// Assembles the token graph for one day: one node per distinct token seen in
// a pair created up to the end of `as_of`, one edge per such pair. Missing
// TVL entries default to 0. Throws DataIntegrityError on self-loop pairs or
// two pairs covering the same unordered token pair.
LiquidityGraph build_graph(
    const std::vector<PairRecord>& pairs,
    const std::unordered_map<std::string, Fixed6>& pool_tvl,
    const std::unordered_map<std::string, Fixed6>& token_tvl,
    const std::unordered_map<std::string, TokenRecord>& token_meta,
    Day as_of);

// Graph over synthetic addresses from an index edge list; fixture and
// generator helper. Node count is `n`; edges are (u,v) index pairs.
LiquidityGraph graph_from_index_edges(
    std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
    Day as_of = 0);

std::string synthetic_token_address(std::size_t index);
std::string synthetic_pair_address(std::size_t index);

}  // namespace dexnet
