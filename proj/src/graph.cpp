#include "dexnet/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "dexnet/errors.hpp"

namespace dexnet {

LiquidityGraph::LiquidityGraph(std::vector<GraphNode> nodes,
                               std::vector<GraphEdge> edges, Day as_of)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), as_of_(as_of) {
  for (auto& e : edges_)
    if (e.a > e.b) std::swap(e.a, e.b);
  std::sort(edges_.begin(), edges_.end(),
            [](const GraphEdge& x, const GraphEdge& y) {
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });
  index_.reserve(nodes_.size());
  for (NodeId v = 0; v < nodes_.size(); ++v) index_.emplace(nodes_[v].address, v);
  build_adjacency();
}

void LiquidityGraph::build_adjacency() {
  offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.a + 1];
    ++offsets_[e.b + 1];
  }
  for (std::size_t v = 1; v <= nodes_.size(); ++v) offsets_[v] += offsets_[v - 1];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    adjacency_[cursor[edges_[e].a]++] = {edges_[e].b, e};
    adjacency_[cursor[edges_[e].b]++] = {edges_[e].a, e};
  }
}

std::optional<NodeId> LiquidityGraph::index_of(std::string_view address) const {
  auto it = index_.find(std::string(address));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t LiquidityGraph::degree(std::string_view address) const {
  auto v = index_of(address);
  if (!v) throw NotFoundError("unknown token: " + std::string(address));
  return degree_at(*v);
}

LiquidityGraph LiquidityGraph::induced(std::span<const NodeId> keep) const {
  std::vector<NodeId> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<NodeId> remap(nodes_.size(), static_cast<NodeId>(-1));
  std::vector<GraphNode> sub_nodes;
  sub_nodes.reserve(sorted.size());
  for (NodeId v : sorted) {
    remap[v] = static_cast<NodeId>(sub_nodes.size());
    sub_nodes.push_back(nodes_[v]);
  }
  std::vector<GraphEdge> sub_edges;
  for (const auto& e : edges_) {
    if (remap[e.a] != static_cast<NodeId>(-1) &&
        remap[e.b] != static_cast<NodeId>(-1)) {
      GraphEdge copy = e;
      copy.a = remap[e.a];
      copy.b = remap[e.b];
      sub_edges.push_back(std::move(copy));
    }
  }
  return LiquidityGraph(std::move(sub_nodes), std::move(sub_edges), as_of_);
}

LiquidityGraph build_graph(
    const std::vector<PairRecord>& pairs,
    const std::unordered_map<std::string, Fixed6>& pool_tvl,
    const std::unordered_map<std::string, Fixed6>& token_tvl,
    const std::unordered_map<std::string, TokenRecord>& token_meta,
    Day as_of) {
  const std::int64_t cutoff = day_end_unix(as_of);

  std::vector<const PairRecord*> included;
  included.reserve(pairs.size());
  for (const auto& p : pairs)
    if (p.created_at <= cutoff) included.push_back(&p);

  std::vector<std::string> addresses;
  addresses.reserve(2 * included.size());
  for (const auto* p : included) {
    if (p->token0 == p->token1)
      throw DataIntegrityError("self-loop pair " + p->pair_address);
    addresses.push_back(p->token0);
    addresses.push_back(p->token1);
  }
  std::sort(addresses.begin(), addresses.end());
  addresses.erase(std::unique(addresses.begin(), addresses.end()), addresses.end());

  std::unordered_map<std::string, NodeId> index;
  index.reserve(addresses.size());
  std::vector<GraphNode> nodes;
  nodes.reserve(addresses.size());
  for (auto& addr : addresses) {
    GraphNode n;
    n.address = addr;
    if (auto it = token_meta.find(addr); it != token_meta.end())
      n.symbol = it->second.symbol;
    if (auto it = token_tvl.find(addr); it != token_tvl.end()) {
      if (it->second.is_negative())
        throw ArgumentError("negative token TVL for " + addr);
      n.tvl_usd = it->second;
    }
    index.emplace(addr, static_cast<NodeId>(nodes.size()));
    nodes.push_back(std::move(n));
  }

  std::map<std::pair<NodeId, NodeId>, const PairRecord*> seen;
  std::vector<GraphEdge> edges;
  edges.reserve(included.size());
  for (const auto* p : included) {
    NodeId a = index.at(p->token0);
    NodeId b = index.at(p->token1);
    if (a > b) std::swap(a, b);
    auto [it, fresh] = seen.emplace(std::make_pair(a, b), p);
    if (!fresh)
      throw DataIntegrityError("pairs " + it->second->pair_address + " and " +
                               p->pair_address +
                               " cover the same token pair");
    GraphEdge e;
    e.a = a;
    e.b = b;
    e.pair_address = p->pair_address;
    e.created_at = p->created_at;
    if (auto t = pool_tvl.find(p->pair_address); t != pool_tvl.end()) {
      if (t->second.is_negative())
        throw ArgumentError("negative pool TVL for " + p->pair_address);
      e.tvl_usd = t->second;
    }
    edges.push_back(std::move(e));
  }

  return LiquidityGraph(std::move(nodes), std::move(edges), as_of);
}

std::string synthetic_token_address(std::size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "0x%040zx", index);
  return buf;
}

std::string synthetic_pair_address(std::size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "0xf%039zx", index);
  return buf;
}

LiquidityGraph graph_from_index_edges(
    std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges, Day as_of) {
  std::vector<GraphNode> nodes(n);
  for (std::size_t i = 0; i < n; ++i)
    nodes[i].address = synthetic_token_address(i);
  std::vector<GraphEdge> graph_edges;
  graph_edges.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    GraphEdge e;
    e.a = edges[i].first;
    e.b = edges[i].second;
    e.pair_address = synthetic_pair_address(i);
    graph_edges.push_back(std::move(e));
  }
  return LiquidityGraph(std::move(nodes), std::move(graph_edges), as_of);
}

}  // namespace dexnet
