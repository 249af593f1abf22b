#include "dexnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dexnet/errors.hpp"
#include "dexnet/rng.hpp"

namespace dexnet {

std::map<std::uint32_t, std::size_t> degree_distribution(const LiquidityGraph& g) {
  std::map<std::uint32_t, std::size_t> dist;
  for (NodeId v = 0; v < g.node_count(); ++v) ++dist[g.degree_at(v)];
  return dist;
}

double average_degree(const LiquidityGraph& g) {
  if (g.node_count() == 0)
    throw ArgumentError("average degree of an empty graph is undefined");
  return 2.0 * static_cast<double>(g.edge_count()) /
         static_cast<double>(g.node_count());
}

UnionFind::UnionFind(std::size_t n)
    : parent_(n), rank_(n, 0), components_(n) {
  for (std::size_t v = 0; v < n; ++v) parent_[v] = static_cast<NodeId>(v);
}

NodeId UnionFind::find(NodeId v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];  // path halving
    v = parent_[v];
  }
  return v;
}

bool UnionFind::unite(NodeId a, NodeId b) {
  NodeId ra = find(a), rb = find(b);
  if (ra == rb) return false;
  if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  if (rank_[ra] == rank_[rb]) ++rank_[ra];
  --components_;
  return true;
}

ComponentSummary components(const LiquidityGraph& g) {
  UnionFind uf(g.node_count());
  for (const auto& e : g.edges()) uf.unite(e.a, e.b);

  std::vector<std::size_t> size_by_root(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) ++size_by_root[uf.find(v)];

  ComponentSummary out;
  out.count = uf.component_count();
  for (std::size_t s : size_by_root)
    if (s > 0) out.sizes.push_back(s);
  std::sort(out.sizes.rbegin(), out.sizes.rend());
  return out;
}

CoreDecomposition core_decomposition(const LiquidityGraph& g) {
  const std::size_t n = g.node_count();
  CoreDecomposition out;
  out.core_number.assign(n, 0);
  if (n == 0) {
    out.k_group_sizes = {0};
    return out;
  }

  std::vector<std::uint32_t> degree(n);
  std::uint32_t max_degree = 0;
  for (NodeId v = 0; v < n; ++v) {
    degree[v] = g.degree_at(v);
    max_degree = std::max(max_degree, degree[v]);
  }

  // Nodes bucketed by current degree, peeled in ascending order.
  std::vector<std::size_t> bin(max_degree + 2, 0);
  for (NodeId v = 0; v < n; ++v) ++bin[degree[v]];
  std::size_t start = 0;
  for (std::uint32_t d = 0; d <= max_degree; ++d) {
    std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> position(n);
  for (NodeId v = 0; v < n; ++v) {
    position[v] = bin[degree[v]];
    order[position[v]] = v;
    ++bin[degree[v]];
  }
  for (std::uint32_t d = max_degree; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = order[i];
    out.core_number[v] = degree[v];
    for (const auto& adj : g.neighbors(v)) {
      NodeId w = adj.neighbor;
      if (degree[w] > degree[v]) {
        // Move w to the front of its bucket, then shrink its degree.
        std::uint32_t dw = degree[w];
        std::size_t pw = position[w];
        std::size_t pfirst = bin[dw];
        NodeId first = order[pfirst];
        if (first != w) {
          std::swap(order[pfirst], order[pw]);
          position[w] = pfirst;
          position[first] = pw;
        }
        ++bin[dw];
        --degree[w];
      }
    }
  }

  out.max_k = *std::max_element(out.core_number.begin(), out.core_number.end());
  out.k_group_sizes.assign(out.max_k + 1, 0);
  for (NodeId v = 0; v < n; ++v)
    for (std::uint32_t k = 0; k <= out.core_number[v]; ++k)
      ++out.k_group_sizes[k];
  return out;
}

MaxCore max_core_subgraph(const LiquidityGraph& g) {
  if (g.node_count() == 0)
    throw ArgumentError("max core of an empty graph is undefined");
  CoreDecomposition cores = core_decomposition(g);
  std::vector<NodeId> keep;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (cores.core_number[v] >= cores.max_k) keep.push_back(v);
  return {cores.max_k, g.induced(keep)};
}

double gini(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("gini of an empty sample is undefined");
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values) {
    if (v < 0) throw ArgumentError("gini requires non-negative values");
    sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());

  // G = sum_i (2i - n - 1) x_(i) / (n * sum x), x sorted ascending, i from 1.
  const double n = static_cast<double>(sorted.size());
  double total = 0.0, weighted = 0.0;
  double c_total = 0.0, c_weighted = 0.0;  // Neumaier compensation
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double x = sorted[i];
    double t = total + x;
    c_total += std::abs(total) >= std::abs(x) ? (total - t) + x : (x - t) + total;
    total = t;
    double wx = (2.0 * static_cast<double>(i + 1) - n - 1.0) * x;
    double w = weighted + wx;
    c_weighted +=
        std::abs(weighted) >= std::abs(wx) ? (weighted - w) + wx : (wx - w) + weighted;
    weighted = w;
  }
  total += c_total;
  weighted += c_weighted;
  if (!(total > 0.0)) throw ArgumentError("gini of an all-zero sample is undefined");
  return weighted / (n * total);
}

LiquidityGraph random_reference(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 && m > 0) throw ArgumentError("edges require at least one node");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (m > max_edges)
    throw ArgumentError("too many edges: " + std::to_string(m) + " > n(n-1)/2 = " +
                        std::to_string(max_edges));

  Rng rng(seed);
  std::unordered_set<std::uint64_t> used;
  used.reserve(m * 2);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    auto u = static_cast<NodeId>(rng.bounded(n));
    auto v = static_cast<NodeId>(rng.bounded(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    if (used.insert(key).second) edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  return graph_from_index_edges(n, edges);
}

std::vector<ComparisonRow> core_periphery_comparison(const LiquidityGraph& g,
                                                     std::uint64_t seed) {
  if (g.node_count() == 0)
    throw ArgumentError("comparison of an empty graph is undefined");

  LiquidityGraph random_graph =
      random_reference(g.node_count(), g.edge_count(), seed);

  auto summarize = [](const LiquidityGraph& graph) {
    MaxCore core = max_core_subgraph(graph);
    double core_avg_degree =
        core.subgraph.node_count() ? average_degree(core.subgraph) : 0.0;
    return std::tuple<double, double, double, double, double>{
        static_cast<double>(graph.node_count()), average_degree(graph),
        static_cast<double>(core.k),
        static_cast<double>(core.subgraph.node_count()), core_avg_degree};
  };

  auto [on, oavg, ok, osize, ocore] = summarize(g);
  auto [rn, ravg, rk, rsize, rcore] = summarize(random_graph);
  return {
      {"node_count", on, rn},
      {"average_degree", oavg, ravg},
      {"max_k", ok, rk},
      {"kcore_group_size", osize, rsize},
      {"kcore_average_degree", ocore, rcore},
  };
}

}  // namespace dexnet
