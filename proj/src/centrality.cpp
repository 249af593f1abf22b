#include "dexnet/centrality.hpp"

#include <algorithm>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dexnet {

namespace {

constexpr std::size_t kSourceChunk = 64;
constexpr double kScoreClamp = 1e-12;

// Workspace for one BFS + dependency accumulation pass.
struct BrandesWorkspace {
  std::vector<std::int32_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<NodeId> queue;  // doubles as the visit order

  explicit BrandesWorkspace(std::size_t n)
      : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) {
    queue.reserve(n);
  }
};

// One source: forward BFS counting shortest paths, then backward sweep
// accumulating node and edge dependencies into `node_acc` / `edge_acc`.
// Predecessors are not stored; they are the neighbors one level closer.
void accumulate_from_source(const LiquidityGraph& g, NodeId s,
                            BrandesWorkspace& ws, double* node_acc,
                            double* edge_acc) {
  ws.queue.clear();
  ws.queue.push_back(s);
  ws.dist[s] = 0;
  ws.sigma[s] = 1.0;

  std::size_t head = 0;
  while (head < ws.queue.size()) {
    NodeId v = ws.queue[head++];
    for (const auto& adj : g.neighbors(v)) {
      NodeId w = adj.neighbor;
      if (ws.dist[w] < 0) {
        ws.dist[w] = ws.dist[v] + 1;
        ws.queue.push_back(w);
      }
      if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
    }
  }

  // Backward over the BFS order.
  for (std::size_t i = ws.queue.size(); i-- > 1;) {
    NodeId w = ws.queue[i];
    double coeff = (1.0 + ws.delta[w]) / ws.sigma[w];
    for (const auto& adj : g.neighbors(w)) {
      NodeId v = adj.neighbor;
      if (ws.dist[v] + 1 == ws.dist[w]) {
        double c = ws.sigma[v] * coeff;
        edge_acc[adj.edge] += c;
        ws.delta[v] += c;
      }
    }
    node_acc[w] += ws.delta[w];
  }

  // Reset touched entries only.
  for (NodeId v : ws.queue) {
    ws.dist[v] = -1;
    ws.sigma[v] = 0.0;
    ws.delta[v] = 0.0;
  }
}

}  // namespace

BetweennessScores brandes_scores_serial(const LiquidityGraph& g) {
  const std::size_t n = g.node_count(), m = g.edge_count();
  BetweennessScores out;
  out.node.assign(n, 0.0);
  out.edge.assign(m, 0.0);
  BrandesWorkspace ws(n);
  for (NodeId s = 0; s < n; ++s)
    accumulate_from_source(g, s, ws, out.node.data(), out.edge.data());
  return out;
}

BetweennessScores brandes_scores(const LiquidityGraph& g) {
  const std::size_t n = g.node_count(), m = g.edge_count();
  BetweennessScores out;
  out.node.assign(n, 0.0);
  out.edge.assign(m, 0.0);
  if (n == 0) return out;

  const std::size_t chunks = (n + kSourceChunk - 1) / kSourceChunk;

#pragma omp parallel
  {
    BrandesWorkspace ws(n);
    std::vector<double> node_part(n), edge_part(m);
#pragma omp for ordered schedule(dynamic, 1)
    for (std::size_t c = 0; c < chunks; ++c) {
      std::fill(node_part.begin(), node_part.end(), 0.0);
      std::fill(edge_part.begin(), edge_part.end(), 0.0);
      const NodeId lo = static_cast<NodeId>(c * kSourceChunk);
      const NodeId hi =
          static_cast<NodeId>(std::min(n, (c + 1) * kSourceChunk));
      for (NodeId s = lo; s < hi; ++s)
        accumulate_from_source(g, s, ws, node_part.data(), edge_part.data());
// Merging in chunk order keeps the floating-point sums identical for
// any thread count.
#pragma omp ordered
      {
        for (std::size_t v = 0; v < n; ++v) out.node[v] += node_part[v];
        for (std::size_t e = 0; e < m; ++e) out.edge[e] += edge_part[e];
      }
    }
  }
  return out;
}

CentralityReport node_report(const LiquidityGraph& g, const BetweennessScores& s,
                             bool normalized) {
  const double n = static_cast<double>(g.node_count());
  CentralityReport report;
  report.kind = CentralityReport::Kind::node;
  report.normalized = normalized;
  report.scores.assign(s.node.begin(), s.node.end());
  // Raw sums count each unordered pair twice.
  double scale = 0.5;
  if (normalized) {
    const double pairs = (n - 1.0) * (n - 2.0) / 2.0;
    scale = pairs > 0.0 ? 0.5 / pairs : 0.0;
  }
  for (double& v : report.scores) v *= scale;
  return report;
}

CentralityReport edge_report(const LiquidityGraph& g, const BetweennessScores& s,
                             bool normalized) {
  const double n = static_cast<double>(g.node_count());
  CentralityReport report;
  report.kind = CentralityReport::Kind::edge;
  report.normalized = normalized;
  report.scores.assign(s.edge.begin(), s.edge.end());
  double scale = 0.5;
  if (normalized) {
    const double pairs = n * (n - 1.0) / 2.0;
    scale = pairs > 0.0 ? 0.5 / pairs : 0.0;
  }
  for (double& v : report.scores) v *= scale;
  return report;
}

CentralityReport node_betweenness(const LiquidityGraph& g, bool normalized) {
  return node_report(g, brandes_scores(g), normalized);
}

CentralityReport edge_betweenness(const LiquidityGraph& g, bool normalized) {
  return edge_report(g, brandes_scores(g), normalized);
}

std::string edge_pair_id(const LiquidityGraph& g, EdgeId e) {
  const auto& edge = g.edge(e);
  const std::string& a = g.node(edge.a).address;
  const std::string& b = g.node(edge.b).address;
  return a <= b ? a + ":" + b : b + ":" + a;
}

std::vector<RankedScore> ranked_entries(const LiquidityGraph& g,
                                        const CentralityReport& report) {
  std::vector<RankedScore> out;
  out.reserve(report.scores.size());
  const bool nodes = report.kind == CentralityReport::Kind::node;
  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    double score = report.scores[i];
    if (score < kScoreClamp) score = 0.0;
    out.push_back({nodes ? g.node(static_cast<NodeId>(i)).address
                         : edge_pair_id(g, static_cast<EdgeId>(i)),
                   score});
  }
  std::sort(out.begin(), out.end(), [](const RankedScore& x, const RankedScore& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.id < y.id;
  });
  return out;
}

}  // namespace dexnet
