#include "dexnet/robustness.hpp"

#include <algorithm>
#include <set>

#include "dexnet/centrality.hpp"
#include "dexnet/errors.hpp"
#include "dexnet/metrics.hpp"
#include "dexnet/rng.hpp"

namespace dexnet {

std::string strategy_str(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::tvl: return "tvl";
    case AttackStrategy::betweenness: return "betweenness";
    case AttackStrategy::degree: return "degree";
    case AttackStrategy::random: return "random";
  }
  return "?";
}

AttackStrategy parse_strategy(const std::string& name) {
  if (name == "tvl") return AttackStrategy::tvl;
  if (name == "betweenness") return AttackStrategy::betweenness;
  if (name == "degree") return AttackStrategy::degree;
  if (name == "random") return AttackStrategy::random;
  throw ArgumentError("unknown removal strategy: " + name);
}

namespace {

std::vector<NodeId> eligible_nodes(const LiquidityGraph& g,
                                   const std::vector<std::string>& protected_tokens) {
  std::set<std::string> shielded(protected_tokens.begin(), protected_tokens.end());
  std::vector<NodeId> out;
  out.reserve(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!shielded.count(g.node(v).address)) out.push_back(v);
  return out;
}

// Descending by key, ties by ascending address (nodes are address-sorted,
// so node-id order is address order).
template <typename Key>
void rank_by(std::vector<NodeId>& nodes, const Key& key) {
  std::stable_sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
    return key(a) > key(b);
  });
}

}  // namespace

std::vector<std::string> rank_tokens(const LiquidityGraph& g,
                                     AttackStrategy strategy,
                                     const std::vector<std::string>& protected_tokens,
                                     std::uint64_t seed) {
  if (g.node_count() == 0) throw ArgumentError("cannot rank an empty graph");
  std::vector<NodeId> nodes = eligible_nodes(g, protected_tokens);

  switch (strategy) {
    case AttackStrategy::tvl:
      rank_by(nodes, [&](NodeId v) { return g.node(v).tvl_usd; });
      break;
    case AttackStrategy::degree:
      rank_by(nodes, [&](NodeId v) { return g.degree_at(v); });
      break;
    case AttackStrategy::betweenness: {
      CentralityReport report = node_betweenness(g, true);
      rank_by(nodes, [&](NodeId v) { return report.scores[v]; });
      break;
    }
    case AttackStrategy::random: {
      Rng rng(seed);
      for (std::size_t i = nodes.size(); i > 1; --i)
        std::swap(nodes[i - 1], nodes[rng.bounded(i)]);
      break;
    }
  }

  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) out.push_back(g.node(v).address);
  return out;
}

RemovalTrace simulate_removal(const LiquidityGraph& g,
                              const std::vector<std::string>& order,
                              std::size_t n_remove) {
  if (n_remove > order.size())
    throw ArgumentError("cannot remove " + std::to_string(n_remove) +
                        " tokens from an order of " +
                        std::to_string(order.size()));

  std::vector<NodeId> victims;
  victims.reserve(n_remove);
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n_remove; ++i) {
      auto v = g.index_of(order[i]);
      if (!v)
        throw DataIntegrityError("removal order names unknown token " + order[i]);
      if (!seen.insert(order[i]).second)
        throw DataIntegrityError("removal order repeats token " + order[i]);
      victims.push_back(*v);
    }
  }

  RemovalTrace trace;
  trace.initial_edges = g.edge_count();
  for (const auto& e : g.edges()) trace.initial_tvl_usd += e.tvl_usd;
  trace.steps.resize(victims.size());

  // Forward pass: edge counts and TVL loss. An edge is charged when its
  // first endpoint is removed.
  std::vector<char> alive(g.node_count(), 1);
  std::size_t edges_alive = g.edge_count();
  Fixed6 tvl_lost;
  for (std::size_t i = 0; i < victims.size(); ++i) {
    NodeId v = victims[i];
    for (const auto& adj : g.neighbors(v)) {
      if (!alive[adj.neighbor]) continue;
      --edges_alive;
      tvl_lost += g.edge(adj.edge).tvl_usd;
    }
    alive[v] = 0;
    RemovalStep& step = trace.steps[i];
    step.step = i + 1;
    step.removed_token = g.node(v).address;
    step.edges_remaining = edges_alive;
    step.tvl_lost_fraction = trace.initial_tvl_usd.is_zero()
                                 ? 0.0
                                 : ratio(tvl_lost, trace.initial_tvl_usd);
  }

  // Backward pass: component counts via union-find, adding victims back in
  // reverse removal order.
  UnionFind uf(g.node_count());
  std::size_t live_components = 0;
  {
    std::vector<char> added(g.node_count(), 0);
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (alive[v]) {
        added[v] = 1;
        ++live_components;
      }
    for (const auto& e : g.edges())
      if (added[e.a] && added[e.b] && uf.unite(e.a, e.b)) --live_components;

    for (std::size_t i = victims.size(); i-- > 0;) {
      trace.steps[i].component_count = live_components;
      NodeId v = victims[i];
      added[v] = 1;
      ++live_components;
      for (const auto& adj : g.neighbors(v))
        if (added[adj.neighbor] && uf.unite(v, adj.neighbor)) --live_components;
    }
  }
  return trace;
}

namespace {

void validate_plan(const LiquidityGraph& g, const AttackPlan& plan) {
  std::set<std::string> shielded(plan.protected_tokens.begin(),
                                 plan.protected_tokens.end());
  std::size_t shielded_present = 0;
  for (const auto& t : shielded)
    if (g.index_of(t)) ++shielded_present;
  const std::size_t eligible = g.node_count() - shielded_present;
  if (plan.n_remove > eligible)
    throw ArgumentError("plan removes " + std::to_string(plan.n_remove) +
                        " tokens but only " + std::to_string(eligible) +
                        " are unprotected");
}

RemovalTrace run_plan(const LiquidityGraph& g, const AttackPlan& plan) {
  validate_plan(g, plan);
  RemovalTrace trace;
  if (!plan.recompute_ranking) {
    std::vector<std::string> order =
        rank_tokens(g, plan.strategy, plan.protected_tokens, plan.seed);
    trace = simulate_removal(g, order, plan.n_remove);
    trace.plan = plan;
    return trace;
  }

  // Adaptive variant: re-rank the surviving graph before every removal.
  // Correctness baseline is the from-scratch oracle, so this is implemented
  // as literal recomputation per step.
  LiquidityGraph current = g;
  std::vector<std::string> removed;
  trace.initial_edges = g.edge_count();
  for (const auto& e : g.edges()) trace.initial_tvl_usd += e.tvl_usd;
  for (std::size_t i = 0; i < plan.n_remove; ++i) {
    std::vector<std::string> order =
        rank_tokens(current, plan.strategy, plan.protected_tokens,
                    named_stream(plan.seed, "adaptive-step-" + std::to_string(i)));
    removed.push_back(order.front());
    std::vector<NodeId> keep;
    NodeId victim = *current.index_of(order.front());
    for (NodeId v = 0; v < current.node_count(); ++v)
      if (v != victim) keep.push_back(v);
    current = current.induced(keep);

    RemovalStep step;
    step.step = i + 1;
    step.removed_token = removed.back();
    step.edges_remaining = current.edge_count();
    step.component_count = components(current).count;
    Fixed6 remaining_tvl;
    for (const auto& e : current.edges()) remaining_tvl += e.tvl_usd;
    step.tvl_lost_fraction =
        trace.initial_tvl_usd.is_zero()
            ? 0.0
            : ratio(trace.initial_tvl_usd - remaining_tvl, trace.initial_tvl_usd);
    trace.steps.push_back(std::move(step));
  }
  trace.plan = plan;
  return trace;
}

}  // namespace

std::map<AttackStrategy, RemovalTrace> run_attack_suite(
    const LiquidityGraph& g, const std::vector<AttackPlan>& plans) {
  for (const auto& plan : plans) validate_plan(g, plan);

  std::vector<RemovalTrace> traces(plans.size());
  const auto count = static_cast<std::int64_t>(plans.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i)
    traces[static_cast<std::size_t>(i)] =
        run_plan(g, plans[static_cast<std::size_t>(i)]);

  std::map<AttackStrategy, RemovalTrace> out;
  for (auto& trace : traces) out[trace.plan.strategy] = std::move(trace);
  return out;
}

}  // namespace dexnet
