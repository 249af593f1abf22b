#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dexnet/graph.hpp"

namespace dexnet {

enum class AttackStrategy { tvl, betweenness, degree, random };

std::string strategy_str(AttackStrategy s);
AttackStrategy parse_strategy(const std::string& name);  // throws ArgumentError

struct AttackPlan {
  AttackStrategy strategy = AttackStrategy::degree;
  std::vector<std::string> protected_tokens = kDefaultProtectedTokens;
  std::size_t n_remove = 1000;
  std::uint64_t seed = 0;  // random strategy only
  // Re-rank on the surviving graph before every removal instead of using
  // the initial ranking. Off by default; the static order matches the
  // sort-then-delete procedure.
  bool recompute_ranking = false;
};

struct RemovalStep {
  std::size_t step = 0;  // 1-based
  std::string removed_token;
  std::size_t edges_remaining = 0;
  std::size_t component_count = 0;  // surviving nodes, size-1 included
  double tvl_lost_fraction = 0;     // of initial edge TVL; 0 when initial is 0
};

struct RemovalTrace {
  AttackPlan plan;
  std::size_t initial_edges = 0;
  Fixed6 initial_tvl_usd;
  std::vector<RemovalStep> steps;
};

// Removal order under a strategy: tvl/degree/betweenness rank descending
// (betweenness computed once on the given graph), random is a seeded
// shuffle. Protected tokens are excluded; ties break by ascending address.
// Returns every eligible token; callers take a prefix.
std::vector<std::string> rank_tokens(const LiquidityGraph& g,
                                     AttackStrategy strategy,
                                     const std::vector<std::string>& protected_tokens,
                                     std::uint64_t seed);

// Deletes the first n_remove tokens of `order` one at a time, each deletion
// removing the token and all incident edges, and records the damage after
// every step. An edge's TVL is charged when its first endpoint goes.
// Throws DataIntegrityError when `order` names a token not in the graph.
RemovalTrace simulate_removal(const LiquidityGraph& g,
                              const std::vector<std::string>& order,
                              std::size_t n_remove);

// One trace per plan; plans run in parallel over the shared initial graph.
std::map<AttackStrategy, RemovalTrace> run_attack_suite(
    const LiquidityGraph& g, const std::vector<AttackPlan>& plans);

}  // namespace dexnet
