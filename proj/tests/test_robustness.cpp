#include <doctest.h>

#include <algorithm>
#include <set>

#include "dexnet/errors.hpp"
#include "dexnet/robustness.hpp"
#include "dexnet/synthetic.hpp"
#include "support/oracles.hpp"

using namespace dexnet;

namespace {

LiquidityGraph star_with_tvl() {
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  return with_synthetic_tvl(graph_from_index_edges(5, edges), 1);
}

std::string tok(std::size_t i) { return synthetic_token_address(i); }

}  // namespace

TEST_CASE("degree ranking puts the hub first") {
  auto g = star_with_tvl();
  auto order = rank_tokens(g, AttackStrategy::degree, {}, 0);
  REQUIRE(order.size() == 5);
  CHECK(order[0] == tok(0));
}

TEST_CASE("protected hub leaves the leaves in address order") {
  auto g = star_with_tvl();
  auto order = rank_tokens(g, AttackStrategy::degree, {tok(0)}, 0);
  REQUIRE(order.size() == 4);
  // all leaves have degree 1; the tie-break is ascending address
  CHECK(order == std::vector<std::string>{tok(1), tok(2), tok(3), tok(4)});
}

TEST_CASE("tvl ranking matches an independent sort") {
  auto g = with_synthetic_tvl(oracles::random_test_graph(30, 55, 17), 17);
  auto order = rank_tokens(g, AttackStrategy::tvl, {}, 0);

  std::vector<std::pair<Fixed6, std::string>> expected;
  for (NodeId v = 0; v < g.node_count(); ++v)
    expected.emplace_back(g.node(v).tvl_usd, g.node(v).address);
  std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  REQUIRE(order.size() == expected.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    CHECK(order[i] == expected[i].second);
}

TEST_CASE("unknown strategy names are rejected") {
  CHECK_THROWS_AS(parse_strategy("pagerank"), ArgumentError);
}

TEST_CASE("removing the star hub empties the graph") {
  auto g = star_with_tvl();
  auto trace = simulate_removal(g, {tok(0)}, 1);
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.steps[0].edges_remaining == 0);
  CHECK(trace.steps[0].component_count == 4);
  CHECK(trace.steps[0].tvl_lost_fraction == doctest::Approx(1.0));
}

TEST_CASE("removing zero tokens is the identity") {
  auto g = star_with_tvl();
  auto trace = simulate_removal(g, {tok(1)}, 0);
  CHECK(trace.steps.empty());
  CHECK(trace.initial_edges == 4);
}

TEST_CASE("unknown or repeated tokens in the order are data errors") {
  auto g = star_with_tvl();
  CHECK_THROWS_AS(simulate_removal(g, {"0x" + std::string(40, 'f')}, 1),
                  DataIntegrityError);
  CHECK_THROWS_AS(simulate_removal(g, {tok(1), tok(1)}, 2), DataIntegrityError);
}

TEST_CASE("every step matches from-scratch recomputation") {
  auto g = with_synthetic_tvl(oracles::random_test_graph(50, 90, 23), 23);
  auto order = rank_tokens(g, AttackStrategy::degree, {}, 0);
  auto trace = simulate_removal(g, order, 10);
  REQUIRE(trace.steps.size() == 10);

  std::vector<std::string> removed;
  for (const auto& step : trace.steps) {
    removed.push_back(step.removed_token);
    auto reference = oracles::recompute_damage(g, removed);
    CHECK(step.edges_remaining == reference.edges_remaining);
    CHECK(step.component_count == reference.component_count);
    CHECK(step.tvl_lost_fraction ==
          doctest::Approx(ratio(reference.tvl_lost, trace.initial_tvl_usd)));
  }
}

TEST_CASE("damage is monotone for every strategy") {
  auto g = with_synthetic_tvl(preferential_attachment(120, 2, 31), 31);
  for (auto strategy : {AttackStrategy::tvl, AttackStrategy::betweenness,
                        AttackStrategy::degree, AttackStrategy::random}) {
    auto order = rank_tokens(g, strategy, {}, 5);
    auto trace = simulate_removal(g, order, 60);
    for (std::size_t i = 1; i < trace.steps.size(); ++i) {
      CHECK(trace.steps[i].edges_remaining <= trace.steps[i - 1].edges_remaining);
      CHECK(trace.steps[i].tvl_lost_fraction >=
            trace.steps[i - 1].tvl_lost_fraction);
    }
  }
}

TEST_CASE("removing every unprotected token loses everything but protected edges") {
  auto g = with_synthetic_tvl(oracles::random_test_graph(40, 80, 29), 29);
  std::vector<std::string> protected_tokens = {tok(3), tok(7), tok(11)};
  auto order = rank_tokens(g, AttackStrategy::degree, protected_tokens, 0);
  auto trace = simulate_removal(g, order, order.size());

  Fixed6 protected_edge_tvl;
  std::set<std::string> shielded(protected_tokens.begin(), protected_tokens.end());
  for (const auto& e : g.edges())
    if (shielded.count(g.node(e.a).address) && shielded.count(g.node(e.b).address))
      protected_edge_tvl += e.tvl_usd;

  const double expected =
      ratio(trace.initial_tvl_usd - protected_edge_tvl, trace.initial_tvl_usd);
  CHECK(trace.steps.back().tvl_lost_fraction == expected);
}

TEST_CASE("attack suite: plans are reproducible and validated") {
  auto g = with_synthetic_tvl(preferential_attachment(80, 2, 41), 41);
  AttackPlan plan;
  plan.strategy = AttackStrategy::random;
  plan.protected_tokens = {};
  plan.n_remove = 30;
  plan.seed = 77;

  auto first = run_attack_suite(g, {plan});
  auto second = run_attack_suite(g, {plan});
  const auto& a = first.at(AttackStrategy::random);
  const auto& b = second.at(AttackStrategy::random);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].removed_token == b.steps[i].removed_token);
    CHECK(a.steps[i].edges_remaining == b.steps[i].edges_remaining);
    CHECK(a.steps[i].component_count == b.steps[i].component_count);
    CHECK(a.steps[i].tvl_lost_fraction == b.steps[i].tvl_lost_fraction);
  }

  plan.n_remove = 1000;  // more than the graph has
  CHECK_THROWS_AS(run_attack_suite(g, {plan}), ArgumentError);
}

TEST_CASE("targeted removal beats random removal on a scale-free fixture") {
  auto g = with_synthetic_tvl(preferential_attachment(200, 1, 51), 51);
  std::vector<AttackPlan> plans;
  for (auto strategy : {AttackStrategy::tvl, AttackStrategy::betweenness,
                        AttackStrategy::degree, AttackStrategy::random}) {
    AttackPlan plan;
    plan.strategy = strategy;
    plan.protected_tokens = {};
    plan.n_remove = 100;
    plan.seed = 13;
    plans.push_back(plan);
  }
  auto traces = run_attack_suite(g, plans);
  const auto& at = [&](AttackStrategy s) -> const RemovalStep& {
    return traces.at(s).steps.back();
  };
  // degree removal destroys the most pools; betweenness shatters the most
  CHECK(at(AttackStrategy::degree).edges_remaining <=
        at(AttackStrategy::betweenness).edges_remaining);
  CHECK(at(AttackStrategy::degree).edges_remaining <
        at(AttackStrategy::random).edges_remaining);
  CHECK(at(AttackStrategy::betweenness).component_count >=
        at(AttackStrategy::degree).component_count);
  CHECK(at(AttackStrategy::betweenness).component_count >
        at(AttackStrategy::random).component_count);
}

TEST_CASE("random removal leaves more pools than degree removal on average") {
  // 10 scale-free fixtures; compare mean edges remaining at the same depth.
  double random_total = 0, degree_total = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = with_synthetic_tvl(preferential_attachment(150, 1, seed + 100),
                                seed + 100);
    auto random_order = rank_tokens(g, AttackStrategy::random, {}, seed);
    auto degree_order = rank_tokens(g, AttackStrategy::degree, {}, seed);
    random_total += static_cast<double>(
        simulate_removal(g, random_order, 40).steps.back().edges_remaining);
    degree_total += static_cast<double>(
        simulate_removal(g, degree_order, 40).steps.back().edges_remaining);
  }
  CHECK(random_total / 10.0 > degree_total / 10.0);
}

TEST_CASE("adaptive re-ranking matches static ranking on a star") {
  auto g = star_with_tvl();
  AttackPlan plan;
  plan.strategy = AttackStrategy::degree;
  plan.protected_tokens = {};
  plan.n_remove = 2;
  plan.recompute_ranking = true;
  auto traces = run_attack_suite(g, {plan});
  const auto& trace = traces.at(AttackStrategy::degree);
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[0].removed_token == tok(0));  // hub first either way
  CHECK(trace.steps[0].edges_remaining == 0);
  CHECK(trace.steps[1].edges_remaining == 0);
}
