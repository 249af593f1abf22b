#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dexnet/errors.hpp"
#include "dexnet/metrics.hpp"
#include "dexnet/rng.hpp"
#include "support/oracles.hpp"

using namespace dexnet;

namespace {

LiquidityGraph star4() {
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  return graph_from_index_edges(5, edges);
}

LiquidityGraph path(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return graph_from_index_edges(n, edges);
}

LiquidityGraph complete(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return graph_from_index_edges(n, edges);
}

LiquidityGraph triangle_with_pendant() {
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  return graph_from_index_edges(4, edges);
}

}  // namespace

TEST_CASE("degree distribution") {
  auto star = degree_distribution(star4());
  CHECK(star == std::map<std::uint32_t, std::size_t>{{1, 4}, {4, 1}});
  CHECK(degree_distribution(graph_from_index_edges(0, {})).empty());
  auto p4 = degree_distribution(path(4));
  CHECK(p4 == std::map<std::uint32_t, std::size_t>{{1, 2}, {2, 2}});
}

TEST_CASE("degree distribution sums to node count and twice the edges") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = oracles::random_test_graph(60, 100, seed);
    auto dist = degree_distribution(g);
    std::size_t nodes = 0, degree_mass = 0;
    for (const auto& [d, c] : dist) {
      nodes += c;
      degree_mass += d * c;
    }
    CHECK(nodes == g.node_count());
    CHECK(degree_mass == 2 * g.edge_count());
  }
}

TEST_CASE("average degree") {
  CHECK(average_degree(path(3)) == doctest::Approx(4.0 / 3.0));
  CHECK(average_degree(complete(4)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(average_degree(graph_from_index_edges(0, {})), ArgumentError);
}

TEST_CASE("components") {
  std::vector<std::pair<NodeId, NodeId>> two = {{0, 1}, {2, 3}};
  auto summary = components(graph_from_index_edges(4, two));
  CHECK(summary.count == 2);
  CHECK(summary.sizes == std::vector<std::size_t>{2, 2});

  CHECK(components(graph_from_index_edges(0, {})).count == 0);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = oracles::random_test_graph(50, 45, seed);
    auto ours = components(g);
    auto reference = oracles::bfs_components(g);
    CHECK(ours.count == reference.count);
    CHECK(ours.sizes == reference.sizes);
  }
}

TEST_CASE("core decomposition on canonical shapes") {
  auto k5 = core_decomposition(complete(5));
  CHECK(k5.max_k == 4);
  for (auto c : k5.core_number) CHECK(c == 4);

  auto tp = core_decomposition(triangle_with_pendant());
  CHECK(tp.max_k == 2);
  CHECK(tp.core_number == std::vector<std::uint32_t>{2, 2, 2, 1});
  CHECK(tp.k_group_sizes == std::vector<std::size_t>{4, 4, 3});
}

TEST_CASE("core numbers equal the peeling oracle on random graphs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = oracles::random_test_graph(100, 220, seed);
    auto cores = core_decomposition(g);
    CHECK(cores.core_number == oracles::peeling_core_numbers(g));
    for (std::size_t k = 1; k < cores.k_group_sizes.size(); ++k)
      CHECK(cores.k_group_sizes[k] <= cores.k_group_sizes[k - 1]);
    for (NodeId v = 0; v < g.node_count(); ++v)
      CHECK(cores.core_number[v] <= g.degree_at(v));
  }
}

TEST_CASE("max core subgraph") {
  auto k5 = max_core_subgraph(complete(5));
  CHECK(k5.k == 4);
  CHECK(k5.subgraph.node_count() == 5);
  CHECK(k5.subgraph.edge_count() == 10);

  auto tp = max_core_subgraph(triangle_with_pendant());
  CHECK(tp.k == 2);
  CHECK(tp.subgraph.node_count() == 3);
  CHECK(tp.subgraph.edge_count() == 3);

  CHECK_THROWS_AS(max_core_subgraph(graph_from_index_edges(0, {})), ArgumentError);
}

TEST_CASE("max core is a genuine k-core: min induced degree >= k") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = oracles::random_test_graph(80, 200, seed);
    auto core = max_core_subgraph(g);
    for (NodeId v = 0; v < core.subgraph.node_count(); ++v)
      CHECK(core.subgraph.degree_at(v) >= core.k);
  }
}

TEST_CASE("gini hand cases") {
  std::vector<double> equal = {1, 1, 1, 1};
  CHECK(gini(equal) == doctest::Approx(0.0).epsilon(1e-12));
  std::vector<double> one = {0, 0, 0, 1};
  CHECK(gini(one) == doctest::Approx(0.75).epsilon(1e-12));
  std::vector<double> single = {5.0};
  CHECK(gini(single) == doctest::Approx(0.0));
  CHECK_THROWS_AS(gini(std::vector<double>{}), ArgumentError);
  std::vector<double> zeros = {0, 0};
  CHECK_THROWS_AS(gini(zeros), ArgumentError);
  std::vector<double> negative = {1, -1};
  CHECK_THROWS_AS(gini(negative), ArgumentError);
}

TEST_CASE("gini matches the pairwise definition and is scale invariant") {
  Rng rng(99);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 2 + rng.bounded(300);
    std::vector<double> values(n);
    for (auto& v : values) v = rng.uniform01() * 100.0;
    double g1 = gini(values);
    CHECK(g1 == doctest::Approx(static_cast<double>(oracles::gini_double_sum(values)))
                    .epsilon(1e-12));
    std::vector<double> scaled(values);
    for (auto& v : scaled) v *= 37.5;
    CHECK(gini(scaled) == doctest::Approx(g1).epsilon(1e-12));
  }
}

TEST_CASE("random reference graph") {
  auto g = random_reference(3, 3, 7);  // the only 3-edge simple graph: a triangle
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  for (NodeId v = 0; v < 3; ++v) CHECK(g.degree_at(v) == 2);

  auto a = random_reference(50, 80, 42);
  auto b = random_reference(50, 80, 42);
  REQUIRE(a.edge_count() == b.edge_count());
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    CHECK(a.edge(e).a == b.edge(e).a);
    CHECK(a.edge(e).b == b.edge(e).b);
  }
  auto c = random_reference(50, 80, 43);
  bool same = true;
  for (EdgeId e = 0; e < a.edge_count(); ++e)
    same = same && a.edge(e).a == c.edge(e).a && a.edge(e).b == c.edge(e).b;
  CHECK(!same);

  CHECK_THROWS_AS(random_reference(4, 7, 1), ArgumentError);
}

TEST_CASE("core-periphery comparison: K5 equals its random twin") {
  auto rows = core_periphery_comparison(complete(5), 11);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) CHECK(row.observed == row.random_value);
}

TEST_CASE("core-periphery comparison: observed column is self-consistent") {
  auto g = oracles::random_test_graph(50, 70, 3);
  auto rows = core_periphery_comparison(g, 11);
  auto find = [&](const std::string& name) {
    for (const auto& row : rows)
      if (row.metric == name) return row.observed;
    FAIL("missing metric ", name);
    return 0.0;
  };
  CHECK(find("node_count") == static_cast<double>(g.node_count()));
  CHECK(find("average_degree") == doctest::Approx(average_degree(g)));
  auto core = max_core_subgraph(g);
  CHECK(find("max_k") == static_cast<double>(core.k));
  CHECK(find("kcore_group_size") == static_cast<double>(core.subgraph.node_count()));
  CHECK(find("kcore_average_degree") ==
        doctest::Approx(average_degree(core.subgraph)));
}
