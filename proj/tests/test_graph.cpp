#include <doctest.h>

#include <set>

#include "dexnet/errors.hpp"
#include "dexnet/graph.hpp"
#include "support/oracles.hpp"

using namespace dexnet;

namespace {

std::string addr(char c) { return "0x" + std::string(40, c); }

PairRecord make_pair(std::size_t idx, const std::string& t0, const std::string& t1,
                     const char* created = "2020-05-05") {
  PairRecord p;
  p.pair_address = synthetic_pair_address(idx);
  p.token0 = t0;
  p.token1 = t1;
  p.created_at = day_start_unix(parse_day(created)) + 60;
  return p;
}

const std::unordered_map<std::string, Fixed6> kNoTvl;
const std::unordered_map<std::string, TokenRecord> kNoMeta;

}  // namespace

TEST_CASE("one pair on its creation day gives two nodes and one edge") {
  std::vector<PairRecord> pairs = {make_pair(0, addr('a'), addr('b'))};
  auto g = build_graph(pairs, kNoTvl, kNoTvl, kNoMeta, parse_day("2020-05-05"));
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("empty pair collection gives an empty graph") {
  auto g = build_graph({}, kNoTvl, kNoTvl, kNoMeta, parse_day("2023-10-31"));
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("path of three pairs") {
  std::vector<PairRecord> pairs = {
      make_pair(0, addr('a'), addr('b')),
      make_pair(1, addr('b'), addr('c')),
      make_pair(2, addr('c'), addr('d')),
  };
  auto g = build_graph(pairs, kNoTvl, kNoTvl, kNoMeta, parse_day("2020-06-01"));
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(addr('a')) == 1);
  CHECK(g.degree(addr('b')) == 2);
  CHECK(g.degree(addr('c')) == 2);
  CHECK(g.degree(addr('d')) == 1);
}

TEST_CASE("duplicate unordered token pair is rejected naming both pairs") {
  std::vector<PairRecord> pairs = {
      make_pair(0, addr('a'), addr('b')),
      make_pair(1, addr('b'), addr('a')),
  };
  try {
    build_graph(pairs, kNoTvl, kNoTvl, kNoMeta, parse_day("2020-06-01"));
    FAIL("expected DataIntegrityError");
  } catch (const DataIntegrityError& e) {
    std::string msg = e.what();
    CHECK(msg.find(synthetic_pair_address(0)) != std::string::npos);
    CHECK(msg.find(synthetic_pair_address(1)) != std::string::npos);
  }
}

TEST_CASE("self-loop pair is rejected") {
  std::vector<PairRecord> pairs = {make_pair(0, addr('a'), addr('a'))};
  CHECK_THROWS_AS(build_graph(pairs, kNoTvl, kNoTvl, kNoMeta, parse_day("2020-06-01")),
                  DataIntegrityError);
}

TEST_CASE("degree lookups") {
  // 4-leaf star around 'a', plus an isolated node via index edges
  std::vector<std::pair<NodeId, NodeId>> star = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  auto g = graph_from_index_edges(6, star);  // node 5 is isolated
  CHECK(g.degree(synthetic_token_address(0)) == 4);
  CHECK(g.degree(synthetic_token_address(5)) == 0);
  CHECK_THROWS_AS(g.degree(addr('f')), NotFoundError);
}

TEST_CASE("handshake identity on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = oracles::random_test_graph(40, 70, seed);
    std::size_t degree_sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) degree_sum += g.degree_at(v);
    CHECK(degree_sum == 2 * g.edge_count());
  }
}

TEST_CASE("construction is deterministic and idempotent") {
  std::vector<PairRecord> pairs = {
      make_pair(0, addr('c'), addr('a')),
      make_pair(1, addr('b'), addr('c')),
  };
  std::unordered_map<std::string, Fixed6> token_tvl{
      {addr('a'), Fixed6::parse("7.5")}};
  std::unordered_map<std::string, Fixed6> pool_tvl{
      {synthetic_pair_address(1), Fixed6::parse("100")}};
  auto g1 = build_graph(pairs, pool_tvl, token_tvl, kNoMeta, parse_day("2020-06-01"));
  auto g2 = build_graph(pairs, pool_tvl, token_tvl, kNoMeta, parse_day("2020-06-01"));
  REQUIRE(g1.node_count() == g2.node_count());
  REQUIRE(g1.edge_count() == g2.edge_count());
  for (NodeId v = 0; v < g1.node_count(); ++v) {
    CHECK(g1.node(v).address == g2.node(v).address);
    CHECK(g1.node(v).tvl_usd == g2.node(v).tvl_usd);
  }
  for (EdgeId e = 0; e < g1.edge_count(); ++e) {
    CHECK(g1.edge(e).pair_address == g2.edge(e).pair_address);
    CHECK(g1.edge(e).tvl_usd == g2.edge(e).tvl_usd);
  }
  // nodes are address-sorted regardless of input order
  CHECK(g1.node(0).address == addr('a'));
  CHECK(g1.node(0).tvl_usd == Fixed6::parse("7.5"));
}

TEST_CASE("cut-off day filters pairs and their tokens monotonically") {
  std::vector<PairRecord> pairs = {
      make_pair(0, addr('a'), addr('b'), "2020-05-05"),
      make_pair(1, addr('b'), addr('c'), "2020-05-10"),
      make_pair(2, addr('d'), addr('e'), "2020-05-20"),
  };
  auto edges_on = [&](const char* day) {
    auto g = build_graph(pairs, kNoTvl, kNoTvl, kNoMeta, parse_day(day));
    std::set<std::string> out;
    for (const auto& e : g.edges()) out.insert(e.pair_address);
    return out;
  };
  auto d1 = edges_on("2020-05-05");
  auto d2 = edges_on("2020-05-10");
  auto d3 = edges_on("2020-05-20");
  CHECK(d1.size() == 1);
  CHECK(d2.size() == 2);
  CHECK(d3.size() == 3);
  CHECK(std::includes(d2.begin(), d2.end(), d1.begin(), d1.end()));
  CHECK(std::includes(d3.begin(), d3.end(), d2.begin(), d2.end()));

  // tokens appearing only in later pairs are absent entirely
  auto g = build_graph(pairs, kNoTvl, kNoTvl, kNoMeta, parse_day("2020-05-10"));
  CHECK(!g.index_of(addr('d')).has_value());
  CHECK(g.node_count() == 3);
}

TEST_CASE("induced subgraph keeps attributes and drops cut edges") {
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {1, 2}, {2, 0}, {2, 3}};
  auto g = graph_from_index_edges(4, edges);
  std::vector<NodeId> keep = {0, 1, 2};
  auto sub = g.induced(keep);
  CHECK(sub.node_count() == 3);
  CHECK(sub.edge_count() == 3);
  CHECK(sub.index_of(synthetic_token_address(3)) == std::nullopt);
}
