#include "dexnet/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "dexnet/errors.hpp"
#include "dexnet/rng.hpp"

namespace dexnet {

LiquidityGraph preferential_attachment(std::size_t n, std::size_t edges_per_node,
                                       std::uint64_t seed) {
  const std::size_t m = edges_per_node;
  if (m == 0) throw ArgumentError("edges_per_node must be positive");
  if (n < m + 1)
    throw ArgumentError("need at least edges_per_node + 1 nodes");

  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> endpoints;  // node repeated once per incident edge

  // Seed clique on the first m+1 nodes.
  for (NodeId a = 0; a + 1 <= m; ++a)
    for (NodeId b = a + 1; b <= m; ++b) {
      edges.emplace_back(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }

  for (NodeId v = static_cast<NodeId>(m + 1); v < n; ++v) {
    std::set<NodeId> targets;
    while (targets.size() < m) {
      NodeId t = endpoints[rng.bounded(endpoints.size())];
      if (t != v) targets.insert(t);
    }
    for (NodeId t : targets) {
      edges.emplace_back(std::min(v, t), std::max(v, t));
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return graph_from_index_edges(n, edges);
}

LiquidityGraph with_synthetic_tvl(const LiquidityGraph& g, std::uint64_t seed,
                                  int decades) {
  Rng rng(seed);
  std::vector<GraphEdge> edges(g.edges().begin(), g.edges().end());
  std::vector<GraphNode> nodes(g.nodes().begin(), g.nodes().end());
  std::vector<Fixed6> node_tvl(nodes.size());
  for (auto& e : edges) {
    const double magnitude = rng.uniform01() * decades;
    const double usd = std::pow(10.0, magnitude);
    e.tvl_usd = Fixed6::from_raw(
        static_cast<__int128>(std::llround(usd * Fixed6::kScale)));
    node_tvl[e.a] += e.tvl_usd;
    node_tvl[e.b] += e.tvl_usd;
  }
  for (std::size_t v = 0; v < nodes.size(); ++v) nodes[v].tvl_usd = node_tvl[v];
  return LiquidityGraph(std::move(nodes), std::move(edges), g.as_of());
}

namespace {

std::string random_address(Rng& rng) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "0x%016lx%016lx%08lx",
                static_cast<unsigned long>(rng.next_u64()),
                static_cast<unsigned long>(rng.next_u64()),
                static_cast<unsigned long>(rng.next_u64() & 0xffffffffULL));
  return buf;
}

struct TrustedSpec {
  const char* address;
  const char* symbol;
  const char* name;
  // price at each sample date
  const char* prices[3];
};

constexpr TrustedSpec kTrusted[5] = {
    {"0xc02aaa39b223fe8d0a0e5c4f27ead9083c756cc2", "WETH", "Wrapped Ether",
     {"225", "360", "740"}},
    {"0xa0b86991c6218b36c1d19d4a2e9eb0ce3606eb48", "USDC", "USD Coin",
     {"1", "1", "1"}},
    {"0xdac17f958d2ee523a2206206994597c13d831ec7", "USDT", "Tether USD",
     {"1", "1", "1"}},
    {"0x6b175474e89094c44da98b954eedeac495271d0f", "DAI", "Dai Stablecoin",
     {"1.01", "1.01", "1"}},
    {"0x2260fac5e5542a773aa44fbcfedf7c193bc2c599", "WBTC", "Wrapped BTC",
     {"9100", "10800", "28900"}},
};

const char* kSampleDates[3] = {"2020-06-30", "2020-09-30", "2020-12-31"};

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

struct FixtureToken {
  std::string address;
  std::string symbol;
  std::string name;
  Fixed6 price;  // flat synthetic price, used for reserve bookkeeping
  bool trusted = false;
  int trusted_index = -1;
};

}  // namespace

FixtureFiles make_fixture_dataset(std::size_t n_pairs, std::uint64_t seed) {
  if (n_pairs < 20) throw ArgumentError("fixture needs at least 20 pairs");
  Rng rng(named_stream(seed, "fixture"));

  const Day first_day = parse_day("2020-05-05");
  const Day last_day = parse_day("2020-12-31");
  Day sample_days[3];
  for (int i = 0; i < 3; ++i) sample_days[i] = parse_day(kSampleDates[i]);

  std::vector<FixtureToken> tokens;
  for (int i = 0; i < 5; ++i) {
    FixtureToken t;
    t.address = kTrusted[i].address;
    t.symbol = kTrusted[i].symbol;
    t.name = kTrusted[i].name;
    t.trusted = true;
    t.trusted_index = i;
    tokens.push_back(std::move(t));
  }

  auto new_minor_token = [&]() {
    FixtureToken t;
    t.address = random_address(rng);
    char sym[16];
    std::snprintf(sym, sizeof sym, "TK%03zu", tokens.size() - 5);
    t.symbol = sym;
    t.name = std::string("Token ") + (sym + 2);
    // log-uniform price between 1e-3 and 1e2 USD, 6-digit fixed
    const double price = std::pow(10.0, -3.0 + 5.0 * rng.uniform01());
    t.price = Fixed6::from_raw(static_cast<__int128>(
        std::max<long long>(1, std::llround(price * Fixed6::kScale))));
    tokens.push_back(std::move(t));
    return tokens.size() - 1;
  };

  struct FixturePair {
    std::string address;
    std::size_t t0, t1;
    std::int64_t created_at;
    Day created_day;
    enum class Flavor { normal, cap_outlier, price_outlier, stale_reserve };
    Flavor flavor = Flavor::normal;
  };

  std::vector<FixturePair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> used_token_pairs;
  auto add_pair = [&](std::size_t a, std::size_t b, Day day) -> FixturePair* {
    auto key = std::minmax(a, b);
    if (!used_token_pairs.insert(key).second) return nullptr;
    FixturePair p;
    p.address = random_address(rng);
    p.t0 = a;
    p.t1 = b;
    p.created_day = day;
    p.created_at = day_start_unix(day) +
                   static_cast<std::int64_t>(rng.bounded(86400));
    pairs.push_back(std::move(p));
    return &pairs.back();
  };

  // Trusted backbone: WETH-USDC on launch day, then the remaining trusted
  // pairs over the first weeks.
  add_pair(0, 1, first_day);
  {
    Day d = first_day + 3;
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = a + 1; b < 5; ++b) {
        if (a == 0 && b == 1) continue;
        add_pair(a, b, d);
        d += 2;
      }
  }

  // Occurrence list drives preferential reuse of minor tokens.
  std::vector<std::size_t> minor_occurrences;
  const std::size_t span_days = static_cast<std::size_t>(last_day - first_day);
  while (pairs.size() < n_pairs) {
    const double progress =
        static_cast<double>(pairs.size()) / static_cast<double>(n_pairs);
    Day day = first_day + static_cast<Day>(progress * span_days) +
              static_cast<Day>(rng.bounded(3));
    day = std::min(day, last_day);

    const std::uint64_t roll = rng.bounded(100);
    std::size_t a, b;
    if (roll < 90) {
      // minor paired with a trusted token, WETH-heavy
      const std::uint64_t w = rng.bounded(100);
      a = w < 70 ? 0 : w < 82 ? 1 : w < 92 ? 2 : w < 97 ? 3 : 4;
      if (!minor_occurrences.empty() && rng.bounded(100) < 25)
        b = minor_occurrences[rng.bounded(minor_occurrences.size())];
      else
        b = new_minor_token();
    } else {
      // minor-minor pool
      if (minor_occurrences.size() >= 2 && rng.bounded(100) < 50) {
        a = minor_occurrences[rng.bounded(minor_occurrences.size())];
        b = minor_occurrences[rng.bounded(minor_occurrences.size())];
        if (a == b) b = new_minor_token();
      } else {
        a = new_minor_token();
        b = new_minor_token();
      }
    }
    if (FixturePair* p = add_pair(a, b, day)) {
      if (p->t0 >= 5) minor_occurrences.push_back(p->t0);
      if (p->t1 >= 5) minor_occurrences.push_back(p->t1);
    }
  }

  // Flag a few deliberate anomalies among late minor-minor and WETH pools.
  std::size_t cap_marked = 0, price_marked = 0, stale_marked = 0;
  for (auto& p : pairs) {
    const bool trusted0 = p.t0 < 5, trusted1 = p.t1 < 5;
    if (cap_marked < 2 && !trusted0 && !trusted1 &&
        p.created_day <= sample_days[0]) {
      p.flavor = FixturePair::Flavor::cap_outlier;
      ++cap_marked;
    } else if (price_marked < 1 && (trusted0 ^ trusted1) &&
               (p.t0 == 0 || p.t1 == 0) && p.created_day <= sample_days[0]) {
      p.flavor = FixturePair::Flavor::price_outlier;
      ++price_marked;
    } else if (stale_marked < 2 && (trusted0 ^ trusted1) &&
               p.created_day <= sample_days[1] &&
               p.created_day > sample_days[0]) {
      p.flavor = FixturePair::Flavor::stale_reserve;
      ++stale_marked;
    }
  }

  FixtureFiles files;

  for (const auto& p : pairs) {
    const FixtureToken& t0 = tokens[p.t0];
    const FixtureToken& t1 = tokens[p.t1];
    files.pairs_jsonl += "{\"pair\":\"" + p.address + "\",\"token0\":{\"address\":\"" +
                         t0.address + "\",\"symbol\":\"" + json_escape(t0.symbol) +
                         "\",\"name\":\"" + json_escape(t0.name) +
                         "\"},\"token1\":{\"address\":\"" + t1.address +
                         "\",\"symbol\":\"" + json_escape(t1.symbol) +
                         "\",\"name\":\"" + json_escape(t1.name) +
                         "\"},\"createdAtTimestamp\":\"" +
                         std::to_string(p.created_at) + "\"}\n";
  }

  auto price_on_date = [&](const FixtureToken& t, int date_index) {
    if (t.trusted) return Fixed6::parse(kTrusted[t.trusted_index].prices[date_index]);
    return t.price;
  };

  for (int di = 0; di < 3; ++di) {
    const Day date = sample_days[di];
    for (const auto& p : pairs) {
      if (p.created_day > date) continue;
      const FixtureToken& t0 = tokens[p.t0];
      const FixtureToken& t1 = tokens[p.t1];
      const Fixed6 p0 = price_on_date(t0, di);
      const Fixed6 p1 = price_on_date(t1, di);

      // Pool value log-uniform in 1e2..1e7 USD, biased small.
      const double u = rng.uniform01();
      double usd = std::pow(10.0, 2.0 + 5.0 * u * u);
      Fixed6 tvl = Fixed6::from_raw(
          static_cast<__int128>(std::llround(usd * Fixed6::kScale)));
      Fixed6 half = tvl.half();

      // Balanced pool: each side holds half the value at its price.
      auto reserve_for = [&](Fixed6 side_value, Fixed6 price) {
        if (price.is_zero()) return Fixed6();
        const double units = ratio(side_value, price);
        return Fixed6::from_raw(
            static_cast<__int128>(std::llround(units * Fixed6::kScale)));
      };
      Fixed6 r0 = reserve_for(half, p0);
      Fixed6 r1 = reserve_for(half, p1);
      Fixed6 reserve_usd = tvl;

      switch (p.flavor) {
        case FixturePair::Flavor::cap_outlier:
          reserve_usd = Fixed6::parse("5000000000000");  // 5e12, over any sane cap
          break;
        case FixturePair::Flavor::price_outlier:
          // implied trusted price = reserveUSD / (2 R): inflate tenfold
          reserve_usd = Fixed6::from_raw(tvl.raw() * 10);
          break;
        case FixturePair::Flavor::stale_reserve: {
          // reserveUSD below the trusted side's value: forces the clamp
          const bool trusted_is_0 = p.t0 < 5;
          Fixed6 trusted_value =
              trusted_is_0 ? p0.mul(r0) : p1.mul(r1);
          reserve_usd = Fixed6::from_raw(trusted_value.raw() * 8 / 10);
          break;
        }
        case FixturePair::Flavor::normal:
          break;
      }

      files.pair_days_jsonl += "{\"pair\":\"" + p.address + "\",\"date\":\"" +
                               kSampleDates[di] + "\",\"reserve0\":\"" + r0.str() +
                               "\",\"reserve1\":\"" + r1.str() +
                               "\",\"reserveUSD\":\"" + reserve_usd.str() + "\"}\n";
    }

    for (const auto& t : tokens) {
      const bool emit = t.trusted || rng.bounded(100) < 30;
      if (!emit) continue;
      files.token_days_jsonl += "{\"token\":\"" + t.address + "\",\"date\":\"" +
                                kSampleDates[di] + "\",\"priceUSD\":\"" +
                                price_on_date(t, di).str() + "\"}\n";
    }
  }

  files.reference_prices_csv = "token_address,date,price_usd\n";
  for (int di = 0; di < 3; ++di)
    for (int t = 0; t < 5; ++t)
      files.reference_prices_csv += std::string(kTrusted[t].address) + "," +
                                    kSampleDates[di] + "," +
                                    kTrusted[t].prices[di] + "\n";
  return files;
}

}  // namespace dexnet
