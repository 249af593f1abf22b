#include "dexnet/subgraph_client.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "dexnet/errors.hpp"

namespace dexnet {

namespace {

using nlohmann::json;

struct Endpoint {
  std::string host_port;  // scheme://host:port for httplib
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ArgumentError("endpoint must start with http:// or https://: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

json post_query(const FetchOptions& options, const std::string& query,
                const json& variables) {
  Endpoint ep = split_endpoint(options.endpoint);
  json body = {{"query", query}, {"variables", variables}};
  const std::string payload = body.dump();

  std::string last_error;
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    if (attempt > 1)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(options.backoff_ms * (attempt - 1)));
    httplib::Client client(ep.host_port);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    httplib::Headers headers;
    if (!options.api_key.empty())
      headers.emplace("Authorization", "Bearer " + options.api_key);
    auto res = client.Post(ep.path, headers, payload, "application/json");
    if (!res) {
      last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object() ||
        !parsed.contains("data") || !parsed["data"].is_object())
      throw SchemaError("subgraph response is not a data object");
    return parsed["data"];
  }
  throw TransportError("subgraph request to " + options.endpoint + " failed: " +
                           last_error,
                       options.max_attempts);
}

void check_page_size(const FetchOptions& options) {
  if (options.page_size < 1 || options.page_size > 1000)
    throw ArgumentError("page size must be in 1..1000, got " +
                        std::to_string(options.page_size));
}

std::string record_string(const json& rec, const char* key, const std::string& id) {
  if (!rec.contains(key) || !rec[key].is_string())
    throw SchemaError("record " + id + ": missing string field '" + key + "'");
  return rec[key].get<std::string>();
}

Fixed6 record_decimal(const json& rec, const char* key, const std::string& id) {
  auto v = Fixed6::try_parse(record_string(rec, key, id));
  if (!v || v->is_negative())
    throw SchemaError("record " + id + ": field '" + key +
                      "' is not a non-negative decimal");
  return *v;
}

Day record_date(const json& rec, const std::string& id) {
  if (!rec.contains("date") || !rec["date"].is_number_integer())
    throw SchemaError("record " + id + ": missing integer field 'date'");
  return day_from_unix(rec["date"].get<std::int64_t>());
}

// Fetches all pages of `entity`, invoking `consume` per record.
template <typename Consume>
std::size_t paginate(const FetchOptions& options, const std::string& entity,
                     const std::string& query, json base_variables,
                     Consume&& consume) {
  std::size_t requests = 0;
  std::string cursor;
  for (;;) {
    json variables = base_variables;
    variables["pageSize"] = options.page_size;
    variables["lastId"] = cursor;
    json data = post_query(options, query, variables);
    ++requests;
    if (!data.contains(entity) || !data[entity].is_array())
      throw SchemaError("subgraph response has no '" + entity + "' array");
    const json& rows = data[entity];
    for (const auto& rec : rows) {
      if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string())
        throw SchemaError("record in '" + entity + "' has no id");
      std::string id = rec["id"].get<std::string>();
      if (id <= cursor)
        throw SchemaError("record " + id + ": ids not ascending");
      cursor = id;
      consume(rec, id);
    }
    if (rows.size() < static_cast<std::size_t>(options.page_size)) break;
  }
  return requests;
}

constexpr const char* kPairsQuery =
    "query pairs($pageSize: Int!, $lastId: String!) {\n"
    "  pairs(first: $pageSize, orderBy: id, orderDirection: asc,\n"
    "        where: { id_gt: $lastId }) {\n"
    "    id createdAtTimestamp\n"
    "    token0 { id symbol name }\n"
    "    token1 { id symbol name }\n"
    "  }\n"
    "}";

constexpr const char* kPairDaysQuery =
    "query pairDayDatas($pageSize: Int!, $lastId: String!, $dateGte: Int!, "
    "$dateLte: Int!) {\n"
    "  pairDayDatas(first: $pageSize, orderBy: id, orderDirection: asc,\n"
    "               where: { id_gt: $lastId, date_gte: $dateGte, date_lte: "
    "$dateLte }) {\n"
    "    id date pairAddress reserve0 reserve1 reserveUSD\n"
    "  }\n"
    "}";

constexpr const char* kTokenDaysQuery =
    "query tokenDayDatas($pageSize: Int!, $lastId: String!, $dateGte: Int!, "
    "$dateLte: Int!) {\n"
    "  tokenDayDatas(first: $pageSize, orderBy: id, orderDirection: asc,\n"
    "                where: { id_gt: $lastId, date_gte: $dateGte, date_lte: "
    "$dateLte }) {\n"
    "    id date priceUSD\n"
    "    token { id }\n"
    "  }\n"
    "}";

void check_range(DayRange range) {
  if (range.start > range.end)
    throw ArgumentError("empty date range: start " + day_str(range.start) +
                        " is after end " + day_str(range.end));
}

json range_variables(DayRange range) {
  return {{"dateGte", day_start_unix(range.start)},
          {"dateLte", day_start_unix(range.end)}};
}

TokenRecord record_token(const json& rec, const char* key, const std::string& id) {
  if (!rec.contains(key) || !rec[key].is_object())
    throw SchemaError("record " + id + ": missing object field '" + key + "'");
  const json& t = rec[key];
  TokenRecord token;
  token.address = record_string(t, "id", id);
  if (!is_token_address(token.address))
    throw SchemaError("record " + id + ": bad token address " + token.address);
  token.symbol = record_string(t, "symbol", id);
  token.name = record_string(t, "name", id);
  return token;
}

}  // namespace

PairsPayload fetch_pairs(const FetchOptions& options) {
  check_page_size(options);
  PairsPayload out;
  std::set<std::pair<std::string, std::string>> seen_token_pairs;
  out.requests = paginate(
      options, "pairs", kPairsQuery, json::object(),
      [&](const json& rec, const std::string& id) {
        PairRecord pair;
        pair.pair_address = id;
        if (!is_token_address(pair.pair_address))
          throw SchemaError("record " + id + ": bad pair address");
        TokenRecord t0 = record_token(rec, "token0", id);
        TokenRecord t1 = record_token(rec, "token1", id);
        pair.token0 = t0.address;
        pair.token1 = t1.address;
        if (pair.token0 == pair.token1)
          throw SchemaError("record " + id + ": identical tokens");
        auto key = std::minmax(pair.token0, pair.token1);
        if (!seen_token_pairs.insert(key).second)
          throw SchemaError("record " + id +
                            ": another pair covers the same token pair");
        const std::string ts = record_string(rec, "createdAtTimestamp", id);
        try {
          std::size_t pos = 0;
          pair.created_at = std::stoll(ts, &pos);
          if (pos != ts.size() || pair.created_at < 0)
            throw std::invalid_argument(ts);
        } catch (const std::exception&) {
          throw SchemaError("record " + id + ": bad createdAtTimestamp " + ts);
        }
        out.tokens.insert_or_assign(t0.address, std::move(t0));
        out.tokens.insert_or_assign(t1.address, std::move(t1));
        out.pairs.push_back(std::move(pair));
      });
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const PairRecord& a, const PairRecord& b) {
              return a.pair_address < b.pair_address;
            });
  return out;
}

SamplesPayload<PairDaySample> fetch_pair_day_data(const FetchOptions& options,
                                                  DayRange range) {
  check_page_size(options);
  check_range(range);
  SamplesPayload<PairDaySample> out;
  // key -> position of the last-fetched row for that key
  std::map<std::pair<std::string, Day>, std::size_t> last;
  out.requests = paginate(
      options, "pairDayDatas", kPairDaysQuery, range_variables(range),
      [&](const json& rec, const std::string& id) {
        PairDaySample s;
        s.pair_address = record_string(rec, "pairAddress", id);
        if (!is_token_address(s.pair_address))
          throw SchemaError("record " + id + ": bad pair address");
        s.date = record_date(rec, id);
        s.reserve0 = record_decimal(rec, "reserve0", id);
        s.reserve1 = record_decimal(rec, "reserve1", id);
        s.reserve_usd = record_decimal(rec, "reserveUSD", id);
        auto key = std::make_pair(s.pair_address, s.date);
        auto [it, fresh] = last.try_emplace(key, out.samples.size());
        if (fresh) {
          out.samples.push_back(std::move(s));
        } else {
          out.samples[it->second] = std::move(s);
          ++out.duplicates_dropped;
        }
      });
  std::sort(out.samples.begin(), out.samples.end(),
            [](const PairDaySample& a, const PairDaySample& b) {
              return std::tie(a.pair_address, a.date) <
                     std::tie(b.pair_address, b.date);
            });
  return out;
}

SamplesPayload<TokenDaySample> fetch_token_day_data(const FetchOptions& options,
                                                    DayRange range) {
  check_page_size(options);
  check_range(range);
  SamplesPayload<TokenDaySample> out;
  std::map<std::pair<std::string, Day>, std::size_t> last;
  out.requests = paginate(
      options, "tokenDayDatas", kTokenDaysQuery, range_variables(range),
      [&](const json& rec, const std::string& id) {
        TokenDaySample s;
        if (!rec.contains("token") || !rec["token"].is_object())
          throw SchemaError("record " + id + ": missing token object");
        s.token_address = record_string(rec["token"], "id", id);
        if (!is_token_address(s.token_address))
          throw SchemaError("record " + id + ": bad token address");
        s.date = record_date(rec, id);
        s.price_usd = record_decimal(rec, "priceUSD", id);
        auto key = std::make_pair(s.token_address, s.date);
        auto [it, fresh] = last.try_emplace(key, out.samples.size());
        if (fresh) {
          out.samples.push_back(std::move(s));
        } else {
          out.samples[it->second] = std::move(s);
          ++out.duplicates_dropped;
        }
      });
  std::sort(out.samples.begin(), out.samples.end(),
            [](const TokenDaySample& a, const TokenDaySample& b) {
              return std::tie(a.token_address, a.date) <
                     std::tie(b.token_address, b.date);
            });
  return out;
}

Dataset fetch_dataset(const FetchOptions& options, DayRange range) {
  Dataset ds;
  if (options.parallelism > 1) {
    // Cursor pagination is sequential within a query, so the bounded
    // concurrency runs the three query streams side by side.
    auto pairs_f = std::async(std::launch::async, fetch_pairs, options);
    auto days_f =
        std::async(std::launch::async, fetch_pair_day_data, options, range);
    auto tokens_f =
        std::async(std::launch::async, fetch_token_day_data, options, range);
    auto pairs = pairs_f.get();
    auto days = days_f.get();
    auto tokens = tokens_f.get();
    ds.pairs = std::move(pairs.pairs);
    ds.tokens = std::move(pairs.tokens);
    ds.pair_days = std::move(days.samples);
    ds.token_days = std::move(tokens.samples);
    ds.duplicate_rows_dropped = days.duplicates_dropped + tokens.duplicates_dropped;
  } else {
    auto pairs = fetch_pairs(options);
    auto days = fetch_pair_day_data(options, range);
    auto tokens = fetch_token_day_data(options, range);
    ds.pairs = std::move(pairs.pairs);
    ds.tokens = std::move(pairs.tokens);
    ds.pair_days = std::move(days.samples);
    ds.token_days = std::move(tokens.samples);
    ds.duplicate_rows_dropped = days.duplicates_dropped + tokens.duplicates_dropped;
  }
  return ds;
}

}  // namespace dexnet
