#include "dexnet/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dexnet/errors.hpp"

namespace dexnet {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_line(const std::string& line, const std::string& source,
                std::size_t line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw SchemaError(source + ": not a JSON object", line_no);
  return j;
}

std::string get_string(const json& j, const char* key, const std::string& source,
                       std::size_t line_no) {
  if (!j.contains(key) || !j[key].is_string())
    throw SchemaError(source + ": missing string field '" + key + "'", line_no);
  return j[key].get<std::string>();
}

std::string get_address(const json& j, const char* key, const std::string& source,
                        std::size_t line_no) {
  std::string s = get_string(j, key, source, line_no);
  if (!is_token_address(s))
    throw SchemaError(source + ": '" + key + "' is not a token address: " + s,
                      line_no);
  return s;
}

Fixed6 get_decimal(const json& j, const char* key, const std::string& source,
                   std::size_t line_no, bool non_negative = true) {
  std::string s = get_string(j, key, source, line_no);
  auto v = Fixed6::try_parse(s);
  if (!v)
    throw SchemaError(source + ": '" + key + "' is not a decimal: " + s, line_no);
  if (non_negative && v->is_negative())
    throw SchemaError(source + ": '" + key + "' must be non-negative: " + s,
                      line_no);
  return *v;
}

Day get_date(const json& j, const char* key, const std::string& source,
             std::size_t line_no) {
  std::string s = get_string(j, key, source, line_no);
  try {
    return parse_day(s);
  } catch (const ArgumentError& e) {
    throw SchemaError(source + ": " + e.what(), line_no);
  }
}

template <typename Fn>
void for_each_line(const std::string& content, Fn&& fn) {
  std::size_t start = 0, line_no = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    ++line_no;
    std::string_view line(content.data() + start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) fn(std::string(line), line_no);
    start = end + 1;
  }
}

TokenRecord parse_token_object(const json& j, const char* key,
                               const std::string& source, std::size_t line_no) {
  if (!j.contains(key) || !j[key].is_object())
    throw SchemaError(source + ": missing object field '" + key + "'", line_no);
  const json& t = j[key];
  TokenRecord rec;
  rec.address = get_address(t, "address", source, line_no);
  rec.symbol = get_string(t, "symbol", source, line_no);
  rec.name = get_string(t, "name", source, line_no);
  return rec;
}

// Keeps the last row per key; counts how many earlier rows were replaced.
template <typename T, typename KeyFn>
std::size_t dedup_keep_last(std::vector<T>& rows, KeyFn&& key) {
  std::map<decltype(key(rows.front())), std::size_t> last;
  for (std::size_t i = 0; i < rows.size(); ++i) last[key(rows[i])] = i;
  if (last.size() == rows.size()) return 0;
  std::size_t dropped = rows.size() - last.size();
  std::vector<T> kept;
  kept.reserve(last.size());
  for (auto& [k, idx] : last) kept.push_back(std::move(rows[idx]));
  rows = std::move(kept);
  return dropped;
}

}  // namespace

std::vector<PairRecord> parse_pairs_jsonl(
    const std::string& content, const std::string& source,
    std::unordered_map<std::string, TokenRecord>& tokens_out) {
  std::vector<PairRecord> pairs;
  std::set<std::string> seen_pairs;
  std::map<std::pair<std::string, std::string>, std::string> seen_token_pairs;
  for_each_line(content, [&](const std::string& line, std::size_t line_no) {
    json j = parse_line(line, source, line_no);
    PairRecord rec;
    rec.pair_address = get_address(j, "pair", source, line_no);
    TokenRecord t0 = parse_token_object(j, "token0", source, line_no);
    TokenRecord t1 = parse_token_object(j, "token1", source, line_no);
    rec.token0 = t0.address;
    rec.token1 = t1.address;
    std::string ts = get_string(j, "createdAtTimestamp", source, line_no);
    try {
      std::size_t pos = 0;
      rec.created_at = std::stoll(ts, &pos);
      if (pos != ts.size() || rec.created_at < 0) throw std::invalid_argument(ts);
    } catch (const std::exception&) {
      throw SchemaError(source + ": bad createdAtTimestamp: " + ts, line_no);
    }
    if (rec.token0 == rec.token1)
      throw SchemaError(source + ": pair " + rec.pair_address +
                            " has identical tokens",
                        line_no);
    if (!seen_pairs.insert(rec.pair_address).second)
      throw SchemaError(source + ": duplicate pair " + rec.pair_address, line_no);
    auto key = std::minmax(rec.token0, rec.token1);
    auto [it, fresh] = seen_token_pairs.emplace(key, rec.pair_address);
    if (!fresh)
      throw SchemaError(source + ": pairs " + it->second + " and " +
                            rec.pair_address + " cover the same token pair",
                        line_no);
    tokens_out.insert_or_assign(t0.address, std::move(t0));
    tokens_out.insert_or_assign(t1.address, std::move(t1));
    pairs.push_back(std::move(rec));
  });
  std::sort(pairs.begin(), pairs.end(),
            [](const PairRecord& a, const PairRecord& b) {
              return a.pair_address < b.pair_address;
            });
  return pairs;
}

std::vector<PairDaySample> parse_pair_days_jsonl(const std::string& content,
                                                 const std::string& source) {
  std::vector<PairDaySample> rows;
  for_each_line(content, [&](const std::string& line, std::size_t line_no) {
    json j = parse_line(line, source, line_no);
    PairDaySample s;
    s.pair_address = get_address(j, "pair", source, line_no);
    s.date = get_date(j, "date", source, line_no);
    s.reserve0 = get_decimal(j, "reserve0", source, line_no);
    s.reserve1 = get_decimal(j, "reserve1", source, line_no);
    s.reserve_usd = get_decimal(j, "reserveUSD", source, line_no);
    rows.push_back(std::move(s));
  });
  return rows;
}

std::vector<TokenDaySample> parse_token_days_jsonl(const std::string& content,
                                                   const std::string& source) {
  std::vector<TokenDaySample> rows;
  for_each_line(content, [&](const std::string& line, std::size_t line_no) {
    json j = parse_line(line, source, line_no);
    TokenDaySample s;
    s.token_address = get_address(j, "token", source, line_no);
    s.date = get_date(j, "date", source, line_no);
    s.price_usd = get_decimal(j, "priceUSD", source, line_no);
    rows.push_back(std::move(s));
  });
  return rows;
}

Dataset load_fixture(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  Dataset ds;
  const fs::path pairs_path = dir / "pairs.jsonl";
  if (!fs::exists(pairs_path))
    throw ArgumentError("dataset has no pairs.jsonl: " + pairs_path.string());
  ds.pairs = parse_pairs_jsonl(read_file(pairs_path), "pairs.jsonl", ds.tokens);

  std::set<std::string> known_pairs;
  for (const auto& p : ds.pairs) known_pairs.insert(p.pair_address);

  const fs::path days_path = dir / "pair_days.jsonl";
  if (fs::exists(days_path)) {
    ds.pair_days = parse_pair_days_jsonl(read_file(days_path), "pair_days.jsonl");
    for (const auto& s : ds.pair_days)
      if (!known_pairs.count(s.pair_address))
        throw SchemaError("pair_days.jsonl: sample references unknown pair " +
                          s.pair_address);
    ds.duplicate_rows_dropped +=
        dedup_keep_last(ds.pair_days, [](const PairDaySample& s) {
          return std::make_pair(s.pair_address, s.date);
        });
  }

  const fs::path tokens_path = dir / "token_days.jsonl";
  if (fs::exists(tokens_path)) {
    ds.token_days =
        parse_token_days_jsonl(read_file(tokens_path), "token_days.jsonl");
    ds.duplicate_rows_dropped +=
        dedup_keep_last(ds.token_days, [](const TokenDaySample& s) {
          return std::make_pair(s.token_address, s.date);
        });
  }
  return ds;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  using ordered_json = nlohmann::ordered_json;
  std::filesystem::create_directories(dir);

  std::string pairs_out;
  for (const auto& p : dataset.pairs) {
    auto token_json = [&](const std::string& address) {
      TokenRecord fallback;
      fallback.address = address;
      auto it = dataset.tokens.find(address);
      const TokenRecord& t = it == dataset.tokens.end() ? fallback : it->second;
      return ordered_json{
          {"address", t.address}, {"symbol", t.symbol}, {"name", t.name}};
    };
    ordered_json j;
    j["pair"] = p.pair_address;
    j["token0"] = token_json(p.token0);
    j["token1"] = token_json(p.token1);
    j["createdAtTimestamp"] = std::to_string(p.created_at);
    pairs_out += j.dump() + "\n";
  }

  std::string pair_days_out;
  for (const auto& s : dataset.pair_days) {
    ordered_json j;
    j["pair"] = s.pair_address;
    j["date"] = day_str(s.date);
    j["reserve0"] = s.reserve0.str();
    j["reserve1"] = s.reserve1.str();
    j["reserveUSD"] = s.reserve_usd.str();
    pair_days_out += j.dump() + "\n";
  }

  std::string token_days_out;
  for (const auto& s : dataset.token_days) {
    ordered_json j;
    j["token"] = s.token_address;
    j["date"] = day_str(s.date);
    j["priceUSD"] = s.price_usd.str();
    token_days_out += j.dump() + "\n";
  }

  auto write = [](const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write " + path.string());
    out << content;
  };
  write(dir / "pairs.jsonl", pairs_out);
  write(dir / "pair_days.jsonl", pair_days_out);
  write(dir / "token_days.jsonl", token_days_out);
}

std::map<std::pair<std::string, Day>, Fixed6> load_reference_prices(
    const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw ArgumentError("cannot open " + csv_path.string());
  std::map<std::pair<std::string, Day>, Fixed6> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "token_address,date,price_usd")
        throw SchemaError("reference prices: unexpected header '" + line + "'", 1);
      continue;
    }
    std::size_t c1 = line.find(',');
    std::size_t c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw SchemaError("reference prices: expected 3 columns", line_no);
    std::string addr = line.substr(0, c1);
    std::string date = line.substr(c1 + 1, c2 - c1 - 1);
    std::string price = line.substr(c2 + 1);
    if (!is_token_address(addr))
      throw SchemaError("reference prices: bad address " + addr, line_no);
    auto p = Fixed6::try_parse(price);
    if (!p || p->is_negative())
      throw SchemaError("reference prices: bad price " + price, line_no);
    try {
      out[{addr, parse_day(date)}] = *p;
    } catch (const ArgumentError& e) {
      throw SchemaError(std::string("reference prices: ") + e.what(), line_no);
    }
  }
  return out;
}

Fixed6 pool_tvl(Fixed6 price_a, Fixed6 reserve_a, Fixed6 price_b,
                Fixed6 reserve_b) {
  for (Fixed6 v : {price_a, reserve_a, price_b, reserve_b})
    if (v.is_negative())
      throw ArgumentError("pool TVL inputs must be non-negative");
  return price_a.mul(reserve_a) + price_b.mul(reserve_b);
}

Fixed6 market_tvl(std::span<const Fixed6> pool_tvls) {
  Fixed6 total;
  for (Fixed6 v : pool_tvls) {
    if (v.is_negative()) throw ArgumentError("pool TVL must be non-negative");
    total += v;
  }
  return total;
}

FilterResult filter_outliers(std::span<const PairDaySample> pair_days,
                             const std::vector<PairRecord>& pairs,
                             const TrustedTokenConfig& config) {
  config.validate();
  std::unordered_map<std::string, const PairRecord*> by_address;
  by_address.reserve(pairs.size());
  for (const auto& p : pairs) by_address[p.pair_address] = &p;

  FilterResult out;
  for (const auto& sample : pair_days) {
    auto it = by_address.find(sample.pair_address);
    if (it == by_address.end())
      throw DataIntegrityError("day sample references unknown pair " +
                               sample.pair_address);
    const PairRecord& pair = *it->second;
    const bool trusted0 = config.is_trusted(pair.token0);
    const bool trusted1 = config.is_trusted(pair.token1);

    if (!trusted0 && !trusted1 && sample.reserve_usd > config.outlier_cap_usd) {
      out.rejected.push_back({sample, "cap-exceeded"});
      continue;
    }

    // Balanced-pool implied price of a trusted side: reserveUSD / (2 * R).
    bool deviates = false;
    for (int side = 0; side < 2 && !deviates; ++side) {
      const bool trusted = side == 0 ? trusted0 : trusted1;
      if (!trusted) continue;
      const std::string& token = side == 0 ? pair.token0 : pair.token1;
      const Fixed6 reserve = side == 0 ? sample.reserve0 : sample.reserve1;
      if (reserve.is_zero()) continue;
      auto ref = config.reference_prices.find({token, sample.date});
      if (ref == config.reference_prices.end() || ref->second.is_zero()) continue;
      const double implied = ratio(sample.reserve_usd.half(), reserve);
      const double reference = ref->second.to_double();
      if (implied > reference * config.deviation_factor ||
          implied < reference / config.deviation_factor)
        deviates = true;
    }
    if (deviates) {
      out.rejected.push_back({sample, "price-deviation"});
      continue;
    }
    out.kept.push_back(sample);
  }
  return out;
}

PoolContribution pool_contributions(
    const PairRecord& pair, const PairDaySample& sample,
    const std::unordered_map<std::string, Fixed6>& trusted_prices,
    const TrustedTokenConfig& config) {
  const bool trusted0 = config.is_trusted(pair.token0);
  const bool trusted1 = config.is_trusted(pair.token1);
  PoolContribution out;

  auto price_of = [&](const std::string& token) {
    auto it = trusted_prices.find(token);
    if (it == trusted_prices.end())
      throw ConfigError("missing trusted-token price for " + token + " on " +
                        day_str(sample.date));
    return it->second;
  };

  if (trusted0 && trusted1) {
    out.token_a = pair.token0;
    out.token_b = pair.token1;
    out.contribution_a = price_of(pair.token0).mul(sample.reserve0);
    out.contribution_a_preclamp = out.contribution_a;
    out.contribution_b = price_of(pair.token1).mul(sample.reserve1);
    return out;
  }
  if (trusted0 || trusted1) {
    // A is the untrusted side whose value is inferred from the pool total.
    const bool b_is_token0 = trusted0;
    out.token_a = b_is_token0 ? pair.token1 : pair.token0;
    out.token_b = b_is_token0 ? pair.token0 : pair.token1;
    const Fixed6 reserve_b = b_is_token0 ? sample.reserve0 : sample.reserve1;
    out.contribution_b = price_of(out.token_b).mul(reserve_b);
    out.contribution_a_preclamp = sample.reserve_usd - out.contribution_b;
    if (out.contribution_a_preclamp.is_negative()) {
      out.contribution_a = Fixed6();
      out.clamped = true;
    } else {
      out.contribution_a = out.contribution_a_preclamp;
    }
    return out;
  }
  out.token_a = pair.token0;
  out.token_b = pair.token1;
  out.contribution_a = sample.reserve_usd.half();
  out.contribution_a_preclamp = out.contribution_a;
  out.contribution_b = sample.reserve_usd.half();
  return out;
}

TokenTvlResult reconstruct_token_tvl(const std::vector<PairRecord>& pairs,
                                     std::span<const PairDaySample> pair_days,
                                     std::span<const TokenDaySample> token_days,
                                     const TrustedTokenConfig& config) {
  config.validate();
  TokenTvlResult out;
  if (pair_days.empty()) return out;

  const Day date = pair_days.front().date;
  for (const auto& s : pair_days)
    if (s.date != date)
      throw ArgumentError("reconstruct_token_tvl expects samples of one date; "
                          "got " +
                          day_str(date) + " and " + day_str(s.date));

  std::unordered_map<std::string, const PairRecord*> by_address;
  by_address.reserve(pairs.size());
  for (const auto& p : pairs) by_address[p.pair_address] = &p;

  std::unordered_map<std::string, Fixed6> trusted_prices;
  for (const auto& s : token_days)
    if (s.date == date && config.is_trusted(s.token_address))
      trusted_prices[s.token_address] = s.price_usd;

  for (const auto& sample : pair_days) {
    auto it = by_address.find(sample.pair_address);
    if (it == by_address.end())
      throw DataIntegrityError("day sample references unknown pair " +
                               sample.pair_address);
    const PairRecord& pair = *it->second;
    ++out.pools_total;
    if (config.is_trusted(pair.token0) || config.is_trusted(pair.token1))
      ++out.pools_with_trusted;
    PoolContribution c = pool_contributions(pair, sample, trusted_prices, config);
    if (c.clamped) ++out.clamped_pools;
    out.tvl[c.token_a] += c.contribution_a;
    out.tvl[c.token_b] += c.contribution_b;
  }
  return out;
}

}  // namespace dexnet
