#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dexnet/dates.hpp"
#include "dexnet/fixed.hpp"

namespace dexnet {

// True for a lowercase 0x-prefixed 20-byte hex address.
bool is_token_address(std::string_view s);

struct TokenRecord {
  std::string address;
  std::string symbol;
  std::string name;
};

struct PairRecord {
  std::string pair_address;
  std::string token0;
  std::string token1;
  std::int64_t created_at = 0;  // unix seconds, UTC
};

struct PairDaySample {
  std::string pair_address;
  Day date = 0;
  Fixed6 reserve0;  // token0 units
  Fixed6 reserve1;  // token1 units
  Fixed6 reserve_usd;
};

struct TokenDaySample {
  std::string token_address;
  Day date = 0;
  Fixed6 price_usd;
};

// Mainnet addresses of the five tokens whose subgraph prices are reliable.
extern const std::vector<std::string> kDefaultTrustedTokens;  // WETH USDC USDT DAI WBTC
// Tokens excluded from attack simulations (the trusted set minus WBTC).
extern const std::vector<std::string> kDefaultProtectedTokens;

struct TrustedTokenConfig {
  std::vector<std::string> trusted = kDefaultTrustedTokens;
  // (token address, day) -> USD; consulted by the outlier filter only.
  std::map<std::pair<std::string, Day>, Fixed6> reference_prices;
  Fixed6 outlier_cap_usd = Fixed6::from_int(1'000'000'000);
  double deviation_factor = 3.0;

  bool is_trusted(const std::string& address) const;
  void validate() const;  // throws ArgumentError on a bad config
};

struct Dataset {
  std::vector<PairRecord> pairs;
  std::vector<PairDaySample> pair_days;
  std::vector<TokenDaySample> token_days;
  std::unordered_map<std::string, TokenRecord> tokens;
  std::size_t duplicate_rows_dropped = 0;
};

}  // namespace dexnet
