#include "dexnet/types.hpp"

#include <set>

#include "dexnet/errors.hpp"

namespace dexnet {

bool is_token_address(std::string_view s) {
  if (s.size() != 42 || s[0] != '0' || s[1] != 'x') return false;
  for (std::size_t i = 2; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!ok) return false;
  }
  return true;
}

const std::vector<std::string> kDefaultTrustedTokens = {
    "0xc02aaa39b223fe8d0a0e5c4f27ead9083c756cc2",  // WETH
    "0xa0b86991c6218b36c1d19d4a2e9eb0ce3606eb48",  // USDC
    "0xdac17f958d2ee523a2206206994597c13d831ec7",  // USDT
    "0x6b175474e89094c44da98b954eedeac495271d0f",  // DAI
    "0x2260fac5e5542a773aa44fbcfedf7c193bc2c599",  // WBTC
};

const std::vector<std::string> kDefaultProtectedTokens = {
    "0xc02aaa39b223fe8d0a0e5c4f27ead9083c756cc2",  // WETH
    "0xdac17f958d2ee523a2206206994597c13d831ec7",  // USDT
    "0xa0b86991c6218b36c1d19d4a2e9eb0ce3606eb48",  // USDC
    "0x6b175474e89094c44da98b954eedeac495271d0f",  // DAI
};

bool TrustedTokenConfig::is_trusted(const std::string& address) const {
  for (const auto& t : trusted)
    if (t == address) return true;
  return false;
}

void TrustedTokenConfig::validate() const {
  if (trusted.empty()) throw ArgumentError("trusted token list must not be empty");
  std::set<std::string> seen;
  for (const auto& t : trusted) {
    if (!is_token_address(t)) throw ArgumentError("bad trusted token address: " + t);
    if (!seen.insert(t).second) throw ArgumentError("duplicate trusted token: " + t);
  }
  if (!(deviation_factor > 1.0))
    throw ArgumentError("deviation factor must be > 1");
  if (outlier_cap_usd <= Fixed6())
    throw ArgumentError("outlier cap must be positive");
}

}  // namespace dexnet
