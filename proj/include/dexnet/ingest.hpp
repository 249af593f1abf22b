#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dexnet/types.hpp"

namespace dexnet {

// Loads pairs.jsonl / pair_days.jsonl / token_days.jsonl from a dataset
// directory. Validates addresses, dates and numeric fields (errors carry the
// file and line), rejects duplicate pairs and self-loops, and drops
// duplicate (key, date) day rows keeping the last one, counting them in
// Dataset::duplicate_rows_dropped. Missing day files are treated as empty;
// a missing pairs.jsonl is an error.
Dataset load_fixture(const std::filesystem::path& dataset_dir);

// Parses one JSON-Lines file worth of records; exposed for the fetch layer
// and tests.
std::vector<PairRecord> parse_pairs_jsonl(
    const std::string& content, const std::string& source_name,
    std::unordered_map<std::string, TokenRecord>& tokens_out);
std::vector<PairDaySample> parse_pair_days_jsonl(const std::string& content,
                                                 const std::string& source_name);
std::vector<TokenDaySample> parse_token_days_jsonl(const std::string& content,
                                                   const std::string& source_name);

// Writes the three JSON-Lines files into a directory in the exact format
// load_fixture reads back. Numbers are serialized as decimal strings.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

// reference prices CSV: header token_address,date,price_usd
std::map<std::pair<std::string, Day>, Fixed6> load_reference_prices(
    const std::filesystem::path& csv_path);

// P_A*R_A + P_B*R_B. Throws ArgumentError on negative inputs.
Fixed6 pool_tvl(Fixed6 price_a, Fixed6 reserve_a, Fixed6 price_b, Fixed6 reserve_b);

// Arithmetic sum; throws ArgumentError on negative inputs.
Fixed6 market_tvl(std::span<const Fixed6> pool_tvls);

struct RejectedSample {
  PairDaySample sample;
  std::string reason;  // "cap-exceeded" or "price-deviation"
};

struct FilterResult {
  std::vector<PairDaySample> kept;
  std::vector<RejectedSample> rejected;
};

// Drops day samples with implausible reserveUSD: (a) pools with no trusted
// token whose reserveUSD exceeds the configured cap; (b) pools whose implied
// trusted-token price (reserveUSD / (2 * trusted reserve), the balanced-pool
// reading) deviates from the configured reference price by more than the
// deviation factor. Kept and rejected partition the input.
FilterResult filter_outliers(std::span<const PairDaySample> pair_days,
                             const std::vector<PairRecord>& pairs,
                             const TrustedTokenConfig& config);

struct PoolContribution {
  std::string token_a;  // the side whose value is inferred
  std::string token_b;
  Fixed6 contribution_a;          // clamped at 0
  Fixed6 contribution_a_preclamp;  // TVL_LP - P_B*R_B, may be negative
  Fixed6 contribution_b;
  bool clamped = false;
};

// Per-pool split of a day sample's value between its two tokens. For a pool
// with exactly one trusted token B, side A gets TVL_LP - P_B*R_B (clamped at
// zero) and B gets P_B*R_B; with two trusted tokens each side gets P*R; with
// none, each side gets reserveUSD/2.
PoolContribution pool_contributions(
    const PairRecord& pair, const PairDaySample& sample,
    const std::unordered_map<std::string, Fixed6>& trusted_prices,
    const TrustedTokenConfig& config);

struct TokenTvlResult {
  std::unordered_map<std::string, Fixed6> tvl;  // token address -> USD
  std::size_t clamped_pools = 0;
  std::size_t pools_total = 0;
  std::size_t pools_with_trusted = 0;
};

// Token TVL for one day: the sum of the token's per-pool contributions.
// `pair_days` must be the (filtered) samples of a single date; trusted-token
// prices for that date come from `token_days`. Throws ConfigError when a
// needed trusted-token price is missing and DataIntegrityError on samples
// referencing unknown pairs.
TokenTvlResult reconstruct_token_tvl(const std::vector<PairRecord>& pairs,
                                     std::span<const PairDaySample> pair_days,
                                     std::span<const TokenDaySample> token_days,
                                     const TrustedTokenConfig& config);

}  // namespace dexnet
