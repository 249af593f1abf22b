#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "dexnet/types.hpp"

namespace dexnet {

struct FetchOptions {
  std::string endpoint;  // e.g. http://host:port/subgraphs/... ; may come
                         // from DEXNET_SUBGRAPH_URL
  std::string api_key;   // optional bearer token (DEXNET_SUBGRAPH_KEY)
  int page_size = 1000;  // records per request, 1..1000
  int max_attempts = 3;
  int backoff_ms = 50;
  int parallelism = 4;  // concurrent query streams in fetch_dataset
};

struct DayRange {
  Day start = 0;
  Day end = 0;
};

struct PairsPayload {
  std::vector<PairRecord> pairs;
  std::unordered_map<std::string, TokenRecord> tokens;
  std::size_t requests = 0;
};

template <typename T>
struct SamplesPayload {
  std::vector<T> samples;
  std::size_t requests = 0;
  std::size_t duplicates_dropped = 0;
};

// All fetches paginate with an id cursor (id_gt) in ascending id order and
// return deterministically sorted records. Transport failures are retried
// up to max_attempts and then surface as TransportError; malformed records
// raise SchemaError naming the record id.
PairsPayload fetch_pairs(const FetchOptions& options);
SamplesPayload<PairDaySample> fetch_pair_day_data(const FetchOptions& options,
                                                  DayRange range);
SamplesPayload<TokenDaySample> fetch_token_day_data(const FetchOptions& options,
                                                    DayRange range);

// Runs the three fetches (concurrently when options.parallelism > 1) and
// assembles a validated Dataset.
Dataset fetch_dataset(const FetchOptions& options, DayRange range);

}  // namespace dexnet
