#include "dexnet/rng.hpp"

namespace dexnet {

std::uint64_t named_stream(std::uint64_t root_seed, std::string_view name) {
  // FNV-1a over the name, then one splitmix round folding in the root seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  Rng mix(root_seed ^ h);
  return mix.next_u64();
}

}  // namespace dexnet
