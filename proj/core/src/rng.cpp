#include "workcell/rng.hpp"

namespace workcell {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t index) {
  // FNV-1a over the tag, then two splitmix rounds to decorrelate streams.
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  uint64_t state = base ^ h;
  splitmix64(state);
  state ^= index * 0x9e3779b97f4a7c15ull;
  return splitmix64(state);
}

int Rng::uniform_int(int lo, int hi) {
  const uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  if (range == 0) return lo;  // full 64-bit range cannot occur with int bounds
  const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return lo + static_cast<int>(v % range);
}

}  // namespace workcell
