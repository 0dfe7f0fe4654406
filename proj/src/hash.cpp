#include "ocsw/hash.hpp"

#include <limits>
#include <stdexcept>

namespace ocsw {

namespace {

inline std::uint32_t rotl32(std::uint32_t x, int r) {
  return (x << r) | (x >> (32 - r));
}

}  // namespace

// Austin Appleby's MurmurHash3_x86_32, byte-order independent (blocks are
// assembled little-endian explicitly).
std::uint32_t murmur3_x86_32(const void* data, std::size_t len,
                             std::uint32_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  const std::size_t nblocks = len / 4;

  std::uint32_t h1 = seed;
  const std::uint32_t c1 = 0xcc9e2d51u;
  const std::uint32_t c2 = 0x1b873593u;

  for (std::size_t i = 0; i < nblocks; ++i) {
    std::uint32_t k1 = static_cast<std::uint32_t>(bytes[i * 4]) |
                       static_cast<std::uint32_t>(bytes[i * 4 + 1]) << 8 |
                       static_cast<std::uint32_t>(bytes[i * 4 + 2]) << 16 |
                       static_cast<std::uint32_t>(bytes[i * 4 + 3]) << 24;
    k1 *= c1;
    k1 = rotl32(k1, 15);
    k1 *= c2;
    h1 ^= k1;
    h1 = rotl32(h1, 13);
    h1 = h1 * 5 + 0xe6546b64u;
  }

  const unsigned char* tail = bytes + nblocks * 4;
  std::uint32_t k1 = 0;
  switch (len & 3) {
    case 3:
      k1 ^= static_cast<std::uint32_t>(tail[2]) << 16;
      [[fallthrough]];
    case 2:
      k1 ^= static_cast<std::uint32_t>(tail[1]) << 8;
      [[fallthrough]];
    case 1:
      k1 ^= static_cast<std::uint32_t>(tail[0]);
      k1 *= c1;
      k1 = rotl32(k1, 15);
      k1 *= c2;
      h1 ^= k1;
  }

  h1 ^= static_cast<std::uint32_t>(len);
  h1 ^= h1 >> 16;
  h1 *= 0x85ebca6bu;
  h1 ^= h1 >> 13;
  h1 *= 0xc2b2ae35u;
  h1 ^= h1 >> 16;
  return h1;
}

int ecmp_select(const FiveTuple& tuple, int path_count, HashStrategy strategy,
                const std::function<double(int)>& load_of) {
  if (path_count < 1)
    throw std::invalid_argument("ecmp_select: path_count must be >= 1");
  if (path_count == 1) return 0;

  // Network byte order, 13 bytes total.
  unsigned char key[13];
  key[0] = static_cast<unsigned char>(tuple.src_ip >> 24);
  key[1] = static_cast<unsigned char>(tuple.src_ip >> 16);
  key[2] = static_cast<unsigned char>(tuple.src_ip >> 8);
  key[3] = static_cast<unsigned char>(tuple.src_ip);
  key[4] = static_cast<unsigned char>(tuple.dst_ip >> 24);
  key[5] = static_cast<unsigned char>(tuple.dst_ip >> 16);
  key[6] = static_cast<unsigned char>(tuple.dst_ip >> 8);
  key[7] = static_cast<unsigned char>(tuple.dst_ip);
  key[8] = static_cast<unsigned char>(tuple.src_port >> 8);
  key[9] = static_cast<unsigned char>(tuple.src_port);
  key[10] = static_cast<unsigned char>(tuple.dst_port >> 8);
  key[11] = static_cast<unsigned char>(tuple.dst_port);
  key[12] = tuple.protocol;

  if (strategy == HashStrategy::kEcmp || !load_of)
    return static_cast<int>(murmur3_x86_32(key, sizeof key, 0) %
                            static_cast<std::uint32_t>(path_count));

  // Several salted hash rounds; keep the least congested candidate, first
  // round wins ties.
  int best = -1;
  double best_load = std::numeric_limits<double>::infinity();
  for (int round = 0; round < kRehashRounds; ++round) {
    const int candidate = static_cast<int>(
        murmur3_x86_32(key, sizeof key, static_cast<std::uint32_t>(round)) %
        static_cast<std::uint32_t>(path_count));
    const double load = load_of(candidate);
    if (load < best_load) {
      best_load = load;
      best = candidate;
    }
  }
  return best;
}

}  // namespace ocsw
