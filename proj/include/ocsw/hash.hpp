#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace ocsw {

/// MurmurHash3 x86_32 (Austin Appleby's public-domain function).
std::uint32_t murmur3_x86_32(const void* data, std::size_t len,
                             std::uint32_t seed);

/// The classic ECMP hash factor.
struct FiveTuple {
  std::uint32_t src_ip = 0;
  std::uint32_t dst_ip = 0;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint8_t protocol = 6;
};

enum class HashStrategy {
  kEcmp,       // single hash, modulo path count
  kRehashing,  // several salted hashes, pick the least congested candidate
};

inline constexpr int kRehashRounds = 4;

/// Path index for a flow. `load_of` reports the current congestion of a
/// candidate path and is only consulted by the rehashing strategy; ties go
/// to the earliest candidate round.
int ecmp_select(const FiveTuple& tuple, int path_count, HashStrategy strategy,
                const std::function<double(int)>& load_of = {});

}  // namespace ocsw
