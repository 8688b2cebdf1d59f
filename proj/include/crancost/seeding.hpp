#pragma once

#include <cstdint>
#include <random>

namespace crancost {

using Engine = std::mt19937_64;

/// Sub-seed derivation. Every random stream in the library is addressed by
/// (master seed, stream id, counter); the result is
///   splitmix64(master ^ splitmix64(stream * 2^32 + counter)).
/// Stream ids are fixed per consumer (see `Stream`), the counter is the
/// replication or chunk index, so layers stay independent and a run is
/// reproducible regardless of how work is split across threads.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) noexcept;

namespace stream {
inline constexpr std::uint64_t kUsers = 0;
inline constexpr std::uint64_t kBaseStations = 1;
inline constexpr std::uint64_t kBackhaul = 2;
inline constexpr std::uint64_t kDataCenters = 3;
inline constexpr std::uint64_t kReplication = 16;
inline constexpr std::uint64_t kComplexity = 32;
inline constexpr std::uint64_t kClusterOffspring = 48;
}  // namespace stream

}  // namespace crancost
