#pragma once

#include <cstdint>
#include <random>

namespace xyz {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under `master`; streams are independent of how
/// work is split across threads.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline std::mt19937_64 stream_rng(std::uint64_t master, std::uint64_t index) {
  return std::mt19937_64(derive_seed(master, index));
}

}  // namespace xyz
