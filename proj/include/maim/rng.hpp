#pragma once

#include <cstdint>
#include <random>

namespace maim {

using Rng = std::mt19937_64;

// splitmix64 step; used only to derive stream seeds, not to generate samples.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Collapses (master seed, stream tag, counters) into one well-mixed 64-bit
// seed. Distinct argument tuples give independent streams, so parallel and
// serial task orders consume identical random sequences.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t tag,
                              std::uint64_t k1 = 0, std::uint64_t k2 = 0) {
  std::uint64_t x = splitmix64(master);
  x = splitmix64(x ^ tag);
  x = splitmix64(x ^ k1);
  x = splitmix64(x ^ k2);
  return x;
}

inline Rng make_stream(std::uint64_t master, std::uint64_t tag,
                       std::uint64_t k1 = 0, std::uint64_t k2 = 0) {
  return Rng(mix_seed(master, tag, k1, k2));
}

// Stream tags. Profiles depend only on (master, realization) so runs that
// differ in grid density or SNR plan still draw identical channels.
inline constexpr std::uint64_t kStreamProfile = 0x70726f66696c65ULL;
inline constexpr std::uint64_t kStreamSymbols = 0x73796d626f6c73ULL;

}  // namespace maim
