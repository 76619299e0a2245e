#pragma once

#include <cstdint>
#include <random>

namespace tfim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for stream `counter` under `seed`. Streams do not
/// depend on the order in which they are created.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t counter) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x632be59bd9b4e019ULL)));
}

}  // namespace tfim
