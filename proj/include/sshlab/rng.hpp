#pragma once

// Counter-style stream derivation: realization k of a run with master seed s
// always starts from the same generator state, whatever thread evaluates it.

#include <cstdint>
#include <random>

namespace sshlab {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index ^ 0xd1b54a32d192ed03ULL));
}

inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t index) {
  return std::mt19937_64(stream_seed(master_seed, index));
}

/// Uniform on [0, 1) from the top 53 bits; the standard distributions are
/// implementation-defined, this is not.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace sshlab
