#pragma once

#include <cstdint>
#include <numbers>

#include "lqcs/common.hpp"

namespace lqcs {

/// Counter-based deterministic random values. Every draw is a pure
/// function of (seed, stream, index) - no sequential state - so parallel
/// or reordered trials reproduce bit-identically.
namespace rng {

/// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline uint64_t mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t hash3(uint64_t seed, uint64_t stream, uint64_t index) {
  uint64_t z = mix(seed ^ 0x8f1bbcdcbfa53e0bull);
  z = mix(z ^ stream);
  return mix(z ^ index);
}

/// Uniform draw in (0,1]; never 0, so logs are safe.
inline double uniform01(uint64_t seed, uint64_t stream, uint64_t index) {
  const uint64_t bits = hash3(seed, stream, index) >> 11;  // top 53 bits
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on the uniforms at (2*index, 2*index+1).
inline double normal(uint64_t seed, uint64_t stream, uint64_t index) {
  const double u1 = uniform01(seed, stream, 2 * index);
  const double u2 = uniform01(seed, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

/// Derive an independent child seed, e.g. one per trial.
inline uint64_t derive(uint64_t seed, uint64_t a, uint64_t b = 0) {
  return hash3(seed, a, b);
}

// Stream ids reserved by the generators in this library.
constexpr uint64_t kMatrixRowStream = 0x100;      // + row index
constexpr uint64_t kSignalSupportStream = 0x01;
constexpr uint64_t kSignalValueStream = 0x02;
constexpr uint64_t kGenericStream = 0x03;

}  // namespace rng
}  // namespace lqcs
