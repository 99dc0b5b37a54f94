#pragma once

#include <cstdint>
#include <string_view>

namespace cxr {

/// 64-bit FNV-1a. Stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view text);

/// splitmix64 stream keyed by (seed, key). Counter-free: the same key always
/// yields the same sequence, independent of how many other keys were drawn.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::string_view key);

  std::uint64_t next();
  /// Uniform double in [0, 1) built from the top 53 bits.
  double unit();
  /// Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace cxr
