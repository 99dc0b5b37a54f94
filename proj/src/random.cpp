#include "cxr/random.hpp"

namespace cxr {
namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

KeyedRng::KeyedRng(std::uint64_t seed, std::string_view key)
    : state_(mix(seed) ^ fnv1a64(key)) {}

std::uint64_t KeyedRng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double KeyedRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t KeyedRng::below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace cxr
