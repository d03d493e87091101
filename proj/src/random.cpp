#include "rssiloc/random.hpp"

#include <cmath>
#include <numbers>

namespace rssiloc {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  // splitmix64 finalizer
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t CounterStream::derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t k = mix64(seed + kGolden);
  k = mix64(k ^ (a + kGolden));
  k = mix64(k ^ (b + 2 * kGolden));
  return k;
}

std::uint64_t CounterStream::hash_id(std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t CounterStream::bits(std::uint64_t counter) const {
  return mix64(key_ + (counter + 1) * kGolden);
}

double CounterStream::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterStream::uniform_open_low(std::uint64_t counter) const {
  return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
}

double CounterStream::normal(std::uint64_t counter) const {
  const double u1 = uniform_open_low(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rssiloc
