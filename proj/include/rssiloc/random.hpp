#pragma once

#include <cstdint>
#include <string_view>

namespace rssiloc {

/// Counter-based random stream: every value is a pure function of
/// (key, counter), so draws can be generated in any order and adding a new
/// consumer never shifts the values another consumer sees.
class CounterStream {
 public:
  constexpr explicit CounterStream(std::uint64_t key) : key_(key) {}

  /// Derives a key from a seed and up to two further identifiers.
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

  /// 64-bit id of a string (FNV-1a).
  static std::uint64_t hash_id(std::string_view id);

  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;
  /// Uniform in (0, 1].
  double uniform_open_low(std::uint64_t counter) const;
  /// Standard normal from the Box-Muller transform of counters
  /// (2c, 2c + 1).
  double normal(std::uint64_t counter) const;

 private:
  std::uint64_t key_;
};

}  // namespace rssiloc
