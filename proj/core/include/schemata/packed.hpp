#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "schemata/alphabet.hpp"
#include "schemata/schema.hpp"

namespace schemata {

// Non-empty binary schema of length ≤ 64 as two bitmasks: bit i of `fixed`
// is set when cell i is fixed, and then bit i of `value` holds the symbol
// index. Bits at wildcard or out-of-range positions are always zero in both.
struct PackedSchema {
  std::uint64_t fixed = 0;
  std::uint64_t value = 0;

  friend bool operator==(PackedSchema, PackedSchema) = default;
};

inline PackedSchema join(PackedSchema x, PackedSchema y) noexcept {
  const std::uint64_t fixed = x.fixed & y.fixed & ~(x.value ^ y.value);
  return {fixed, x.value & fixed};
}

inline bool leq(PackedSchema a, PackedSchema b) noexcept {
  return (a.fixed & b.fixed) == b.fixed && ((a.value ^ b.value) & b.fixed) == 0;
}

// Word packed as its value mask; `s` matches it when every fixed cell agrees.
inline bool matches(std::uint64_t word, PackedSchema s) noexcept {
  return (word & s.fixed) == s.value;
}

inline int order(PackedSchema s) noexcept { return std::popcount(s.fixed); }

// Requires order(s) ≥ 1.
inline int defining_length(PackedSchema s) noexcept {
  return (63 - std::countl_zero(s.fixed)) - std::countr_zero(s.fixed);
}

struct PackedHash {
  std::size_t operator()(PackedSchema s) const noexcept {
    std::uint64_t h = s.fixed * 0x9e3779b97f4a7c15ULL;
    h ^= s.value + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
  }
};

// Converts between Schema and PackedSchema for one binary alphabet and length.
class BinaryCodec {
 public:
  BinaryCodec(const Alphabet& alphabet, std::size_t length);

  static bool supports(const Alphabet& alphabet, std::size_t length) noexcept {
    return alphabet.is_binary() && length >= 1 && length <= 64;
  }

  std::size_t length() const noexcept { return length_; }
  std::uint64_t full_mask() const noexcept { return full_; }

  // `s` must be non-empty and of the codec's length.
  PackedSchema encode(const Schema& s) const;
  Schema decode(PackedSchema s) const;

 private:
  char zero_;
  char one_;
  std::size_t length_;
  std::uint64_t full_;
  // Four decoded cells for each (fixed nibble << 4 | value nibble).
  std::array<std::array<char, 4>, 256> nibbles_{};
};

}  // namespace schemata
