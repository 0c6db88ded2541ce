#include "schemata/packed.hpp"

#include <string>

#include "schemata/error.hpp"

namespace schemata {

BinaryCodec::BinaryCodec(const Alphabet& alphabet, std::size_t length)
    : zero_(alphabet.is_binary() ? alphabet[0] : '0'),
      one_(alphabet.is_binary() ? alphabet[1] : '1'),
      length_(length),
      full_(length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1) {
  if (!supports(alphabet, length)) {
    throw Error(ErrorCode::kInvalidConfig,
                "packed encoding needs a binary alphabet and length 1..64");
  }
  for (unsigned key = 0; key < 256; ++key) {
    const unsigned fixed = key >> 4;
    const unsigned value = key & 0xF;
    for (unsigned i = 0; i < 4; ++i) {
      nibbles_[key][i] = !((fixed >> i) & 1) ? kWildcard : ((value >> i) & 1) ? one_ : zero_;
    }
  }
}

PackedSchema BinaryCodec::encode(const Schema& s) const {
  if (s.is_empty() || s.length() != length_) {
    throw Error(ErrorCode::kLengthMismatch, "cannot pack \"" + s.to_string() + "\"");
  }
  PackedSchema p;
  for (std::size_t i = 0; i < length_; ++i) {
    const char c = s[i];
    if (c == kWildcard) continue;
    const std::uint64_t bit = std::uint64_t{1} << i;
    p.fixed |= bit;
    if (c == one_) {
      p.value |= bit;
    } else if (c != zero_) {
      throw Error(ErrorCode::kInvalidSymbol, std::string("symbol '") + c + "' is not binary");
    }
  }
  return p;
}

Schema BinaryCodec::decode(PackedSchema s) const {
  std::string cells((length_ + 3) & ~std::size_t{3}, kWildcard);
  for (std::size_t i = 0; i < length_; i += 4) {
    const auto key = ((s.fixed >> i) & 0xF) << 4 | ((s.value >> i) & 0xF);
    const auto& quad = nibbles_[key];
    cells[i] = quad[0];
    cells[i + 1] = quad[1];
    cells[i + 2] = quad[2];
    cells[i + 3] = quad[3];
  }
  cells.resize(length_);
  return Schema(std::move(cells));
}

}  // namespace schemata
