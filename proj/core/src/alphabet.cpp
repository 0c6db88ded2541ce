#include "schemata/alphabet.hpp"

#include <algorithm>

#include "schemata/error.hpp"

namespace schemata {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidAlphabet: return "invalid alphabet";
    case ErrorCode::kInvalidSymbol: return "invalid symbol";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kBudgetExceeded: return "budget exceeded";
    case ErrorCode::kNotAWord: return "not a word";
    case ErrorCode::kEmptySchema: return "empty schema";
    case ErrorCode::kEmptyPopulation: return "empty population";
    case ErrorCode::kUndefined: return "undefined";
    case ErrorCode::kElementNotInLattice: return "element not in lattice";
    case ErrorCode::kTooManyCutPoints: return "too many cut points";
    case ErrorCode::kNonBinaryWord: return "non-binary word";
    case ErrorCode::kNoInstances: return "no instances";
    case ErrorCode::kInvalidConfig: return "invalid config";
  }
  return "unknown error";
}

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) {
    throw Error(ErrorCode::kInvalidAlphabet,
                "alphabet needs at least two symbols, got \"" + symbols_ + "\"");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const char c = symbols_[i];
    if (c == kWildcard || c == kEmptyToken) {
      throw Error(ErrorCode::kInvalidAlphabet,
                  std::string("alphabet must not contain '") + c + "'");
    }
    if (static_cast<unsigned char>(c) <= ' ') {
      throw Error(ErrorCode::kInvalidAlphabet, "alphabet symbols must be printable");
    }
    if (symbols_.find(c, i + 1) != std::string::npos) {
      throw Error(ErrorCode::kInvalidAlphabet,
                  std::string("duplicate alphabet symbol '") + c + "'");
    }
  }
}

Alphabet Alphabet::binary() { return Alphabet("01"); }

Alphabet Alphabet::infer(std::span<const std::string> words) {
  std::string seen;
  for (const auto& w : words) {
    for (char c : w) {
      if (c == kWildcard) continue;
      if (seen.find(c) == std::string::npos) seen.push_back(c);
    }
  }
  if (std::all_of(seen.begin(), seen.end(), [](char c) { return c == '0' || c == '1'; })) {
    return binary();
  }
  if (seen.size() < 2) {
    throw Error(ErrorCode::kInvalidAlphabet,
                "cannot infer an alphabet from a single symbol; pass one explicitly");
  }
  return Alphabet(std::move(seen));
}

std::optional<std::size_t> Alphabet::index_of(char c) const noexcept {
  const auto pos = symbols_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return pos;
}

}  // namespace schemata
