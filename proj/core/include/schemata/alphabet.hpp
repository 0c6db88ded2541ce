#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schemata {

inline constexpr char kWildcard = '*';
// Textual token for the empty schema in CLI and CSV contexts.
inline constexpr char kEmptyToken = '^';

// An ordered finite set of single-character symbols. Never contains the
// wildcard or the empty-schema token; always has at least two symbols.
class Alphabet {
 public:
  explicit Alphabet(std::string symbols);

  static Alphabet binary();

  // Distinct non-wildcard symbols of the given words in first-seen order.
  // Inputs drawn only from {0,1} always infer the binary alphabet so that a
  // population like {000} still has |Σ| = 2.
  static Alphabet infer(std::span<const std::string> words);

  std::size_t size() const noexcept { return symbols_.size(); }
  char operator[](std::size_t i) const { return symbols_[i]; }
  std::string_view symbols() const noexcept { return symbols_; }

  bool contains(char c) const noexcept { return index_of(c).has_value(); }
  std::optional<std::size_t> index_of(char c) const noexcept;

  bool is_binary() const noexcept { return symbols_.size() == 2; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string symbols_;
};

}  // namespace schemata
