#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schemata/alphabet.hpp"

namespace schemata {

// A fixed-length word over Σ ∪ {*}, or the empty schema ε_*.
//
// The empty schema carries no length of its own: it is stored as zero cells
// and every operation that needs the ambient length takes it explicitly.
// Equality and hashing are cell-by-cell; ε_* equals only ε_*.
class Schema {
 public:
  // Constructs ε_*.
  Schema() = default;

  // Cells use `*` for the wildcard. Symbols are not checked against an
  // alphabet here; use parse_schema() for validated input.
  explicit Schema(std::string cells);

  static Schema empty() { return Schema(); }

  bool is_empty() const noexcept { return cells_.empty(); }
  // 0 for ε_*.
  std::size_t length() const noexcept { return cells_.size(); }
  std::string_view cells() const noexcept { return cells_; }
  char operator[](std::size_t i) const { return cells_[i]; }

  bool is_wildcard(std::size_t i) const { return cells_[i] == kWildcard; }
  // True for a non-empty schema without wildcards.
  bool is_word() const noexcept;

  // Textual form: the cells, or `^` for ε_*.
  std::string to_string() const;

  friend bool operator==(const Schema&, const Schema&) = default;
  friend std::strong_ordering operator<=>(const Schema&, const Schema&) = default;

 private:
  std::string cells_;
};

// Sort key used by lattice dumps: (antiorder, lexicographic), so ε_* first.
struct RankOrder {
  bool operator()(const Schema& a, const Schema& b) const;
};

Schema parse_schema(std::string_view text, const Alphabet& alphabet);
// Like parse_schema() but additionally rejects wildcards and ε_*.
Schema parse_word(std::string_view text, const Alphabet& alphabet);

// A duplicate-free set of equal-length words, kept sorted.
class WordSet {
 public:
  WordSet() = default;
  explicit WordSet(std::vector<Schema> words);
  WordSet(std::initializer_list<std::string_view> words);

  // Parses and validates every word against the alphabet.
  static WordSet parse(std::span<const std::string> words, const Alphabet& alphabet);

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  // 0 for the empty set.
  std::size_t length() const noexcept { return length_; }
  bool contains(const Schema& word) const;

  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }
  const Schema& operator[](std::size_t i) const { return words_[i]; }
  std::span<const Schema> words() const noexcept { return words_; }

  friend bool operator==(const WordSet&, const WordSet&) = default;

 private:
  std::vector<Schema> words_;
  std::size_t length_ = 0;
};

// ↑s: every word matching s. Fails with kBudgetExceeded if |Σ|^antiorder(s)
// exceeds `cap`, before enumerating anything.
WordSet expand(const Schema& s, const Alphabet& alphabet, std::size_t cap);

// ↓A: position i keeps the common symbol when all words agree there, else *.
Schema compress(const WordSet& words);
Schema compress(std::span<const Schema> words);

// a ≤ b, i.e. ↑a ⊆ ↑b, decided character-wise.
bool leq(const Schema& a, const Schema& b);

// Position-wise join; join(ε_*, s) = s.
Schema join(const Schema& x, const Schema& y);

// ↓(∩ ↑s): the largest schema below every member. ε_* for conflicting members,
// for any ε_* member, and for an empty input.
Schema blend(std::span<const Schema> schemata);
Schema blend(const Schema& x, const Schema& y);

// Number of fixed cells. ε_* has order ambient_length + 1.
int order(const Schema& s, std::size_t ambient_length);
// Same, but ε_* is rejected with kUndefined.
int order(const Schema& s);

// Number of wildcard cells; -1 for ε_*.
int antiorder(const Schema& s) noexcept;

// Distance between the first and last fixed cell. kUndefined for ε_* and for
// schemata with no fixed cell.
int defining_length(const Schema& s);

// w ∈ ↑s for a word w.
bool is_instance(const Schema& word, const Schema& s);

// Fraction of ↑s present in `words`, without enumerating ↑s.
double confidence(const Schema& s, const WordSet& words, const Alphabet& alphabet);

}  // namespace schemata

template <>
struct std::hash<schemata::Schema> {
  std::size_t operator()(const schemata::Schema& s) const noexcept {
    return std::hash<std::string_view>{}(s.cells());
  }
};
