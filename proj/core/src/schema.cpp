#include "schemata/schema.hpp"

#include <algorithm>
#include <cmath>

#include "schemata/error.hpp"

namespace schemata {

namespace {

void require_same_length(const Schema& a, const Schema& b, const char* op) {
  if (a.length() != b.length()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::string(op) + ": lengths " + std::to_string(a.length()) + " and " +
                    std::to_string(b.length()) + " differ");
  }
}

Schema parse_cells(std::string_view text, const Alphabet& alphabet, bool allow_wildcard) {
  if (text.size() == 1 && text[0] == kEmptyToken) {
    if (!allow_wildcard) throw Error(ErrorCode::kNotAWord, "the empty schema is not a word");
    return Schema::empty();
  }
  if (text.empty()) throw Error(ErrorCode::kInvalidSymbol, "empty schema text; use '^' for the empty schema");
  for (char c : text) {
    if (c == kWildcard) {
      if (!allow_wildcard) {
        throw Error(ErrorCode::kNotAWord, "\"" + std::string(text) + "\" contains a wildcard");
      }
      continue;
    }
    if (!alphabet.contains(c)) {
      throw Error(ErrorCode::kInvalidSymbol, std::string("symbol '") + c + "' in \"" +
                                                 std::string(text) + "\" is not in the alphabet");
    }
  }
  return Schema(std::string(text));
}

}  // namespace

Schema::Schema(std::string cells) : cells_(std::move(cells)) {}

bool Schema::is_word() const noexcept {
  return !cells_.empty() && cells_.find(kWildcard) == std::string::npos;
}

std::string Schema::to_string() const {
  return is_empty() ? std::string(1, kEmptyToken) : cells_;
}

bool RankOrder::operator()(const Schema& a, const Schema& b) const {
  const int ra = antiorder(a);
  const int rb = antiorder(b);
  if (ra != rb) return ra < rb;
  return a.cells() < b.cells();
}

Schema parse_schema(std::string_view text, const Alphabet& alphabet) {
  return parse_cells(text, alphabet, true);
}

Schema parse_word(std::string_view text, const Alphabet& alphabet) {
  return parse_cells(text, alphabet, false);
}

WordSet::WordSet(std::vector<Schema> words) : words_(std::move(words)) {
  for (const auto& w : words_) {
    if (!w.is_word()) {
      throw Error(ErrorCode::kNotAWord, "\"" + w.to_string() + "\" is not a word");
    }
    if (w.length() != words_.front().length()) {
      throw Error(ErrorCode::kLengthMismatch, "word set mixes lengths " +
                                                  std::to_string(words_.front().length()) +
                                                  " and " + std::to_string(w.length()));
    }
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  length_ = words_.empty() ? 0 : words_.front().length();
}

WordSet::WordSet(std::initializer_list<std::string_view> words)
    : WordSet([&] {
        std::vector<Schema> v;
        v.reserve(words.size());
        for (auto w : words) v.emplace_back(std::string(w));
        return v;
      }()) {}

WordSet WordSet::parse(std::span<const std::string> words, const Alphabet& alphabet) {
  std::vector<Schema> parsed;
  parsed.reserve(words.size());
  for (const auto& w : words) parsed.push_back(parse_word(w, alphabet));
  return WordSet(std::move(parsed));
}

bool WordSet::contains(const Schema& word) const {
  return std::binary_search(words_.begin(), words_.end(), word);
}

WordSet expand(const Schema& s, const Alphabet& alphabet, std::size_t cap) {
  if (s.is_empty()) return {};
  const std::size_t base = alphabet.size();
  std::size_t count = 1;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < s.length(); ++i) {
    if (!s.is_wildcard(i)) continue;
    free.push_back(i);
    if (count > cap / base) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "expansion of " + s.to_string() + " exceeds the cap of " + std::to_string(cap));
    }
    count *= base;
  }
  if (count > cap) {
    throw Error(ErrorCode::kBudgetExceeded,
                "expansion of " + s.to_string() + " exceeds the cap of " + std::to_string(cap));
  }

  std::vector<Schema> words;
  words.reserve(count);
  std::vector<std::size_t> digits(free.size(), 0);
  std::string cells(s.cells());
  for (std::size_t n = 0; n < count; ++n) {
    for (std::size_t j = 0; j < free.size(); ++j) cells[free[j]] = alphabet[digits[j]];
    words.emplace_back(cells);
    for (std::size_t j = 0; j < digits.size(); ++j) {
      if (++digits[j] < base) break;
      digits[j] = 0;
    }
  }
  return WordSet(std::move(words));
}

Schema compress(const WordSet& words) { return compress(words.words()); }

Schema compress(std::span<const Schema> words) {
  if (words.empty()) return Schema::empty();
  std::string cells(words.front().cells());
  for (const auto& w : words) {
    if (!w.is_word()) throw Error(ErrorCode::kNotAWord, "\"" + w.to_string() + "\" is not a word");
    require_same_length(words.front(), w, "compress");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i] != w[i]) cells[i] = kWildcard;
    }
  }
  return Schema(std::move(cells));
}

bool leq(const Schema& a, const Schema& b) {
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  require_same_length(a, b, "leq");
  for (std::size_t i = 0; i < a.length(); ++i) {
    if (b[i] != kWildcard && a[i] != b[i]) return false;
  }
  return true;
}

Schema join(const Schema& x, const Schema& y) {
  if (x.is_empty()) return y;
  if (y.is_empty()) return x;
  require_same_length(x, y, "join");
  std::string cells(x.cells());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] != y[i]) cells[i] = kWildcard;
  }
  return Schema(std::move(cells));
}

Schema blend(std::span<const Schema> schemata) {
  const Schema* first = nullptr;
  bool has_empty = false;
  for (const auto& s : schemata) {
    if (s.is_empty()) {
      has_empty = true;
      continue;
    }
    if (first == nullptr) first = &s;
    require_same_length(*first, s, "blend");
  }
  if (has_empty || first == nullptr) return Schema::empty();

  std::string cells(first->length(), kWildcard);
  for (const auto& s : schemata) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const char c = s[i];
      if (c == kWildcard) continue;
      if (cells[i] == kWildcard) {
        cells[i] = c;
      } else if (cells[i] != c) {
        return Schema::empty();
      }
    }
  }
  return Schema(std::move(cells));
}

Schema blend(const Schema& x, const Schema& y) {
  const Schema pair[] = {x, y};
  return blend(pair);
}

int order(const Schema& s, std::size_t ambient_length) {
  if (s.is_empty()) return static_cast<int>(ambient_length) + 1;
  return static_cast<int>(s.length()) - antiorder(s);
}

int order(const Schema& s) {
  if (s.is_empty()) {
    throw Error(ErrorCode::kUndefined, "order of the empty schema needs an ambient length");
  }
  return order(s, s.length());
}

int antiorder(const Schema& s) noexcept {
  if (s.is_empty()) return -1;
  return static_cast<int>(std::count(s.cells().begin(), s.cells().end(), kWildcard));
}

int defining_length(const Schema& s) {
  const auto cells = s.cells();
  const auto first = cells.find_first_not_of(kWildcard);
  if (first == std::string_view::npos) {
    throw Error(ErrorCode::kUndefined,
                "defining length of " + s.to_string() + " is undefined (no fixed symbol)");
  }
  return static_cast<int>(cells.find_last_not_of(kWildcard) - first);
}

bool is_instance(const Schema& word, const Schema& s) {
  if (!word.is_word()) {
    throw Error(ErrorCode::kNotAWord, "\"" + word.to_string() + "\" is not a word");
  }
  if (s.is_empty()) return false;
  return leq(word, s);
}

double confidence(const Schema& s, const WordSet& words, const Alphabet& alphabet) {
  if (s.is_empty()) {
    throw Error(ErrorCode::kEmptySchema, "confidence of the empty schema is undefined");
  }
  if (!words.empty() && words.length() != s.length()) {
    throw Error(ErrorCode::kLengthMismatch, "confidence: schema and word lengths differ");
  }
  const auto present = std::count_if(words.begin(), words.end(),
                                     [&](const Schema& w) { return leq(w, s); });
  const double size = std::pow(static_cast<double>(alphabet.size()), antiorder(s));
  return static_cast<double>(present) / size;
}

}  // namespace schemata
