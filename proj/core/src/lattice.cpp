#include "schemata/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <bit>
#include <limits>
#include <mutex>
#include <unordered_set>

#include "schemata/error.hpp"

namespace schemata {

struct SchematicLattice::CoverCache {
  std::once_flag once;
  std::vector<Cover> covers;
};

namespace {

void throw_budget(std::size_t budget) {
  throw Error(ErrorCode::kBudgetExceeded,
              "completion exceeded the element budget of " + std::to_string(budget));
}

// Pairwise-join sweep. Atom c joins every schema discovered at index > c as
// of the start of its pass; schemata appended during the pass are picked up
// by later atoms. The returned list excludes ε_*.
template <typename Rep, typename Hash, typename JoinFn>
std::vector<Rep> join_sweep(std::span<const Rep> atoms, std::size_t budget, JoinFn join_fn) {
  std::vector<Rep> found(atoms.begin(), atoms.end());
  std::unordered_set<Rep, Hash> seen(atoms.begin(), atoms.end());
  if (found.size() + 1 > budget) throw_budget(budget);
  for (std::size_t c = 0; c < atoms.size(); ++c) {
    const Rep x = atoms[c];
    const std::size_t end = found.size();
    for (std::size_t j = c + 1; j < end; ++j) {
      Rep s = join_fn(x, found[j]);
      if (seen.insert(s).second) {
        found.push_back(std::move(s));
        if (found.size() + 1 > budget) throw_budget(budget);
      }
    }
  }
#ifndef NDEBUG
  if (found.size() <= 512) {
    for (const auto& a : found) {
      for (const auto& b : found) assert(seen.contains(join_fn(a, b)));
    }
  }
#endif
  return found;
}

// Open-addressing index over `found`, storing position + 1 (0 = free slot).
class PackedIndex {
 public:
  explicit PackedIndex(const std::vector<PackedSchema>& found) : found_(found) { rehash(64); }

  // Returns false when `s` is already present; otherwise records that it is
  // about to be appended to `found` at position found.size().
  bool insert(PackedSchema s) {
    if ((used_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t i = PackedHash{}(s) & mask_;
    while (slots_[i] != 0) {
      if (found_[slots_[i] - 1] == s) return false;
      i = (i + 1) & mask_;
    }
    slots_[i] = static_cast<std::uint32_t>(found_.size() + 1);
    ++used_;
    return true;
  }

 private:
  void rehash(std::size_t capacity) {
    slots_.assign(capacity, 0);
    mask_ = capacity - 1;
    for (std::size_t k = 0; k < used_; ++k) {
      std::size_t i = PackedHash{}(found_[k]) & mask_;
      while (slots_[i] != 0) i = (i + 1) & mask_;
      slots_[i] = static_cast<std::uint32_t>(k + 1);
    }
  }

  const std::vector<PackedSchema>& found_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::size_t used_ = 0;
};

// Same sweep as join_sweep() over packed binary schemata.
std::vector<PackedSchema> packed_join_sweep(const std::vector<PackedSchema>& atoms, std::size_t budget) {
  std::vector<PackedSchema> found;
  found.reserve(atoms.size() * 4);
  PackedIndex index(found);
  for (const auto& a : atoms) {
    index.insert(a);
    found.push_back(a);
  }
  if (found.size() + 1 > budget) throw_budget(budget);
  const std::size_t hard_limit = std::numeric_limits<std::uint32_t>::max() - 1;
  for (std::size_t c = 0; c < atoms.size(); ++c) {
    const PackedSchema x = atoms[c];
    const std::size_t end = found.size();
    for (std::size_t j = c + 1; j < end; ++j) {
      const PackedSchema s = join(x, found[j]);
      if (index.insert(s)) {
        found.push_back(s);
        if (found.size() + 1 > budget || found.size() >= hard_limit) throw_budget(std::min(budget, hard_limit));
      }
    }
  }
#ifndef NDEBUG
  if (found.size() <= 512) {
    for (const auto& a : found) {
      for (const auto& b : found) {
        assert(std::find(found.begin(), found.end(), join(a, b)) != found.end());
      }
    }
  }
#endif
  return found;
}

// Sorts packed schemata into the RankOrder of their decoded text without
// decoding: bucketed by antiorder, then the first differing cell decides.
void sort_packed_rank_order(std::vector<PackedSchema>& xs, const BinaryCodec& codec,
                            const Alphabet& alphabet) {
  const std::uint64_t full = codec.full_mask();
  std::vector<std::vector<PackedSchema>> buckets(65);
  for (const auto& x : xs) buckets[std::popcount(~x.fixed & full)].push_back(x);
  const auto cell = [&](PackedSchema s, int i) -> unsigned char {
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (!(s.fixed & bit)) return static_cast<unsigned char>(kWildcard);
    return static_cast<unsigned char>(alphabet[(s.value & bit) ? 1 : 0]);
  };
  const auto lex = [&](PackedSchema a, PackedSchema b) {
    const std::uint64_t diff = (a.fixed ^ b.fixed) | (a.value ^ b.value);
    if (diff == 0) return false;
    const int i = std::countr_zero(diff);
    return cell(a, i) < cell(b, i);
  };
  xs.clear();
  for (auto& bucket : buckets) {
    std::sort(bucket.begin(), bucket.end(), lex);
    xs.insert(xs.end(), bucket.begin(), bucket.end());
  }
}

// Covers of a RankOrder-sorted sequence given a ≤ predicate on indices.
// Strict upper bounds of element i all sit at indices > i; scanning them in
// rank order, j is a cover unless some cover already found lies below it.
template <typename Leq>
std::vector<Cover> covers_sorted(std::size_t n, Leq leq_at) {
  std::vector<Cover> out;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    current.clear();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!leq_at(i, j)) continue;
      const bool implied = std::any_of(current.begin(), current.end(),
                                       [&](std::size_t c) { return leq_at(c, j); });
      if (!implied) current.push_back(j);
    }
    for (std::size_t j : current) out.push_back({i, j});
  }
  return out;
}

bool is_rank_sorted(std::span<const Schema> elements) {
  return std::is_sorted(elements.begin(), elements.end(), RankOrder{});
}

void check_members(std::span<const Schema> xs, const SchematicLattice& lattice, const char* op) {
  for (const auto& x : xs) {
    if (!lattice.contains(x)) {
      throw Error(ErrorCode::kElementNotInLattice,
                  std::string(op) + ": " + x.to_string() + " is not an element of the lattice");
    }
  }
}

std::vector<Schema> pairwise_blend_fixpoint(std::vector<Schema> seed) {
  std::vector<Schema> out;
  std::unordered_set<Schema> seen;
  for (auto& s : seed) {
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Schema b = blend(out[i], out[j]);
      if (seen.insert(b).second) out.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end(), RankOrder{});
  return out;
}

void check_uniform_length(std::span<const Schema> schemata, const char* op) {
  std::size_t length = 0;
  for (const auto& s : schemata) {
    if (s.is_empty()) continue;
    if (length == 0) length = s.length();
    if (s.length() != length) {
      throw Error(ErrorCode::kLengthMismatch, std::string(op) + ": mixed schema lengths");
    }
  }
}

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string render_dot(const SchematicLattice& lattice, const std::vector<Reach>* classes) {
  const auto elements = lattice.elements();
  std::string out = "digraph schematic_lattice {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=ellipse, fontname=\"Courier\"];\n";
  out += "  edge [dir=none];\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(elements[i].to_string()) + "\"";
    if (classes != nullptr) {
      switch ((*classes)[i]) {
        case Reach::kSampled: out += ", style=bold, penwidth=2.5"; break;
        case Reach::kReachable: out += ", style=solid"; break;
        case Reach::kUnreachable: out += ", style=dotted"; break;
      }
    }
    out += "];\n";
  }
  // Elements are rank-sorted, so each antiorder is a contiguous run.
  for (std::size_t begin = 0; begin < elements.size();) {
    const int rank = antiorder(elements[begin]);
    std::size_t end = begin;
    while (end < elements.size() && antiorder(elements[end]) == rank) ++end;
    out += "  { rank=same;";
    for (std::size_t i = begin; i < end; ++i) out += " n" + std::to_string(i) + ";";
    out += " }\n";
    begin = end;
  }
  for (const auto& c : lattice.covers()) {
    out += "  n" + std::to_string(c.lower) + " -> n" + std::to_string(c.upper) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace

SchematicLattice::SchematicLattice(Alphabet alphabet, std::size_t length, WordSet atoms,
                                   std::vector<Schema> elements)
    : alphabet_(std::move(alphabet)),
      length_(length),
      atoms_(std::move(atoms)),
      elements_(std::move(elements)),
      cover_cache_(std::make_shared<CoverCache>()) {
  if (!is_rank_sorted(elements_)) {
    std::vector<std::pair<int, Schema>> keyed;
    keyed.reserve(elements_.size());
    for (auto& s : elements_) keyed.emplace_back(antiorder(s), std::move(s));
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) elements_[i] = std::move(keyed[i].second);
  }
  if (elements_.empty() || !elements_.front().is_empty()) {
    throw Error(ErrorCode::kInvalidConfig, "lattice elements must include the empty schema");
  }
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw Error(ErrorCode::kInvalidConfig, "lattice elements must be distinct");
  }
  if (BinaryCodec::supports(alphabet_, length_)) {
    const BinaryCodec codec(alphabet_, length_);
    packed_.reserve(elements_.size());
    packed_.push_back({});
    for (std::size_t i = 1; i < elements_.size(); ++i) packed_.push_back(codec.encode(elements_[i]));
  }
}

SchematicLattice::SchematicLattice(Presorted, Alphabet alphabet, std::size_t length, WordSet atoms,
                                   std::vector<Schema> elements, std::vector<PackedSchema> packed)
    : alphabet_(std::move(alphabet)),
      length_(length),
      atoms_(std::move(atoms)),
      elements_(std::move(elements)),
      packed_(std::move(packed)),
      cover_cache_(std::make_shared<CoverCache>()) {}

std::optional<std::size_t> SchematicLattice::index_of(const Schema& s) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), s, RankOrder{});
  if (it == elements_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

const std::vector<Cover>& SchematicLattice::covers() const {
  std::call_once(cover_cache_->once, [this] { cover_cache_->covers = covers_of(*this); });
  return cover_cache_->covers;
}

SchematicLattice complete(const WordSet& population, const Alphabet& alphabet,
                          const CompletionOptions& options) {
  if (population.empty()) {
    throw Error(ErrorCode::kEmptyPopulation, "cannot complete an empty population");
  }
  for (const auto& w : population) {
    for (char c : w.cells()) {
      if (!alphabet.contains(c)) {
        throw Error(ErrorCode::kInvalidSymbol,
                    std::string("symbol '") + c + "' of " + w.to_string() + " is not in the alphabet");
      }
    }
  }
  const std::size_t length = population.length();
  std::vector<Schema> elements;

  if (BinaryCodec::supports(alphabet, length)) {
    const BinaryCodec codec(alphabet, length);
    std::vector<PackedSchema> atoms;
    atoms.reserve(population.size());
    for (const auto& w : population) atoms.push_back(codec.encode(w));
    auto found = packed_join_sweep(atoms, options.element_budget);
    sort_packed_rank_order(found, codec, alphabet);
    std::vector<PackedSchema> packed;
    packed.reserve(found.size() + 1);
    packed.push_back({});
    packed.insert(packed.end(), found.begin(), found.end());
    elements.reserve(packed.size());
    elements.push_back(Schema::empty());
    for (const auto& p : found) elements.push_back(codec.decode(p));
    return SchematicLattice(SchematicLattice::Presorted{}, alphabet, length, population,
                            std::move(elements), std::move(packed));
  }
  auto found = join_sweep<Schema, std::hash<Schema>>(
      population.words(), options.element_budget,
      [](const Schema& x, const Schema& y) { return join(x, y); });
  elements.reserve(found.size() + 1);
  elements.push_back(Schema::empty());
  for (auto& s : found) elements.push_back(std::move(s));
  return SchematicLattice(alphabet, length, population, std::move(elements));
}

SchematicLattice complete(std::span<const Schema> population, const Alphabet& alphabet,
                          const CompletionOptions& options) {
  return complete(WordSet(std::vector<Schema>(population.begin(), population.end())), alphabet,
                  options);
}

Schema supremum(std::span<const Schema> xs, const SchematicLattice& lattice) {
  check_members(xs, lattice, "supremum");
  Schema acc = Schema::empty();
  for (const auto& x : xs) acc = join(acc, x);
  return acc;
}

Schema infimum(std::span<const Schema> xs, const SchematicLattice& lattice) {
  if (xs.empty()) throw Error(ErrorCode::kUndefined, "infimum of an empty set is not supported");
  check_members(xs, lattice, "infimum");
  const Schema b = blend(xs);
  if (b.is_empty()) return b;
  std::vector<Schema> below;
  for (const auto& atom : lattice.atoms()) {
    if (leq(atom, b)) below.push_back(atom);
  }
  return compress(below);
}

std::vector<Cover> covers_of(std::span<const Schema> elements) {
  if (is_rank_sorted(elements)) {
    return covers_sorted(elements.size(),
                         [&](std::size_t a, std::size_t b) { return leq(elements[a], elements[b]); });
  }
  std::vector<std::size_t> perm(elements.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return RankOrder{}(elements[a], elements[b]); });
  auto out = covers_sorted(elements.size(), [&](std::size_t a, std::size_t b) {
    return leq(elements[perm[a]], elements[perm[b]]);
  });
  for (auto& c : out) c = {perm[c.lower], perm[c.upper]};
  std::sort(out.begin(), out.end(), [](const Cover& a, const Cover& b) {
    return std::pair(a.lower, a.upper) < std::pair(b.lower, b.upper);
  });
  return out;
}

std::vector<Cover> covers_of(const SchematicLattice& lattice) {
  const auto packed = lattice.packed();
  if (packed.empty()) return covers_of(lattice.elements());
  // Index 0 is ε_*, below everything.
  return covers_sorted(packed.size(), [&](std::size_t a, std::size_t b) {
    return a == 0 || (b != 0 && leq(packed[a], packed[b]));
  });
}

std::vector<Schema> blend_closure(std::span<const Schema> schemata) {
  check_uniform_length(schemata, "blend_closure");
  return pairwise_blend_fixpoint(std::vector<Schema>(schemata.begin(), schemata.end()));
}

std::vector<Schema> proper_blend_closure(std::span<const Schema> schemata) {
  check_uniform_length(schemata, "proper_blend_closure");
  std::vector<Schema> base(schemata.begin(), schemata.end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<Schema> pairs;
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) pairs.push_back(blend(base[i], base[j]));
  }
  return pairwise_blend_fixpoint(std::move(pairs));
}

namespace {

// Distinct members of A lying above s, and their blend.
std::pair<std::size_t, Schema> blend_above(const Schema& s, std::span<const Schema> schemata) {
  std::vector<Schema> above;
  for (const auto& a : schemata) {
    if (leq(s, a)) above.push_back(a);
  }
  std::sort(above.begin(), above.end());
  above.erase(std::unique(above.begin(), above.end()), above.end());
  Schema b = above.empty() ? Schema::empty() : blend(above);
  return {above.size(), std::move(b)};
}

}  // namespace

bool in_blend_closure(const Schema& s, std::span<const Schema> schemata) {
  const auto [count, b] = blend_above(s, schemata);
  return count >= 1 && b == s;
}

bool in_proper_blend_closure(const Schema& s, std::span<const Schema> schemata) {
  const auto [count, b] = blend_above(s, schemata);
  return count >= 2 && b == s;
}

SchematicLattice full_space(std::size_t length, const Alphabet& alphabet, std::size_t budget) {
  if (length == 0) throw Error(ErrorCode::kLengthMismatch, "full space needs length >= 1");
  const std::size_t base = alphabet.size() + 1;
  std::size_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > budget / base) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "full schema space of length " + std::to_string(length) +
                      " exceeds the budget of " + std::to_string(budget) + " schemata");
    }
    count *= base;
  }

  std::string symbols(1, kWildcard);
  symbols += alphabet.symbols();
  std::vector<Schema> elements;
  std::vector<Schema> words;
  elements.reserve(count + 1);
  elements.push_back(Schema::empty());
  std::vector<std::size_t> digits(length, 0);
  std::string cells(length, kWildcard);
  for (std::size_t n = 0; n < count; ++n) {
    for (std::size_t i = 0; i < length; ++i) cells[i] = symbols[digits[i]];
    elements.emplace_back(cells);
    if (elements.back().is_word()) words.push_back(elements.back());
    for (std::size_t i = 0; i < length; ++i) {
      if (++digits[i] < base) break;
      digits[i] = 0;
    }
  }
  return SchematicLattice(alphabet, length, WordSet(std::move(words)), std::move(elements));
}

const char* to_string(Reach r) noexcept {
  switch (r) {
    case Reach::kSampled: return "sampled";
    case Reach::kReachable: return "reachable";
    case Reach::kUnreachable: return "unreachable";
  }
  return "unknown";
}

Reach LatticeMarking::of(const Schema& s) const {
  const auto i = space.index_of(s);
  if (!i) {
    throw Error(ErrorCode::kElementNotInLattice, s.to_string() + " is not in the schema space");
  }
  return classes[*i];
}

std::size_t LatticeMarking::count(Reach r) const {
  return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), r));
}

std::vector<Schema> LatticeMarking::members(Reach r) const {
  std::vector<Schema> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == r) out.push_back(space.elements()[i]);
  }
  return out;
}

LatticeMarking mark_reachability(const WordSet& generation, const Alphabet& alphabet,
                                 std::size_t budget) {
  if (generation.empty()) {
    throw Error(ErrorCode::kEmptyPopulation, "cannot mark reachability of an empty generation");
  }
  auto space = full_space(generation.length(), alphabet, budget);
  const auto sampled = complete(generation, alphabet);
  const auto blends = blend_closure(sampled.elements());
  const std::unordered_set<Schema> reachable(blends.begin(), blends.end());

  std::vector<Reach> classes;
  classes.reserve(space.size());
  for (const auto& s : space.elements()) {
    if (sampled.contains(s)) {
      classes.push_back(Reach::kSampled);
    } else if (reachable.contains(s)) {
      classes.push_back(Reach::kReachable);
    } else {
      classes.push_back(Reach::kUnreachable);
    }
  }
  return {std::move(space), std::move(classes)};
}

std::string to_dot(const SchematicLattice& lattice) { return render_dot(lattice, nullptr); }

std::string to_dot(const LatticeMarking& marking) {
  return render_dot(marking.space, &marking.classes);
}

std::string dump(const SchematicLattice& lattice) {
  std::string out;
  for (const auto& s : lattice.elements()) {
    out += std::to_string(antiorder(s));
    out += ' ';
    out += s.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace schemata
