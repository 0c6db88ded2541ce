#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schemata/alphabet.hpp"
#include "schemata/packed.hpp"
#include "schemata/schema.hpp"

namespace schemata {

// An edge of the Hasse diagram, as indices into SchematicLattice::elements().
struct Cover {
  std::size_t lower;
  std::size_t upper;

  friend bool operator==(const Cover&, const Cover&) = default;
};

struct CompletionOptions {
  // Abort with kBudgetExceeded once more than this many schemata are found.
  std::size_t element_budget = std::numeric_limits<std::size_t>::max();
};

// A finite set of schemata closed under join, ordered by ≤.
//
// Elements are kept in RankOrder, so elements()[0] is always ε_* (the zero)
// and the last element is the unit. Immutable once built; the cover relation
// is computed on first use and cached, which is safe under concurrent access.
class SchematicLattice {
 public:
  // `elements` must contain ε_* and every atom and be closed under join; the
  // constructor sorts and indexes them but does not re-verify closure.
  SchematicLattice(Alphabet alphabet, std::size_t length, WordSet atoms,
                   std::vector<Schema> elements);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t length() const noexcept { return length_; }
  const WordSet& atoms() const noexcept { return atoms_; }
  std::span<const Schema> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  const Schema& zero() const noexcept { return elements_.front(); }
  const Schema& unit() const noexcept { return elements_.back(); }

  bool contains(const Schema& s) const { return index_of(s).has_value(); }
  // Binary search over the rank-sorted elements.
  std::optional<std::size_t> index_of(const Schema& s) const;

  // Packed mirror of elements() for binary alphabets with length ≤ 64, else
  // empty. Entry 0 stands in for ε_* and must not be interpreted.
  std::span<const PackedSchema> packed() const noexcept { return packed_; }

  // Transitive reduction of ≤ on elements(), sorted by (lower, upper).
  const std::vector<Cover>& covers() const;

 private:
  struct CoverCache;
  struct Presorted {};

  // Trusted path for complete(): elements already in RankOrder with a
  // matching packed mirror (or none).
  SchematicLattice(Presorted, Alphabet alphabet, std::size_t length, WordSet atoms,
                   std::vector<Schema> elements, std::vector<PackedSchema> packed);

  friend SchematicLattice complete(const WordSet&, const Alphabet&, const CompletionOptions&);

  Alphabet alphabet_;
  std::size_t length_;
  WordSet atoms_;
  std::vector<Schema> elements_;
  std::vector<PackedSchema> packed_;
  std::shared_ptr<CoverCache> cover_cache_;
};

// The schematic completion {↓X : X ⊆ P}, built by sweeping pairwise joins
// over the deduplicated population.
SchematicLattice complete(const WordSet& population, const Alphabet& alphabet,
                          const CompletionOptions& options = {});
SchematicLattice complete(std::span<const Schema> population, const Alphabet& alphabet,
                          const CompletionOptions& options = {});

// Join-fold of `xs`; ε_* for an empty set.
Schema supremum(std::span<const Schema> xs, const SchematicLattice& lattice);
// Compression of the atoms lying under blend(xs). `xs` must be non-empty.
Schema infimum(std::span<const Schema> xs, const SchematicLattice& lattice);

// Covers of an arbitrary finite poset of schemata (as index pairs into
// `elements`). The lattice's covers() uses this.
std::vector<Cover> covers_of(std::span<const Schema> elements);
std::vector<Cover> covers_of(const SchematicLattice& lattice);

// B(A): closure of A under pairwise blending. Result in RankOrder.
std::vector<Schema> blend_closure(std::span<const Schema> schemata);
// Blends of subsets with at least two distinct members only.
std::vector<Schema> proper_blend_closure(std::span<const Schema> schemata);

// Decides s ∈ B(A) without building B(A): s is a blend of some subset of A
// exactly when the blend of all members of A above s is s itself.
bool in_blend_closure(const Schema& s, std::span<const Schema> schemata);
// Same for proper_blend_closure(): at least two distinct members above s.
bool in_proper_blend_closure(const Schema& s, std::span<const Schema> schemata);

inline constexpr std::size_t kDefaultFullSpaceBudget = 100;

// Every schema of the given length plus ε_*, with atoms Σ^l. Fails with
// kBudgetExceeded when (|Σ|+1)^l > budget.
SchematicLattice full_space(std::size_t length, const Alphabet& alphabet,
                            std::size_t budget = kDefaultFullSpaceBudget);

enum class Reach { kSampled, kReachable, kUnreachable };

const char* to_string(Reach r) noexcept;

// Partition of the full schema space by how a population's completion
// reaches each element.
struct LatticeMarking {
  SchematicLattice space;
  std::vector<Reach> classes;  // aligned with space.elements()

  Reach of(const Schema& s) const;
  std::size_t count(Reach r) const;
  std::vector<Schema> members(Reach r) const;
};

LatticeMarking mark_reachability(const WordSet& generation, const Alphabet& alphabet,
                                 std::size_t budget = kDefaultFullSpaceBudget);

// Hasse diagram in DOT, layered by antiorder with the unit on top.
std::string to_dot(const SchematicLattice& lattice);
std::string to_dot(const LatticeMarking& marking);

// One "<antiorder> <schema>" line per element in RankOrder.
std::string dump(const SchematicLattice& lattice);

}  // namespace schemata
