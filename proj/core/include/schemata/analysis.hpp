#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "schemata/ga.hpp"
#include "schemata/lattice.hpp"
#include "schemata/schema.hpp"

namespace schemata {

struct SchemaStats {
  Schema schema;
  int order = 0;
  std::optional<int> defining_length;
  double fitness = 0.0;
  double confidence = 0.0;
};

// Mean fitness over population members (duplicates counted) that are
// instances of `s`; kNoInstances when there are none.
double schema_fitness(const Schema& s, const Population& population);

// Statistics for every eligible element of the lattice: ε_* and the
// individuals themselves are left out.
std::vector<SchemaStats> eligible_stats(const SchematicLattice& lattice,
                                        const Population& population);

// Eligible schemata with strictly below-average order, strictly
// below-average defining length and strictly above-average fitness.
// `lattice` must be the completion of the deduplicated population.
std::vector<Schema> building_blocks(const SchematicLattice& lattice, const Population& population);

enum class BlendMode {
  // B(prev) includes prev itself, so surviving blocks count as combined.
  kInclusive,
  // Only blends of two or more distinct previous blocks count.
  kStrict,
};

// |next ∩ B(prev)| / |next|, or nothing when `next` is empty.
std::optional<double> blend_combination_fraction(std::span<const Schema> previous,
                                                 std::span<const Schema> next,
                                                 BlendMode mode = BlendMode::kInclusive);

struct BuildingBlockReport {
  std::size_t generation = 0;
  std::vector<Schema> building_blocks;
  std::optional<double> avg_order;
  std::optional<double> avg_defining_length;
  std::optional<double> blend_combination_fraction;  // absent for generation 0
  std::size_t lattice_size = 0;
};

struct AnalysisOptions {
  std::size_t element_budget = 1'000'000;
  BlendMode mode = BlendMode::kInclusive;
  bool blend_fractions = true;
};

BuildingBlockReport analyze_generation(const Population& population, const Alphabet& alphabet,
                                       const AnalysisOptions& options = {});

// Per-generation reports for a whole run. Propagates kBudgetExceeded when a
// generation's completion outgrows the element budget.
std::vector<BuildingBlockReport> analyze_run(const RunTrace& trace, const Alphabet& alphabet,
                                             const AnalysisOptions& options = {});

}  // namespace schemata
