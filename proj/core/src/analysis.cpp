#include "schemata/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "schemata/error.hpp"
#include "schemata/packed.hpp"

namespace schemata {

namespace {

struct Candidate {
  std::size_t index;  // into lattice.elements()
  int order;
  std::optional<int> defining_length;
  double fitness;
};

bool matches_word(std::string_view word, const Schema& s) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (s[i] != kWildcard && s[i] != word[i]) return false;
  }
  return true;
}

// Order, defining length and mean instance fitness of every eligible element.
std::vector<Candidate> eligible_candidates(const SchematicLattice& lattice, const Population& population) {
  if (population.size() != 0 && population.length() != lattice.length()) {
    throw Error(ErrorCode::kLengthMismatch, "population and lattice lengths differ");
  }
  const auto elements = lattice.elements();
  const auto fitness = population.fitness();
  std::vector<Candidate> out;

  const auto packed = lattice.packed();
  if (!packed.empty()) {
    const BinaryCodec codec(lattice.alphabet(), lattice.length());
    std::vector<std::uint64_t> members;
    members.reserve(population.size());
    for (const auto& m : population.members()) members.push_back(codec.encode(Schema(m)).value);
    for (std::size_t i = 1; i < packed.size(); ++i) {
      const PackedSchema s = packed[i];
      if (s.fixed == codec.full_mask()) continue;  // an individual
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t m = 0; m < members.size(); ++m) {
        if (matches(members[m], s)) {
          sum += fitness[m];
          ++count;
        }
      }
      if (count == 0) {
        throw Error(ErrorCode::kNoInstances, elements[i].to_string() + " has no instance in the population");
      }
      const int o = order(s);
      out.push_back({i, o, o > 0 ? std::optional<int>(defining_length(s)) : std::nullopt,
                     sum / static_cast<double>(count)});
    }
    return out;
  }

  for (std::size_t i = 1; i < elements.size(); ++i) {
    const Schema& s = elements[i];
    if (s.is_word()) continue;
    const int o = order(s);
    out.push_back({i, o, o > 0 ? std::optional<int>(defining_length(s)) : std::nullopt,
                   schema_fitness(s, population)});
  }
  return out;
}

}  // namespace

double schema_fitness(const Schema& s, const Population& population) {
  if (s.is_empty()) throw Error(ErrorCode::kNoInstances, "the empty schema has no instances");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t m = 0; m < population.size(); ++m) {
    const auto& word = population[m];
    if (word.size() != s.length()) {
      throw Error(ErrorCode::kLengthMismatch, "schema and population lengths differ");
    }
    if (matches_word(word, s)) {
      sum += population.fitness()[m];
      ++count;
    }
  }
  if (count == 0) {
    throw Error(ErrorCode::kNoInstances, s.to_string() + " has no instance in the population");
  }
  return sum / static_cast<double>(count);
}

std::vector<SchemaStats> eligible_stats(const SchematicLattice& lattice, const Population& population) {
  std::vector<SchemaStats> out;
  for (const auto& c : eligible_candidates(lattice, population)) {
    const Schema& s = lattice.elements()[c.index];
    out.push_back({s, c.order, c.defining_length, c.fitness, confidence(s, lattice.atoms(), lattice.alphabet())});
  }
  return out;
}

std::vector<Schema> building_blocks(const SchematicLattice& lattice, const Population& population) {
  const auto candidates = eligible_candidates(lattice, population);
  if (candidates.empty()) return {};

  // Order and defining length are integers, so their thresholds are compared
  // exactly as value * count < sum.
  long long order_sum = 0;
  long long dl_sum = 0;
  long long dl_count = 0;
  double fitness_sum = 0.0;
  for (const auto& c : candidates) {
    order_sum += c.order;
    fitness_sum += c.fitness;
    if (c.defining_length) {
      dl_sum += *c.defining_length;
      ++dl_count;
    }
  }
  const auto n = static_cast<long long>(candidates.size());
  const double mean_fitness = fitness_sum / static_cast<double>(n);
  const double fitness_slack = 1e-9 * std::max(1.0, std::abs(mean_fitness));

  std::vector<Schema> out;
  for (const auto& c : candidates) {
    if (!c.defining_length) continue;
    if (c.order * n >= order_sum) continue;
    if (*c.defining_length * dl_count >= dl_sum) continue;
    if (!(c.fitness - mean_fitness > fitness_slack)) continue;
    out.push_back(lattice.elements()[c.index]);
  }
  return out;
}

std::optional<double> blend_combination_fraction(std::span<const Schema> previous,
                                                 std::span<const Schema> next, BlendMode mode) {
  if (next.empty()) return std::nullopt;
  // B(previous) itself can hold exponentially many schemata, so membership
  // is decided per element.
  const auto hits = std::count_if(next.begin(), next.end(), [&](const Schema& s) {
    return mode == BlendMode::kInclusive ? in_blend_closure(s, previous)
                                         : in_proper_blend_closure(s, previous);
  });
  return static_cast<double>(hits) / static_cast<double>(next.size());
}

BuildingBlockReport analyze_generation(const Population& population, const Alphabet& alphabet,
                                       const AnalysisOptions& options) {
  std::vector<Schema> words;
  words.reserve(population.size());
  for (const auto& m : population.members()) words.emplace_back(m);
  const auto lattice = complete(WordSet(std::move(words)), alphabet,
                                CompletionOptions{options.element_budget});

  BuildingBlockReport report;
  report.lattice_size = lattice.size();
  report.building_blocks = building_blocks(lattice, population);
  if (!report.building_blocks.empty()) {
    double order_sum = 0.0;
    double dl_sum = 0.0;
    for (const auto& s : report.building_blocks) {
      order_sum += order(s);
      dl_sum += defining_length(s);
    }
    const auto n = static_cast<double>(report.building_blocks.size());
    report.avg_order = order_sum / n;
    report.avg_defining_length = dl_sum / n;
  }
  return report;
}

std::vector<BuildingBlockReport> analyze_run(const RunTrace& trace, const Alphabet& alphabet,
                                             const AnalysisOptions& options) {
  std::vector<BuildingBlockReport> reports;
  reports.reserve(trace.snapshots.size());
  for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
    auto report = analyze_generation(trace.snapshots[t], alphabet, options);
    report.generation = t;
    if (t > 0 && options.blend_fractions) {
      report.blend_combination_fraction = blend_combination_fraction(
          reports.back().building_blocks, report.building_blocks, options.mode);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace schemata
