#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "schemata/alphabet.hpp"

namespace schemata {

using Word = std::string;
using Rng = std::mt19937_64;

// Generator for stream `stream` of a master seed. Streams are decorrelated
// by splitmix64 so runs can be scheduled in any order.
Rng make_rng(std::uint64_t master_seed, std::uint64_t stream = 0);

struct FitnessFunction {
  std::string name;
  std::function<double(std::string_view)> evaluate;
  // Best attainable fitness for a given word length.
  std::function<double(std::size_t)> optimum;
};

// Number of `1` symbols; kNonBinaryWord if anything but 0/1 appears.
double fitness_onemax(std::string_view word);
const FitnessFunction& onemax();
// Looks up a shipped fitness function; kInvalidConfig when unknown.
const FitnessFunction& fitness_by_name(std::string_view name);

struct KPoint {
  std::size_t k = 1;
  friend bool operator==(const KPoint&, const KPoint&) = default;
};
struct Uniform {
  friend bool operator==(const Uniform&, const Uniform&) = default;
};
// Per-position parent choice weighted by parent fitness.
struct Probabilistic {
  friend bool operator==(const Probabilistic&, const Probabilistic&) = default;
};
using CrossoverMethod = std::variant<KPoint, Uniform, Probabilistic>;

// "1-point" … "k-point", "UX", "PX".
std::string to_string(const CrossoverMethod& method);
// Accepts the to_string() forms case-insensitively, plus "kpoint:<k>".
CrossoverMethod parse_crossover(std::string_view text);
// 1- through 9-point, UX, PX.
std::vector<CrossoverMethod> standard_crossover_methods();

struct GAConfig {
  Alphabet alphabet = Alphabet::binary();
  std::size_t word_length = 16;
  std::size_t population_size = 12;
  double mutation_rate = 0.005;
  CrossoverMethod crossover = KPoint{1};
  double crossover_rate = 1.0;
  std::size_t generation_cap = 120;
  std::string fitness = "onemax";
  std::uint64_t seed = 0;

  // kInvalidConfig on any violated constraint; kTooManyCutPoints for k > l-1.
  void validate() const;
};

// One generation: an ordered multiset of words with cached fitness.
class Population {
 public:
  Population(std::vector<Word> members, const FitnessFunction& fitness);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t length() const noexcept { return members_.empty() ? 0 : members_.front().size(); }
  std::span<const Word> members() const noexcept { return members_; }
  std::span<const double> fitness() const noexcept { return fitness_; }
  const Word& operator[](std::size_t i) const { return members_[i]; }

  double best_fitness() const;
  double mean_fitness() const;

 private:
  std::vector<Word> members_;
  std::vector<double> fitness_;
};

Population random_population(const GAConfig& config, const FitnessFunction& fitness, Rng& rng);

// Index drawn with probability proportional to fitness; uniform when the
// total fitness is zero.
std::size_t roulette_select_index(const Population& population, Rng& rng);
const Word& roulette_select(const Population& population, Rng& rng);

// Exchanges segments between the given cut gaps; cut g falls between
// positions g-1 and g, so valid gaps are 1..l-1.
std::pair<Word, Word> crossover_at(const Word& a, const Word& b, std::span<const std::size_t> cuts);
std::pair<Word, Word> crossover_kpoint(const Word& a, const Word& b, std::size_t k, Rng& rng);
std::pair<Word, Word> crossover_uniform(const Word& a, const Word& b, Rng& rng);
std::pair<Word, Word> crossover_probabilistic(const Word& a, double fitness_a, const Word& b,
                                              double fitness_b, Rng& rng);

Word mutate(const Word& word, double rate, const Alphabet& alphabet, Rng& rng);

// One generational replacement: roulette-paired parents, optional crossover,
// mutation of both children, no elitism.
Population step(const Population& population, const GAConfig& config, Rng& rng);

struct RunTrace {
  std::vector<Population> snapshots;  // initial population first
  std::size_t generation_found = 0;   // generation_cap when never found
  bool found = false;
};

RunTrace run(const GAConfig& config, Rng& rng);
// Starts from `initial` instead of a random population; its size and length
// must match the configuration.
RunTrace run(const GAConfig& config, Population initial, Rng& rng);
// Uses make_rng(config.seed).
RunTrace run(const GAConfig& config);

// generation,best_fitness,mean_fitness
std::string trace_csv(const RunTrace& trace);
// One word per line, each generation introduced by "# generation <t>".
std::string snapshots_text(const RunTrace& trace);

}  // namespace schemata
