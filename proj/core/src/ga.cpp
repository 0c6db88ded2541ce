#include "schemata/ga.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "schemata/csv.hpp"
#include "schemata/error.hpp"

namespace schemata {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_equal_length(const Word& a, const Word& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "crossover parents have different lengths");
  }
}

std::string lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Per position, child one takes a's symbol with probability p_a.
std::pair<Word, Word> biased_exchange(const Word& a, const Word& b, double p_a, Rng& rng) {
  require_equal_length(a, b);
  std::bernoulli_distribution take_a(p_a);
  Word c1 = a;
  Word c2 = b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!take_a(rng)) std::swap(c1[i], c2[i]);
  }
  return {std::move(c1), std::move(c2)};
}

}  // namespace

Rng make_rng(std::uint64_t master_seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream)));
}

double fitness_onemax(std::string_view word) {
  double ones = 0;
  for (char c : word) {
    if (c == '1') {
      ++ones;
    } else if (c != '0') {
      throw Error(ErrorCode::kNonBinaryWord, "OneMax needs a binary word, got \"" + std::string(word) + "\"");
    }
  }
  return ones;
}

const FitnessFunction& onemax() {
  static const FitnessFunction f{
      "onemax", fitness_onemax, [](std::size_t length) { return static_cast<double>(length); }};
  return f;
}

const FitnessFunction& fitness_by_name(std::string_view name) {
  if (lower(name) == "onemax") return onemax();
  throw Error(ErrorCode::kInvalidConfig, "unknown fitness function \"" + std::string(name) + "\"");
}

std::string to_string(const CrossoverMethod& method) {
  if (const auto* kp = std::get_if<KPoint>(&method)) return std::to_string(kp->k) + "-point";
  if (std::holds_alternative<Uniform>(method)) return "UX";
  return "PX";
}

CrossoverMethod parse_crossover(std::string_view text) {
  const std::string t = lower(text);
  if (t == "ux" || t == "uniform") return Uniform{};
  if (t == "px" || t == "probabilistic") return Probabilistic{};
  std::string_view digits;
  if (t.starts_with("kpoint:")) {
    digits = std::string_view(t).substr(7);
  } else if (t.ends_with("-point")) {
    digits = std::string_view(t).substr(0, t.size() - 6);
  } else if (t.ends_with("point")) {
    digits = std::string_view(t).substr(0, t.size() - 5);
  }
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || k == 0) {
    throw Error(ErrorCode::kInvalidConfig, "unknown crossover method \"" + std::string(text) + "\"");
  }
  return KPoint{k};
}

std::vector<CrossoverMethod> standard_crossover_methods() {
  std::vector<CrossoverMethod> methods;
  for (std::size_t k = 1; k <= 9; ++k) methods.emplace_back(KPoint{k});
  methods.emplace_back(Uniform{});
  methods.emplace_back(Probabilistic{});
  return methods;
}

void GAConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); };
  if (word_length == 0) fail("word length must be at least 1");
  if (population_size == 0) fail("population size must be at least 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) fail("mutation rate must lie in [0, 1]");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) fail("crossover rate must lie in [0, 1]");
  if (generation_cap == 0) fail("generation cap must be at least 1");
  if (const auto* kp = std::get_if<KPoint>(&crossover)) {
    if (kp->k == 0) fail("k-point crossover needs k >= 1");
    if (kp->k + 1 > word_length) {
      throw Error(ErrorCode::kTooManyCutPoints,
                  std::to_string(kp->k) + "-point crossover needs words longer than " +
                      std::to_string(kp->k));
    }
  }
  const auto& f = fitness_by_name(fitness);
  if (f.name == "onemax") {
    const auto s = alphabet.symbols();
    if (s != "01" && s != "10") fail("OneMax needs the alphabet {0,1}");
  }
}

Population::Population(std::vector<Word> members, const FitnessFunction& fitness)
    : members_(std::move(members)) {
  fitness_.reserve(members_.size());
  for (const auto& m : members_) {
    if (m.size() != members_.front().size()) {
      throw Error(ErrorCode::kLengthMismatch, "population members differ in length");
    }
    fitness_.push_back(fitness.evaluate(m));
  }
}

double Population::best_fitness() const {
  if (fitness_.empty()) throw Error(ErrorCode::kEmptyPopulation, "empty population");
  return *std::max_element(fitness_.begin(), fitness_.end());
}

double Population::mean_fitness() const {
  if (fitness_.empty()) throw Error(ErrorCode::kEmptyPopulation, "empty population");
  return std::accumulate(fitness_.begin(), fitness_.end(), 0.0) / static_cast<double>(fitness_.size());
}

Population random_population(const GAConfig& config, const FitnessFunction& fitness, Rng& rng) {
  std::uniform_int_distribution<std::size_t> symbol(0, config.alphabet.size() - 1);
  std::vector<Word> members(config.population_size, Word(config.word_length, ' '));
  for (auto& m : members) {
    for (auto& c : m) c = config.alphabet[symbol(rng)];
  }
  return Population(std::move(members), fitness);
}

std::size_t roulette_select_index(const Population& population, Rng& rng) {
  const auto fitness = population.fitness();
  if (fitness.empty()) throw Error(ErrorCode::kEmptyPopulation, "cannot select from an empty population");
  const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
  if (!(total > 0.0)) {
    return std::uniform_int_distribution<std::size_t>(0, fitness.size() - 1)(rng);
  }
  const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    acc += fitness[i];
    if (r < acc) return i;
  }
  // Rounding can leave r just above the final partial sum.
  for (std::size_t i = fitness.size(); i-- > 0;) {
    if (fitness[i] > 0.0) return i;
  }
  return fitness.size() - 1;
}

const Word& roulette_select(const Population& population, Rng& rng) {
  return population[roulette_select_index(population, rng)];
}

std::pair<Word, Word> crossover_at(const Word& a, const Word& b, std::span<const std::size_t> cuts) {
  require_equal_length(a, b);
  std::vector<std::size_t> sorted(cuts.begin(), cuts.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kTooManyCutPoints, "cut positions must be distinct");
  }
  if (!sorted.empty() && (sorted.front() == 0 || sorted.back() >= a.size())) {
    throw Error(ErrorCode::kTooManyCutPoints, "cut positions must lie in 1..l-1");
  }
  Word c1 = a;
  Word c2 = b;
  bool swapped = false;
  std::size_t next_cut = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    while (next_cut < sorted.size() && sorted[next_cut] == i) {
      swapped = !swapped;
      ++next_cut;
    }
    if (swapped) std::swap(c1[i], c2[i]);
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<Word, Word> crossover_kpoint(const Word& a, const Word& b, std::size_t k, Rng& rng) {
  require_equal_length(a, b);
  if (k == 0 || k + 1 > a.size()) {
    throw Error(ErrorCode::kTooManyCutPoints, std::to_string(k) + " cut points do not fit in " +
                                                  std::to_string(a.size()) + " symbols");
  }
  std::vector<std::size_t> gaps(a.size() - 1);
  std::iota(gaps.begin(), gaps.end(), std::size_t{1});
  std::vector<std::size_t> cuts;
  cuts.reserve(k);
  std::sample(gaps.begin(), gaps.end(), std::back_inserter(cuts), k, rng);
  return crossover_at(a, b, cuts);
}

std::pair<Word, Word> crossover_uniform(const Word& a, const Word& b, Rng& rng) {
  return biased_exchange(a, b, 0.5, rng);
}

std::pair<Word, Word> crossover_probabilistic(const Word& a, double fitness_a, const Word& b,
                                              double fitness_b, Rng& rng) {
  const double total = fitness_a + fitness_b;
  const double p_a = total > 0.0 ? fitness_a / total : 0.5;
  return biased_exchange(a, b, p_a, rng);
}

Word mutate(const Word& word, double rate, const Alphabet& alphabet, Rng& rng) {
  if (rate <= 0.0) return word;
  std::bernoulli_distribution flip(rate);
  std::uniform_int_distribution<std::size_t> other(0, alphabet.size() - 2);
  Word out = word;
  for (auto& c : out) {
    if (!flip(rng)) continue;
    const auto current = alphabet.index_of(c);
    std::size_t pick = other(rng);
    if (current && pick >= *current) ++pick;
    c = alphabet[pick];
  }
  return out;
}

Population step(const Population& population, const GAConfig& config, Rng& rng) {
  const auto& fitness = fitness_by_name(config.fitness);
  const std::size_t n = config.population_size;
  std::bernoulli_distribution cross(config.crossover_rate);
  std::vector<Word> next;
  next.reserve(n);
  while (next.size() < n) {
    const std::size_t i = roulette_select_index(population, rng);
    const std::size_t j = roulette_select_index(population, rng);
    const Word& a = population[i];
    const Word& b = population[j];
    std::pair<Word, Word> children;
    if (cross(rng)) {
      children = std::visit(
          [&](const auto& method) -> std::pair<Word, Word> {
            using M = std::decay_t<decltype(method)>;
            if constexpr (std::is_same_v<M, KPoint>) {
              return crossover_kpoint(a, b, method.k, rng);
            } else if constexpr (std::is_same_v<M, Uniform>) {
              return crossover_uniform(a, b, rng);
            } else {
              return crossover_probabilistic(a, population.fitness()[i], b,
                                             population.fitness()[j], rng);
            }
          },
          config.crossover);
    } else {
      children = {a, b};
    }
    next.push_back(mutate(children.first, config.mutation_rate, config.alphabet, rng));
    if (next.size() < n) {
      next.push_back(mutate(children.second, config.mutation_rate, config.alphabet, rng));
    }
  }
  return Population(std::move(next), fitness);
}

RunTrace run(const GAConfig& config, Rng& rng) {
  config.validate();
  return run(config, random_population(config, fitness_by_name(config.fitness), rng), rng);
}

RunTrace run(const GAConfig& config, Population initial, Rng& rng) {
  config.validate();
  if (initial.size() != config.population_size || initial.length() != config.word_length) {
    throw Error(ErrorCode::kInvalidConfig, "initial population does not match the configured size and length");
  }
  for (const auto& w : initial.members()) {
    for (char c : w) {
      if (!config.alphabet.contains(c)) {
        throw Error(ErrorCode::kInvalidSymbol, "initial member \"" + w + "\" is not over the alphabet");
      }
    }
  }
  const auto& fitness = fitness_by_name(config.fitness);
  const double optimum = fitness.optimum(config.word_length);

  RunTrace trace;
  trace.generation_found = config.generation_cap;
  trace.snapshots.reserve(config.generation_cap + 1);
  trace.snapshots.push_back(std::move(initial));
  auto record = [&](std::size_t generation) {
    if (!trace.found && trace.snapshots.back().best_fitness() >= optimum) {
      trace.found = true;
      trace.generation_found = generation;
    }
  };
  record(0);
  for (std::size_t t = 1; t <= config.generation_cap; ++t) {
    trace.snapshots.push_back(step(trace.snapshots.back(), config, rng));
    record(t);
  }
  return trace;
}

RunTrace run(const GAConfig& config) {
  Rng rng = make_rng(config.seed);
  return run(config, rng);
}

std::string trace_csv(const RunTrace& trace) {
  std::string out = "generation,best_fitness,mean_fitness\n";
  for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
    const auto& p = trace.snapshots[t];
    out += csv_row({std::to_string(t), format_number(p.best_fitness()), format_number(p.mean_fitness())});
  }
  return out;
}

std::string snapshots_text(const RunTrace& trace) {
  std::string out;
  for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
    out += "# generation " + std::to_string(t) + "\n";
    for (const auto& w : trace.snapshots[t].members()) {
      out += w;
      out += '\n';
    }
  }
  return out;
}

}  // namespace schemata
