#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "schemata/csv.hpp"
#include "schemata/error.hpp"
#include "schemata/ga.hpp"

namespace schemata {
namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected schemata::Error";
  return ErrorCode::kInvalidConfig;
}

bool partition_exchange(const Word& a, const Word& b, const std::pair<Word, Word>& children) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool same = children.first[i] == a[i] && children.second[i] == b[i];
    const bool swapped = children.first[i] == b[i] && children.second[i] == a[i];
    if (!same && !swapped) return false;
  }
  return true;
}

TEST(Fitness, OneMax) {
  EXPECT_EQ(fitness_onemax("1111"), 4);
  EXPECT_EQ(fitness_onemax("0000"), 0);
  EXPECT_EQ(fitness_onemax("1010"), 2);
  EXPECT_EQ(code_of([] { fitness_onemax("10a1"); }), ErrorCode::kNonBinaryWord);
  EXPECT_EQ(onemax().optimum(16), 16);
  EXPECT_EQ(fitness_by_name("OneMax").name, "onemax");
  EXPECT_EQ(code_of([] { fitness_by_name("royal-road"); }), ErrorCode::kInvalidConfig);
}

TEST(Crossover, NamesRoundTrip) {
  for (const auto& m : standard_crossover_methods()) EXPECT_EQ(parse_crossover(to_string(m)), m);
  EXPECT_EQ(standard_crossover_methods().size(), 11u);
  EXPECT_EQ(parse_crossover("kpoint:3"), CrossoverMethod{KPoint{3}});
  EXPECT_EQ(parse_crossover("uniform"), CrossoverMethod{Uniform{}});
  EXPECT_EQ(parse_crossover("probabilistic"), CrossoverMethod{Probabilistic{}});
  EXPECT_EQ(parse_crossover("2point"), CrossoverMethod{KPoint{2}});
  for (const char* bad : {"0-point", "x-point", "kpoint:", "blend", "-1-point"}) {
    EXPECT_EQ(code_of([&] { parse_crossover(bad); }), ErrorCode::kInvalidConfig) << bad;
  }
}

TEST(Crossover, OnePointAtFixedCut) {
  const auto [c1, c2] = crossover_at("1111", "0000", std::vector<std::size_t>{2});
  EXPECT_EQ(c1, "1100");
  EXPECT_EQ(c2, "0011");
}

TEST(Crossover, AllGapsCutAlternates) {
  Rng rng = make_rng(1);
  const auto [c1, c2] = crossover_kpoint("11111", "00000", 4, rng);
  EXPECT_EQ(c1, "10101");
  EXPECT_EQ(c2, "01010");
}

TEST(Crossover, IdenticalParentsGiveIdenticalChildren) {
  Rng rng = make_rng(2);
  const Word a = "10110";
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto c = crossover_kpoint(a, a, k, rng);
    EXPECT_EQ(c.first, a);
    EXPECT_EQ(c.second, a);
  }
  EXPECT_EQ(crossover_uniform(a, a, rng).first, a);
  EXPECT_EQ(crossover_probabilistic(a, 3, a, 1, rng).second, a);
}

TEST(Crossover, KPointHasExactlyKSwitches) {
  Rng rng = make_rng(3);
  const Word a(16, '1'), b(16, '0');
  for (std::size_t k = 1; k <= 15; ++k) {
    for (int n = 0; n < 50; ++n) {
      const auto c = crossover_kpoint(a, b, k, rng);
      ASSERT_TRUE(partition_exchange(a, b, c));
      std::size_t switches = 0;
      for (std::size_t i = 1; i < a.size(); ++i) switches += c.first[i] != c.first[i - 1];
      ASSERT_EQ(switches, k);
      ASSERT_EQ(c.first.front(), '1');
    }
  }
}

TEST(Crossover, EveryMethodIsAPartitionExchange) {
  Rng rng = make_rng(4);
  for (int n = 0; n < 500; ++n) {
    Word a(12, '0'), b(12, '0');
    for (auto& c : a) c = static_cast<char>('0' + rng() % 2);
    for (auto& c : b) c = static_cast<char>('0' + rng() % 2);
    EXPECT_TRUE(partition_exchange(a, b, crossover_kpoint(a, b, 1 + rng() % 11, rng)));
    EXPECT_TRUE(partition_exchange(a, b, crossover_uniform(a, b, rng)));
    EXPECT_TRUE(partition_exchange(a, b, crossover_probabilistic(a, 5, b, 2, rng)));
  }
}

TEST(Crossover, Errors) {
  Rng rng = make_rng(5);
  EXPECT_EQ(code_of([&] { crossover_kpoint("1111", "0000", 4, rng); }), ErrorCode::kTooManyCutPoints);
  EXPECT_EQ(code_of([&] { crossover_kpoint("1111", "0000", 0, rng); }), ErrorCode::kTooManyCutPoints);
  EXPECT_EQ(code_of([&] { crossover_kpoint("111", "0000", 1, rng); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([&] { crossover_uniform("111", "0000", rng); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([&] { crossover_at("1111", "0000", std::vector<std::size_t>{0}); }),
            ErrorCode::kTooManyCutPoints);
  EXPECT_EQ(code_of([&] { crossover_at("1111", "0000", std::vector<std::size_t>{2, 2}); }),
            ErrorCode::kTooManyCutPoints);
}

TEST(Mutate, RateExtremes) {
  Rng rng = make_rng(6);
  EXPECT_EQ(mutate("1010", 0.0, Alphabet::binary(), rng), "1010");
  EXPECT_EQ(mutate("1010", 1.0, Alphabet::binary(), rng), "0101");
  const Alphabet abc("abc");
  for (int n = 0; n < 200; ++n) {
    const Word m = mutate("abcabc", 1.0, abc, rng);
    for (std::size_t i = 0; i < m.size(); ++i) ASSERT_NE(m[i], "abcabc"[i]);
  }
}

TEST(Config, Validation) {
  GAConfig ok;
  EXPECT_NO_THROW(ok.validate());
  auto with = [](auto edit) {
    GAConfig c;
    edit(c);
    return code_of([&] { c.validate(); });
  };
  EXPECT_EQ(with([](GAConfig& c) { c.word_length = 0; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(with([](GAConfig& c) { c.population_size = 0; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(with([](GAConfig& c) { c.mutation_rate = 1.5; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(with([](GAConfig& c) { c.crossover_rate = -0.1; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(with([](GAConfig& c) { c.generation_cap = 0; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(with([](GAConfig& c) { c.crossover = KPoint{16}; }), ErrorCode::kTooManyCutPoints);
  EXPECT_EQ(with([](GAConfig& c) { c.fitness = "nope"; }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(with([](GAConfig& c) { c.alphabet = Alphabet("ab"); }), ErrorCode::kInvalidConfig);
}

TEST(Population, CachesFitness) {
  const Population p({"110", "000", "111"}, onemax());
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.length(), 3u);
  EXPECT_EQ(std::vector<double>(p.fitness().begin(), p.fitness().end()), (std::vector<double>{2, 0, 3}));
  EXPECT_EQ(p.best_fitness(), 3);
  EXPECT_DOUBLE_EQ(p.mean_fitness(), 5.0 / 3.0);
  EXPECT_EQ(code_of([] { Population({"11", "1"}, onemax()); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { Population({}, onemax()).best_fitness(); }), ErrorCode::kEmptyPopulation);
}

TEST(Step, PreservesSizeAndLengthIncludingOddPopulations) {
  Rng rng = make_rng(7);
  for (std::size_t n : {1u, 2u, 7u, 12u}) {
    GAConfig cfg;
    cfg.population_size = n;
    cfg.word_length = 9;
    cfg.crossover = Uniform{};
    auto pop = random_population(cfg, onemax(), rng);
    for (int t = 0; t < 20; ++t) {
      pop = step(pop, cfg, rng);
      ASSERT_EQ(pop.size(), n);
      for (const auto& w : pop.members()) ASSERT_EQ(w.size(), 9u);
    }
  }
}

TEST(Step, NoVariationResamplesMembers) {
  GAConfig cfg;
  cfg.population_size = 6;
  cfg.word_length = 4;
  cfg.mutation_rate = 0;
  cfg.crossover_rate = 0;
  const Population pop({"1000", "0100", "0010", "0001", "1100", "1110"}, onemax());
  Rng rng = make_rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto next = step(pop, cfg, rng);
    for (const auto& w : next.members()) {
      ASSERT_NE(std::find(pop.members().begin(), pop.members().end(), w), pop.members().end());
    }
  }
}

TEST(Step, DeterministicForFixedSeed) {
  GAConfig cfg;
  cfg.crossover = Probabilistic{};
  Rng seed_a = make_rng(9);
  const auto pop = random_population(cfg, onemax(), seed_a);
  Rng r1 = make_rng(10), r2 = make_rng(10);
  const auto a = step(pop, cfg, r1);
  const auto b = step(pop, cfg, r2);
  EXPECT_TRUE(std::equal(a.members().begin(), a.members().end(), b.members().begin(), b.members().end()));
}

TEST(Run, TraceShapeAndDeterminism) {
  GAConfig cfg;
  cfg.seed = 42;
  cfg.generation_cap = 30;
  const auto a = run(cfg);
  const auto b = run(cfg);
  EXPECT_EQ(a.snapshots.size(), 31u);
  EXPECT_EQ(trace_csv(a), trace_csv(b));
  EXPECT_EQ(snapshots_text(a), snapshots_text(b));
  EXPECT_LE(a.generation_found, 30u);
  cfg.seed = 43;
  EXPECT_NE(snapshots_text(run(cfg)), snapshots_text(a));
}

TEST(Run, GenerationFoundIsFirstHitOrCap) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GAConfig cfg;
    cfg.word_length = 6;
    cfg.population_size = 8;
    cfg.generation_cap = 25;
    cfg.seed = seed;
    const auto trace = run(cfg);
    std::size_t first = cfg.generation_cap;
    bool hit = false;
    for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
      if (trace.snapshots[t].best_fitness() == 6) {
        first = t;
        hit = true;
        break;
      }
    }
    EXPECT_EQ(trace.generation_found, first);
    EXPECT_EQ(trace.found, hit);
  }
}

TEST(Run, OptimumInInitialPopulationIsGenerationZero) {
  // Length 1: any population of 30 random bits almost surely holds a 1.
  GAConfig cfg;
  cfg.word_length = 1;
  cfg.population_size = 30;
  cfg.crossover = Uniform{};
  cfg.seed = 3;
  cfg.crossover_rate = 0;
  Rng rng = make_rng(cfg.seed);
  const auto trace = run(cfg, rng);
  ASSERT_TRUE(trace.snapshots.front().best_fitness() == 1);
  EXPECT_EQ(trace.generation_found, 0u);
}

TEST(Run, UniformInitialPopulationWithoutVariationStaysConstant) {
  GAConfig cfg;
  cfg.word_length = 6;
  cfg.population_size = 4;
  cfg.mutation_rate = 0;
  cfg.crossover_rate = 0;
  cfg.generation_cap = 10;
  Rng rng = make_rng(1);
  const auto trace = run(cfg, Population({"101100", "101100", "101100", "101100"}, onemax()), rng);
  for (const auto& p : trace.snapshots) EXPECT_EQ(p.best_fitness(), 3);
  EXPECT_FALSE(trace.found);
  EXPECT_EQ(trace.generation_found, 10u);
}

TEST(Run, InitialPopulationMustMatchConfig) {
  GAConfig cfg;
  cfg.word_length = 4;
  cfg.population_size = 2;
  Rng rng = make_rng(1);
  EXPECT_EQ(code_of([&] { run(cfg, Population({"1010"}, onemax()), rng); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { run(cfg, Population({"101", "010"}, onemax()), rng); }), ErrorCode::kInvalidConfig);
}

TEST(Run, CapBoundsGenerationFound) {
  GAConfig cfg;
  cfg.word_length = 4;
  cfg.population_size = 12;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.seed = seed;
    EXPECT_LE(run(cfg).generation_found, 120u);
  }
}

TEST(Run, TraceCsvColumns) {
  GAConfig cfg;
  cfg.generation_cap = 5;
  const auto rows = parse_csv(trace_csv(run(cfg)));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"generation", "best_fitness", "mean_fitness"}));
  EXPECT_EQ(rows[6][0], "5");
}

TEST(Rng, StreamsAreDistinctAndReproducible) {
  EXPECT_EQ(make_rng(1, 2)(), make_rng(1, 2)());
  EXPECT_NE(make_rng(1, 2)(), make_rng(1, 3)());
  EXPECT_NE(make_rng(1, 2)(), make_rng(2, 2)());
}

}  // namespace
}  // namespace schemata
