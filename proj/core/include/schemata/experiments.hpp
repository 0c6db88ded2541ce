#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "schemata/analysis.hpp"
#include "schemata/ga.hpp"

namespace schemata {

struct ExperimentOptions {
  std::size_t n_sims = 1;
  std::uint64_t master_seed = 0;
  // 0 selects the available hardware parallelism.
  std::size_t jobs = 0;
  std::size_t element_budget = 1'000'000;
  BlendMode mode = BlendMode::kInclusive;
};

// l = 64, n = 30, mutation 0.005, cap 120, 1-point.
GAConfig order_dl_defaults();
// l = 16, n = 12, mutation 0.005, cap 120, 1-point.
GAConfig crossover_defaults();

struct OrderDlRow {
  std::size_t generation = 0;
  double mean_avg_order = 0.0;
  double mean_avg_dl = 0.0;
  double sd_avg_order = 0.0;
  double sd_avg_dl = 0.0;
  std::size_t n_samples = 0;
};

struct OrderDlResult {
  std::vector<OrderDlRow> rows;  // generation_cap + 1 rows
  // Simulations dropped because a completion exceeded the element budget.
  std::vector<std::size_t> excluded_runs;
  // Reports of the first non-excluded simulation.
  std::vector<BuildingBlockReport> first_run;
};

OrderDlResult experiment_order_dl(const GAConfig& config, const ExperimentOptions& options);

struct CrossoverRow {
  CrossoverMethod method;
  double mean_gen_found = 0.0;
  double sd_gen_found = 0.0;
  double mean_bb_combined = 0.0;
  double sd_bb_combined = 0.0;
  // Runs that produced at least one defined blend fraction.
  std::size_t n_fraction_runs = 0;
  std::size_t n_runs = 0;
};

struct CrossoverResult {
  std::vector<CrossoverRow> rows;
  std::vector<std::size_t> excluded_runs;  // as method_index * n_sims + sim
};

CrossoverResult experiment_crossover(std::span<const CrossoverMethod> methods,
                                     const GAConfig& config, const ExperimentOptions& options);

// generation,mean_avg_order,mean_avg_dl,n_samples
std::string to_csv(const OrderDlResult& result);
// method,mean_gen_found,sd_gen_found,mean_bb_combined,sd_bb_combined
std::string to_csv(const CrossoverResult& result);

}  // namespace schemata
