#include "schemata/experiments.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "schemata/csv.hpp"
#include "schemata/error.hpp"
#include "schemata/parallel.hpp"

namespace schemata {

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

// Sample standard deviation; 0 for fewer than two values.
MeanSd mean_sd(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

bool is_budget_error(const Error& e) { return e.code() == ErrorCode::kBudgetExceeded; }

}  // namespace

GAConfig order_dl_defaults() {
  GAConfig c;
  c.word_length = 64;
  c.population_size = 30;
  c.mutation_rate = 0.005;
  c.generation_cap = 120;
  c.crossover = KPoint{1};
  return c;
}

GAConfig crossover_defaults() {
  GAConfig c;
  c.word_length = 16;
  c.population_size = 12;
  c.mutation_rate = 0.005;
  c.generation_cap = 120;
  c.crossover = KPoint{1};
  return c;
}

OrderDlResult experiment_order_dl(const GAConfig& config, const ExperimentOptions& options) {
  config.validate();
  const std::size_t generations = config.generation_cap + 1;

  struct SimResult {
    bool excluded = false;
    std::vector<std::optional<std::pair<double, double>>> points;
    std::vector<BuildingBlockReport> reports;
  };
  std::vector<SimResult> sims(options.n_sims);

  const AnalysisOptions analysis{options.element_budget, options.mode, false};
  parallel_for(options.n_sims, options.jobs, [&](std::size_t i) {
    Rng rng = make_rng(options.master_seed, i);
    const auto trace = run(config, rng);
    SimResult& out = sims[i];
    try {
      out.reports = analyze_run(trace, config.alphabet, analysis);
    } catch (const Error& e) {
      if (!is_budget_error(e)) throw;
      out.excluded = true;
      return;
    }
    out.points.reserve(generations);
    for (const auto& r : out.reports) {
      if (r.avg_order) {
        out.points.emplace_back(std::pair(*r.avg_order, *r.avg_defining_length));
      } else {
        out.points.emplace_back(std::nullopt);
      }
    }
  });

  OrderDlResult result;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    if (sims[i].excluded) {
      result.excluded_runs.push_back(i);
    } else if (result.first_run.empty()) {
      result.first_run = std::move(sims[i].reports);
    }
  }
  for (std::size_t t = 0; t < generations; ++t) {
    std::vector<double> orders;
    std::vector<double> dls;
    for (const auto& sim : sims) {
      if (sim.excluded || !sim.points[t]) continue;
      orders.push_back(sim.points[t]->first);
      dls.push_back(sim.points[t]->second);
    }
    const auto o = mean_sd(orders);
    const auto d = mean_sd(dls);
    result.rows.push_back({t, o.mean, d.mean, o.sd, d.sd, orders.size()});
  }
  return result;
}

CrossoverResult experiment_crossover(std::span<const CrossoverMethod> methods, const GAConfig& config,
                                     const ExperimentOptions& options) {
  std::vector<GAConfig> configs;
  for (const auto& m : methods) {
    GAConfig c = config;
    c.crossover = m;
    c.validate();
    configs.push_back(std::move(c));
  }

  struct RunResult {
    bool excluded = false;
    double generation_found = 0.0;
    std::optional<double> fraction;
  };
  const std::size_t n_sims = options.n_sims;
  std::vector<RunResult> runs(methods.size() * n_sims);

  const AnalysisOptions analysis{options.element_budget, options.mode, true};
  parallel_for(runs.size(), options.jobs, [&](std::size_t task) {
    const std::size_t method = task / n_sims;
    const std::size_t sim = task % n_sims;
    // Every method sees the same initial population for a given simulation.
    Rng rng = make_rng(options.master_seed, sim);
    const auto trace = run(configs[method], rng);
    RunResult& out = runs[task];
    out.generation_found = static_cast<double>(trace.generation_found);
    std::vector<BuildingBlockReport> reports;
    try {
      reports = analyze_run(trace, config.alphabet, analysis);
    } catch (const Error& e) {
      if (!is_budget_error(e)) throw;
      out.excluded = true;
      return;
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : reports) {
      if (r.blend_combination_fraction) {
        sum += *r.blend_combination_fraction;
        ++count;
      }
    }
    if (count > 0) out.fraction = sum / static_cast<double>(count);
  });

  CrossoverResult result;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    std::vector<double> found;
    std::vector<double> fractions;
    for (std::size_t s = 0; s < n_sims; ++s) {
      const auto& r = runs[m * n_sims + s];
      if (r.excluded) {
        result.excluded_runs.push_back(m * n_sims + s);
        continue;
      }
      found.push_back(r.generation_found);
      if (r.fraction) fractions.push_back(*r.fraction);
    }
    const auto g = mean_sd(found);
    const auto b = mean_sd(fractions);
    result.rows.push_back({methods[m], g.mean, g.sd, b.mean, b.sd, fractions.size(), found.size()});
  }
  return result;
}

std::string to_csv(const OrderDlResult& result) {
  std::string out = "generation,mean_avg_order,mean_avg_dl,n_samples\n";
  for (const auto& r : result.rows) {
    out += csv_row({std::to_string(r.generation), format_number(r.mean_avg_order),
                    format_number(r.mean_avg_dl), std::to_string(r.n_samples)});
  }
  return out;
}

std::string to_csv(const CrossoverResult& result) {
  std::string out = "method,mean_gen_found,sd_gen_found,mean_bb_combined,sd_bb_combined\n";
  for (const auto& r : result.rows) {
    out += csv_row({to_string(r.method), format_number(r.mean_gen_found), format_number(r.sd_gen_found),
                    format_number(r.mean_bb_combined), format_number(r.sd_bb_combined)});
  }
  return out;
}

}  // namespace schemata
