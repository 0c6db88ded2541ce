#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "schemata/analysis.hpp"
#include "schemata/error.hpp"
#include "schemata/experiments.hpp"
#include "schemata/ga.hpp"
#include "schemata/lattice.hpp"

namespace schemata::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WordSource {
  std::vector<std::string> words;
  std::string input;
  std::string alphabet;

  void attach(CLI::App& app, const char* what) {
    app.add_option("words", words, std::string(what) + " given inline");
    app.add_option("--input", input, std::string(what) + " read from a file, whitespace separated")
        ->check(CLI::ExistingFile);
    app.add_option("--alphabet", alphabet, "Alphabet symbols in order (default: inferred from the input)");
  }

  std::vector<std::string> read() const {
    std::vector<std::string> out = words;
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw UsageError("cannot read " + input);
      out.insert(out.end(), std::istream_iterator<std::string>(in), std::istream_iterator<std::string>());
    }
    if (out.empty()) throw UsageError("no words given; pass them inline or with --input");
    return out;
  }

  Alphabet resolve(const std::vector<std::string>& text) const {
    return alphabet.empty() ? Alphabet::infer(text) : Alphabet(alphabet);
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("failed writing " + path);
}

Json lattice_json(const SchematicLattice& lattice, const std::vector<Reach>* classes) {
  Json elements = Json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& s = lattice.elements()[i];
    Json e{{"schema", s.to_string()}, {"antiorder", antiorder(s)}};
    if (classes != nullptr) e["class"] = to_string((*classes)[i]);
    elements.push_back(std::move(e));
  }
  Json covers = Json::array();
  for (const auto& c : lattice.covers()) covers.push_back({c.lower, c.upper});
  return Json{{"alphabet", std::string(lattice.alphabet().symbols())},
              {"length", lattice.length()},
              {"elements", std::move(elements)},
              {"covers", std::move(covers)}};
}

Json report_json(const BuildingBlockReport& r) {
  Json blocks = Json::array();
  for (const auto& s : r.building_blocks) blocks.push_back(s.to_string());
  Json j{{"generation", r.generation}, {"lattice_size", r.lattice_size}, {"building_blocks", std::move(blocks)}};
  j["avg_order"] = r.avg_order ? Json(*r.avg_order) : Json(nullptr);
  j["avg_defining_length"] = r.avg_defining_length ? Json(*r.avg_defining_length) : Json(nullptr);
  j["blend_combination_fraction"] =
      r.blend_combination_fraction ? Json(*r.blend_combination_fraction) : Json(nullptr);
  return j;
}

// Flags shared by the GA and both experiments; unset values keep `base`.
struct GaFlags {
  std::size_t length = 0;
  std::size_t pop = 0;
  double mutation = -1;
  std::string crossover;
  double crossover_rate = -1;
  std::size_t cap = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App& app, bool with_crossover) {
    app.add_option("--length", length, "Word length")->check(CLI::PositiveNumber);
    app.add_option("--pop", pop, "Population size")->check(CLI::PositiveNumber);
    app.add_option("--mutation", mutation, "Per-symbol mutation rate")->check(CLI::Range(0.0, 1.0));
    if (with_crossover) {
      app.add_option("--crossover", crossover, "Crossover method: k-point (e.g. 2-point), UX or PX");
    }
    app.add_option("--crossover-rate", crossover_rate, "Probability a selected pair is crossed")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--cap", cap, "Generation cap")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Master random seed")->capture_default_str();
  }

  GAConfig apply(GAConfig base) const {
    if (length) base.word_length = length;
    if (pop) base.population_size = pop;
    if (mutation >= 0) base.mutation_rate = mutation;
    if (!crossover.empty()) base.crossover = parse_crossover(crossover);
    if (crossover_rate >= 0) base.crossover_rate = crossover_rate;
    if (cap) base.generation_cap = cap;
    base.seed = seed;
    return base;
  }
};

struct CompleteCommand {
  WordSource source;
  std::string output;
  std::string format = "text";
  std::size_t budget = 1'000'000;

  void attach(CLI::App& app) {
    source.attach(app, "Population words");
    app.add_option("--output", output, "Output file (default: stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "dot", "json"}));
    app.add_option("--budget", budget, "Maximum number of lattice elements")->check(CLI::PositiveNumber);
  }

  int execute() const {
    const auto text = source.read();
    const auto alphabet = source.resolve(text);
    const auto lattice = complete(WordSet::parse(text, alphabet), alphabet, CompletionOptions{budget});
    if (format == "dot") {
      write_output(output, to_dot(lattice));
    } else if (format == "json") {
      write_output(output, lattice_json(lattice, nullptr).dump(2) + "\n");
    } else {
      write_output(output, dump(lattice));
    }
    return kExitOk;
  }
};

struct ReachCommand {
  WordSource source;
  std::string output;
  std::string format = "dot";
  std::size_t budget = kDefaultFullSpaceBudget;

  void attach(CLI::App& app) {
    source.attach(app, "Generation words");
    app.add_option("--output", output, "Output file (default: stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"dot", "text", "json"}));
    app.add_option("--budget", budget, "Maximum size of the full schema space")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  int execute() const {
    const auto text = source.read();
    const auto alphabet = source.resolve(text);
    const auto marking = mark_reachability(WordSet::parse(text, alphabet), alphabet, budget);
    if (format == "dot") {
      write_output(output, to_dot(marking));
    } else if (format == "json") {
      write_output(output, lattice_json(marking.space, &marking.classes).dump(2) + "\n");
    } else {
      std::string out;
      for (std::size_t i = 0; i < marking.space.size(); ++i) {
        out += std::string(to_string(marking.classes[i])) + ' ' + marking.space.elements()[i].to_string() + '\n';
      }
      write_output(output, out);
    }
    return kExitOk;
  }
};

struct GaCommand {
  GaFlags flags;
  WordSource initial;
  std::string output;
  std::string snapshots;
  std::string format = "csv";

  void attach(CLI::App& app) {
    flags.attach(app, true);
    app.add_option("words", initial.words, "Initial population given inline (default: random)");
    app.add_option("--input", initial.input, "Initial population read from a file")->check(CLI::ExistingFile);
    app.add_option("--output", output, "Trace output file (default: stdout)");
    app.add_option("--snapshots", snapshots, "Also write every generation's members to this file");
    app.add_option("--format", format, "Trace format")->check(CLI::IsMember({"csv", "json"}));
  }

  int execute() const {
    GAConfig cfg = flags.apply(GAConfig{});
    Rng rng = make_rng(cfg.seed);
    RunTrace trace;
    if (initial.words.empty() && initial.input.empty()) {
      trace = run(cfg, rng);
    } else {
      auto members = initial.read();
      if (!flags.length) cfg.word_length = members.front().size();
      if (!flags.pop) cfg.population_size = members.size();
      trace = run(cfg, Population(std::move(members), fitness_by_name(cfg.fitness)), rng);
    }
    if (format == "json") {
      Json generations = Json::array();
      for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
        generations.push_back({{"generation", t},
                               {"best_fitness", trace.snapshots[t].best_fitness()},
                               {"mean_fitness", trace.snapshots[t].mean_fitness()}});
      }
      const Json doc{{"seed", cfg.seed},
                     {"crossover", to_string(cfg.crossover)},
                     {"generation_found", trace.generation_found},
                     {"found", trace.found},
                     {"generations", std::move(generations)}};
      write_output(output, doc.dump(2) + "\n");
    } else {
      write_output(output, trace_csv(trace));
    }
    if (!snapshots.empty()) write_output(snapshots, snapshots_text(trace));
    std::cerr << "seed=" << cfg.seed << " crossover=" << to_string(cfg.crossover)
              << " generation_found=" << trace.generation_found << " found=" << (trace.found ? "true" : "false")
              << "\n";
    return kExitOk;
  }
};

struct ExperimentCommand {
  std::string name;
  GaFlags flags;
  std::size_t sims = 0;
  std::size_t jobs = 0;
  std::size_t budget = 1'000'000;
  std::vector<std::string> methods;
  bool strict = false;
  std::string output;
  std::string json;

  void attach(CLI::App& app) {
    app.add_option("name", name, "Experiment: order-dl or crossover")
        ->required()
        ->check(CLI::IsMember({"order-dl", "crossover"}));
    flags.attach(app, true);
    app.add_option("--sims", sims, "Number of simulations (default: 20 for order-dl, 100 for crossover)")
        ->check(CLI::PositiveNumber);
    app.add_option("--jobs", jobs, "Worker threads (default: available parallelism)");
    app.add_option("--budget", budget, "Per-generation lattice element budget; larger runs are excluded")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--methods", methods, "Crossover methods for the crossover experiment")->delimiter(',');
    app.add_flag("--strict", strict, "Count only blends of two or more building blocks");
    app.add_option("--output", output, "CSV output file (default: stdout)");
    app.add_option("--json", json, "Write per-generation building blocks (order-dl) or row details (crossover)");
  }

  int execute() const {
    ExperimentOptions opts;
    opts.master_seed = flags.seed;
    opts.jobs = jobs;
    opts.element_budget = budget;
    opts.mode = strict ? BlendMode::kStrict : BlendMode::kInclusive;

    std::size_t excluded = 0;
    if (name == "order-dl") {
      if (!methods.empty()) throw UsageError("--methods applies only to the crossover experiment");
      const GAConfig cfg = flags.apply(order_dl_defaults());
      opts.n_sims = sims ? sims : 20;
      const auto result = experiment_order_dl(cfg, opts);
      write_output(output, to_csv(result));
      if (!json.empty()) {
        Json reports = Json::array();
        for (const auto& r : result.first_run) reports.push_back(report_json(r));
        write_output(json, Json{{"seed", flags.seed}, {"generations", std::move(reports)}}.dump(2) + "\n");
      }
      excluded = result.excluded_runs.size();
      for (auto run_index : result.excluded_runs) {
        std::cerr << "excluded simulation " << run_index << ": element budget " << budget << " exceeded\n";
      }
    } else {
      if (!flags.crossover.empty()) throw UsageError("use --methods to choose crossover methods");
      const GAConfig cfg = flags.apply(crossover_defaults());
      opts.n_sims = sims ? sims : 100;
      std::vector<CrossoverMethod> chosen;
      for (const auto& m : methods) chosen.push_back(parse_crossover(m));
      if (chosen.empty()) chosen = standard_crossover_methods();
      const auto result = experiment_crossover(chosen, cfg, opts);
      write_output(output, to_csv(result));
      if (!json.empty()) {
        Json rows = Json::array();
        for (const auto& r : result.rows) {
          rows.push_back({{"method", to_string(r.method)},
                          {"mean_gen_found", r.mean_gen_found},
                          {"sd_gen_found", r.sd_gen_found},
                          {"mean_bb_combined", r.mean_bb_combined},
                          {"sd_bb_combined", r.sd_bb_combined},
                          {"n_runs", r.n_runs},
                          {"n_fraction_runs", r.n_fraction_runs}});
        }
        write_output(json, Json{{"seed", flags.seed}, {"rows", std::move(rows)}}.dump(2) + "\n");
      }
      excluded = result.excluded_runs.size();
      for (auto task : result.excluded_runs) {
        std::cerr << "excluded " << to_string(chosen[task / opts.n_sims]) << " simulation " << task % opts.n_sims
                  << ": element budget " << budget << " exceeded\n";
      }
    }
    std::cerr << "experiment=" << name << " seed=" << flags.seed << " sims=" << opts.n_sims
              << " excluded=" << excluded << "\n";
    return kExitOk;
  }
};

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Schematic completion, schematic lattices and building-block experiments", "schemata"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  CompleteCommand complete_cmd;
  ReachCommand reach_cmd;
  GaCommand ga_cmd;
  ExperimentCommand experiment_cmd;
  auto* complete_app = app.add_subcommand("complete", "Compute the schematic lattice of a population");
  auto* reach_app = app.add_subcommand("reach", "Mark which schemata blending can reach from a generation");
  auto* ga_app = app.add_subcommand("ga", "Run the genetic algorithm and write its fitness trace");
  auto* experiment_app = app.add_subcommand("experiment", "Run a building-block experiment");
  complete_cmd.attach(*complete_app);
  reach_cmd.attach(*reach_app);
  ga_cmd.attach(*ga_app);
  experiment_cmd.attach(*experiment_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (complete_app->parsed()) return complete_cmd.execute();
    if (reach_app->parsed()) return reach_cmd.execute();
    if (ga_app->parsed()) return ga_cmd.execute();
    return experiment_cmd.execute();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kBudgetExceeded ? kExitBudget : kExitInvalid;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace schemata::cli
