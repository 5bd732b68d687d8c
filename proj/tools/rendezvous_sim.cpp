// rendezvous-sim: run, sweep and inspect rendezvous scenarios.
//
//   rendezvous-sim run SCENARIO [--seed N] [--max-rounds N] [--tol X] [--output-dir DIR]
//                               [--format csv|jsonl] [--allow-disconnected] [--no-plot]
//   rendezvous-sim sweep SCENARIO --laws meb,meo [--r-ctr a,b] [--n a,b] [--seeds a,b]
//                               [--threads N] [--output-dir DIR]
//   rendezvous-sim oracle SCENARIO [--seed N]
//   rendezvous-sim gen --n N --d D --rect lo,hi[,lo,hi...] --seed N --r-cmm X --r-ctr Y
//                      --law meb|meo [--explicit] [-o FILE]
//
// Exit status: 0 when every run achieved rendezvous within max_rounds, 2 when
// some run did not, 1 on errors.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rendezvous/sim.hpp"

namespace {

using namespace rendezvous;
using namespace rendezvous::sim;
namespace fs = std::filesystem;

constexpr int kExitAchieved = 0;
constexpr int kExitError = 1;
constexpr int kExitNotAchieved = 2;

void apply_seed(Scenario& s, const std::optional<std::uint64_t>& seed) {
  if (!seed) return;
  if (!s.generator || s.generator->kind != GeneratorSpec::Kind::uniform) {
    throw ScenarioError("--seed needs a scenario with a uniform generator");
  }
  s.generator->seed = *seed;
}

nlohmann::json solution_json(const CentralizedSolution& c) {
  nlohmann::json j{{"t_star", c.t_star}, {"target", std::vector<double>(c.target.begin(), c.target.end())}};
  if (c.target_region) {
    j["target_region"] = {{"lo", std::vector<double>(c.target_region->lo.begin(), c.target_region->lo.end())},
                          {"hi", std::vector<double>(c.target_region->hi.begin(), c.target_region->hi.end())}};
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronous robotic network simulator: enclosing-shape consensus and minimum-time rendezvous"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario");
  std::string run_path;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::size_t> run_max_rounds;
  std::optional<double> run_tol;
  std::string run_out = "out";
  std::optional<std::string> run_format;
  bool run_allow_disconnected = false;
  bool run_no_plot = false;
  run_cmd->add_option("scenario", run_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run_seed, "Override the generator seed");
  run_cmd->add_option("--max-rounds", run_max_rounds, "Round limit")->check(CLI::PositiveNumber);
  run_cmd->add_option("--tol", run_tol, "Rendezvous tolerance")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--output-dir", run_out, "Directory for summary, trajectory and plot files");
  run_cmd->add_option("--format", run_format, "Trajectory format")->check(CLI::IsMember({"csv", "jsonl"}));
  run_cmd->add_flag("--allow-disconnected", run_allow_disconnected, "Simulate even if the initial graph is disconnected");
  run_cmd->add_flag("--no-plot", run_no_plot, "Skip plot-data output");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid over a scenario template");
  std::string sweep_path;
  std::vector<std::string> sweep_laws;
  std::vector<double> sweep_r_ctr;
  std::vector<std::size_t> sweep_n;
  std::vector<std::uint64_t> sweep_seeds;
  unsigned sweep_threads = 0;
  std::string sweep_out = "out";
  bool sweep_allow_disconnected = false;
  sweep_cmd->add_option("scenario", sweep_path, "Scenario template")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--laws", sweep_laws, "Law variants (meb, meo)")->delimiter(',')->required();
  sweep_cmd->add_option("--r-ctr", sweep_r_ctr, "Control bounds")->delimiter(',');
  sweep_cmd->add_option("--n", sweep_n, "Agent counts")->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep_seeds, "Generator seeds")->delimiter(',');
  sweep_cmd->add_option("--threads", sweep_threads, "Worker threads (0: hardware concurrency)");
  sweep_cmd->add_option("--output-dir", sweep_out, "Directory for sweep.json");
  sweep_cmd->add_flag("--allow-disconnected", sweep_allow_disconnected, "Simulate disconnected instances too");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Print the centralized minimum-time solutions");
  std::string oracle_path;
  std::optional<std::uint64_t> oracle_seed;
  oracle_cmd->add_option("scenario", oracle_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--seed", oracle_seed, "Override the generator seed");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Write a random scenario file");
  std::size_t gen_n = 0;
  std::size_t gen_d = 2;
  std::vector<double> gen_rect;
  std::uint64_t gen_seed = 0;
  double gen_r_cmm = 0.0;
  double gen_r_ctr = 0.0;
  std::string gen_law = "meb";
  bool gen_explicit = false;
  std::string gen_output;
  gen_cmd->add_option("--n", gen_n, "Agent count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--d", gen_d, "Dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--rect", gen_rect, "lo,hi per axis")->delimiter(',')->required();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed")->required();
  gen_cmd->add_option("--r-cmm", gen_r_cmm, "Communication radius")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--r-ctr", gen_r_ctr, "Control bound")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--law", gen_law, "Law variant")->check(CLI::IsMember({"meb", "meo"}));
  gen_cmd->add_flag("--explicit", gen_explicit, "Write sampled positions instead of the generator spec");
  gen_cmd->add_option("-o,--output", gen_output, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      Scenario s = load_scenario(run_path);
      apply_seed(s, run_seed);
      if (run_max_rounds) s.max_rounds = *run_max_rounds;
      if (run_tol) s.network.rendezvous_tol = *run_tol;
      if (run_format) s.output.format = parse_format(*run_format);
      if (run_allow_disconnected) s.allow_disconnected = true;
      if (run_no_plot) s.output.plot = false;

      const RunResult result = run(s);
      const fs::path dir(run_out);
      write_summary(result.summary, dir / (s.name + ".summary.json"));
      export_trajectory(result.record, dir / (s.name + ".trajectory." + to_string(s.output.format)), s.output.format);
      if (s.output.plot && s.network.d == 2) emit_plot_data(result.record, dir / (s.name + ".plot.csv"));
      std::cout << summary_to_json(result.summary).dump(2) << "\n";
      return result.summary.achieved ? kExitAchieved : kExitNotAchieved;
    }

    if (*sweep_cmd) {
      Scenario s = load_scenario(sweep_path);
      if (sweep_allow_disconnected) s.allow_disconnected = true;
      SweepGrid grid;
      for (const auto& l : sweep_laws) grid.laws.push_back(parse_law(l));
      grid.r_ctr = sweep_r_ctr;
      grid.n = sweep_n;
      grid.seeds = sweep_seeds;
      const auto entries = sweep(s, grid, sweep_threads);
      const auto j = sweep_to_json(entries);
      fs::create_directories(sweep_out);
      sim::detail::write_atomically(fs::path(sweep_out) / "sweep.json", j.dump(2) + "\n");
      std::cout << j.dump(2) << "\n";
      for (const auto& e : entries) {
        if (!e.summary) return kExitError;
        if (!e.summary->achieved) return kExitNotAchieved;
      }
      return kExitAchieved;
    }

    if (*oracle_cmd) {
      Scenario s = load_scenario(oracle_path);
      apply_seed(s, oracle_seed);
      const auto positions = resolve_positions(s);
      nlohmann::json j{{"input_set", to_string(s.network.input_set)},
                       {"r_ctr", s.network.r_ctr},
                       {"ball", solution_json(centralized_mtr_ball(positions, s.network.r_ctr))},
                       {"cube", solution_json(centralized_mtr_cube(positions, s.network.r_ctr))}};
      std::cout << j.dump(2) << "\n";
      return kExitAchieved;
    }

    if (*gen_cmd) {
      if (gen_rect.size() != 2 * gen_d) {
        throw ScenarioError("--rect: expected " + std::to_string(2 * gen_d) + " values for d = " +
                            std::to_string(gen_d));
      }
      Scenario s;
      s.name = "gen-" + std::to_string(gen_seed);
      s.network.n = gen_n;
      s.network.d = gen_d;
      s.network.r_cmm = gen_r_cmm;
      s.network.r_ctr = gen_r_ctr;
      s.law = parse_law(gen_law);
      s.network.edge_map = s.law == LawVariant::meb ? EdgeMap::disk : EdgeMap::cube;
      s.network.input_set = s.law == LawVariant::meb ? InputSet::ball_bound : InputSet::cube_bound;
      GeneratorSpec g;
      for (std::size_t a = 0; a < gen_d; ++a) g.rectangle.push_back({gen_rect[2 * a], gen_rect[2 * a + 1]});
      g.seed = gen_seed;
      if (gen_explicit) {
        s.positions = generate_positions(g.rectangle, gen_n, gen_seed);
      } else {
        s.generator = g;
      }
      // Round-trip through the parser so a bad file is never written.
      const auto j = scenario_to_json(scenario_from_json(scenario_to_json(s)));
      if (gen_output.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        sim::detail::write_atomically(gen_output, j.dump(2) + "\n");
      }
      return kExitAchieved;
    }
  } catch (const std::exception& e) {
    std::cerr << "rendezvous-sim: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
