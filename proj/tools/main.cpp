#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "v2im/experiments.hpp"
#include "v2im/graph.hpp"

namespace {

using namespace v2im;
using namespace v2im::cli;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("V2_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring unparsable V2_SEED=" << env << '\n';
    }
  }
  return 1;
}

void add_run_flags(CLI::App* cmd, run_flags& run, bool tracing) {
  auto& p = run.params;
  cmd->add_option("--dt", p.dt, "Euler step")->capture_default_str();
  cmd->add_option("--steps", p.max_steps, "step budget per run")->capture_default_str();
  cmd->add_option("--stall-window", p.stall_window, "quiet steps before stopping (0 = never)")
      ->capture_default_str();
  cmd->add_option("--perturb-period", p.perturb_period, "steps between kicks (0 = off)")
      ->capture_default_str();
  cmd->add_option("--perturb-amp", p.perturb_amplitude, "kick amplitude")->capture_default_str();
  cmd->add_option("--seed", p.seed, "base seed (falls back to V2_SEED)")->capture_default_str();
  cmd->add_option("--restarts", run.restarts, "independent runs")->capture_default_str();
  cmd->add_option("--jobs", run.jobs, "worker threads")->capture_default_str();
  cmd->add_flag("--no-gate", [&p](std::int64_t) { p.gate_wraps = false; },
                "let every spin wrap without the cut check");
  if (tracing) {
    cmd->add_option("--trace", run.trace, "write the trajectory CSV here");
    cmd->add_option("--trace-stride", run.trace_stride, "steps between trace rows")->capture_default_str();
    cmd->add_flag("--trace-spins", run.trace_spins, "add sigma and x columns to the trace");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"V2 dynamical Ising machine: max-cut, coloring, Latin squares and Sudoku"};
  app.require_subcommand(1);
  const auto seed = default_seed();

  maxcut_args mc;
  mc.run.params.seed = seed;
  mc.run.restarts = 10;
  auto* maxcut = app.add_subcommand("maxcut", "maximum cut of a weighted edge list");
  maxcut->add_option("graph", mc.graph, "edge-list file")->required();
  add_run_flags(maxcut, mc.run, true);

  color_args col;
  col.run.params = solver_params::solving();
  col.run.params.seed = seed;
  col.run.restarts = 50;
  auto* color = app.add_subcommand("color", "proper K-coloring of a graph");
  color->add_option("graph", col.graph, "edge-list file")->required();
  color->add_option("--colors,-k", col.colors, "number of colors")->required();
  color->add_option("--lambda", col.lambda, "one-hot penalty weight")->capture_default_str();
  color->add_option("--coupling", col.coupling, "apex coupling: degree or uniform")->capture_default_str();
  add_run_flags(color, col.run, true);

  latin_args lat;
  lat.run.params = solver_params::solving();
  lat.run.params.seed = seed;
  lat.run.restarts = 50;
  auto* latin = app.add_subcommand("latin", "Latin square via the rook graph");
  latin->add_option("--size,-n", lat.size, "side N")->required();
  latin->add_flag("--grid", lat.grid_only, "print only the grid");
  add_run_flags(latin, lat.run, true);

  sudoku_args sud;
  sud.run.params = solver_params::solving();
  sud.run.params.seed = seed;
  sud.run.restarts = 3;
  bool full = false;
  auto* sudoku = app.add_subcommand("sudoku", "Sudoku with clues held fixed");
  sudoku->add_flag("--full", full, "50 corpus rows with 50 restarts each (slow)");
  auto* puzzle_opt = sudoku->add_option("--puzzle", sud.puzzle, "81 characters, 0 or . for blanks");
  auto* corpus_opt = sudoku->add_option("--corpus", sud.corpus, "CSV with quizzes,solutions");
  puzzle_opt->excludes(corpus_opt);
  sudoku->add_option("--count", sud.count, "rows of the corpus to solve")->capture_default_str();
  sudoku->add_flag("--grid", sud.grid_only, "print only the grids");
  add_run_flags(sudoku, sud.run, true);

  experiment_args ex;
  ex.run.params.seed = seed;
  ex.run.restarts = 10;
  auto* experiment = app.add_subcommand("experiment", "converge-prob, equilibrium-census or maxcut-bench");
  experiment->add_option("name", ex.name, "experiment name")->required();
  experiment->add_option("--k", ex.k, "colors: 5, 2..10 or 3,5,7")->capture_default_str();
  experiment->add_option("--trials", ex.trials, "runs per K")->capture_default_str();
  experiment->add_option("--count", ex.count, "graphs for maxcut-bench")->capture_default_str();
  experiment->add_option("--nodes", ex.nodes, "nodes per graph for maxcut-bench")->capture_default_str();
  add_run_flags(experiment, ex.run, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  const io streams{std::cout, std::cerr};
  try {
    for (auto* run : {&mc.run, &col.run, &lat.run, &sud.run, &ex.run}) {
      try {
        run->params.validate();
      } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
      }
    }
    if (*maxcut) return cmd_maxcut(mc, streams);
    if (*color) return cmd_color(col, streams);
    if (*latin) return cmd_latin(lat, streams);
    if (*sudoku) {
      if (full) {
        sud.count = 50;
        sud.run.restarts = 50;
      }
      return cmd_sudoku(sud, streams);
    }
    if (*experiment) return cmd_experiment(ex, streams);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const too_large& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  }
  return internal;
}
