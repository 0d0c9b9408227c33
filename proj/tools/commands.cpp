#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "v2im/coloring.hpp"
#include "v2im/experiments.hpp"
#include "v2im/graph.hpp"
#include "v2im/puzzles.hpp"

namespace v2im::cli {

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

weighted_graph load_graph(const std::string& path) {
  try {
    return parse_edge_list(read_file(path));
  } catch (const parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

void write_trace(const run_flags& run, const trajectory& traj) {
  if (run.trace.empty()) return;
  std::ofstream out(run.trace);
  if (!out) throw usage_error("cannot write " + run.trace);
  write_trajectory_csv(out, traj);
}

json coloring_json(const coloring_result& r) {
  return {{"proper", r.proper},
          {"colors", r.assignment.colors},
          {"conflicts", r.conflicts},
          {"restarts_used", r.restarts_used},
          {"steps", r.steps},
          {"cut", r.cut}};
}

coloring_options coloring_opts(const run_flags& run) {
  coloring_options o;
  o.restarts = run.restarts;
  o.jobs = run.jobs;
  o.trace_stride = run.trace.empty() ? 0 : run.trace_stride;
  o.trace_spins = run.trace_spins;
  return o;
}

apex_coupling parse_coupling(const std::string& name) {
  if (name == "degree") return apex_coupling::degree;
  if (name == "uniform") return apex_coupling::uniform;
  throw usage_error("unknown coupling '" + name + "'");
}

}  // namespace

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw usage_error("bad K value '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = number(text.substr(0, dots));
    const auto hi = number(text.substr(dots + 2));
    if (hi < lo) throw usage_error("empty K range " + text);
    for (auto k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  std::stringstream s(text);
  std::string part;
  while (std::getline(s, part, ',')) out.push_back(number(part));
  if (out.empty()) throw usage_error("no K values given");
  return out;
}

int cmd_maxcut(const maxcut_args& args, io streams) {
  const auto g = load_graph(args.graph);
  maxcut_options mo;
  mo.restarts = args.run.restarts;
  mo.jobs = args.run.jobs;
  mo.trace_stride = args.run.trace.empty() ? 0 : args.run.trace_stride;
  mo.trace_spins = args.run.trace_spins;
  auto r = solve_maxcut(g, args.run.params, mo);
  write_trace(args.run, r.traj);
  json out = {{"cut", r.cut}, {"partition", r.sigma}, {"steps", r.steps}, {"restart", r.restart}};
  streams.out << out.dump() << '\n';
  return ok;
}

int cmd_color(const color_args& args, io streams) {
  if (args.colors < 2) throw usage_error("--colors must be at least 2");
  const auto g = load_graph(args.graph);
  const auto emb = build_coloring_ising(g, args.colors, args.lambda, parse_coupling(args.coupling));
  auto r = solve_coloring(g, emb, args.run.params, coloring_opts(args.run));
  write_trace(args.run, r.traj);
  streams.out << coloring_json(r).dump() << '\n';
  if (!r.proper) {
    streams.err << "no proper " << args.colors << "-coloring after " << r.restarts_used
                << " restarts (best has " << r.conflicts << " conflicts)\n";
    return unsolved;
  }
  return ok;
}

int cmd_latin(const latin_args& args, io streams) {
  if (args.size == 0) throw usage_error("--size must be at least 1");
  square_grid grid;
  json out;
  if (args.size == 1) {
    grid = {1, {1}};
    out = {{"proper", true}, {"colors", {1}}, {"conflicts", 0}, {"restarts_used", 0}, {"steps", 0}, {"cut", 0.0}};
  } else {
    const auto g = rook_graph(args.size);
    const auto emb = build_coloring_ising(g, args.size);
    auto r = solve_coloring(g, emb, args.run.params, coloring_opts(args.run));
    write_trace(args.run, r.traj);
    out = coloring_json(r);
    if (!r.proper) {
      streams.out << out.dump() << '\n';
      streams.err << "no Latin square of size " << args.size << " after " << r.restarts_used
                  << " restarts\n";
      return unsolved;
    }
    grid = assignment_to_grid(r.assignment, args.size);
    if (!validate_latin(grid)) throw std::logic_error("proper rook coloring is not a Latin square");
  }
  std::ostringstream rows;
  write_grid(rows, grid);
  if (args.grid_only) {
    streams.out << rows.str();
  } else {
    out["grid"] = grid.cells;
    streams.out << out.dump() << '\n';
    streams.err << rows.str();
  }
  return ok;
}

int cmd_sudoku(const sudoku_args& args, io streams) {
  if (args.puzzle.empty() == args.corpus.empty()) {
    throw usage_error("give exactly one of --puzzle and --corpus");
  }
  std::vector<corpus_entry> entries;
  try {
    if (!args.puzzle.empty()) {
      entries.push_back({parse_sudoku(args.puzzle), {}});
    } else {
      std::ifstream in(args.corpus);
      if (!in) throw usage_error("cannot open " + args.corpus);
      entries = read_sudoku_corpus(in, args.count);
    }
  } catch (const parse_error& e) {
    throw usage_error(e.what());
  }

  const auto g = sudoku_graph(3);
  const auto base = build_coloring_ising(g, 9);
  json records = json::array();
  std::vector<std::size_t> failed;
  std::ostringstream grids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    auto emb = base;
    const auto pins = clues_to_pins(e.quiz, emb);
    add_pins(emb, pins);
    auto params = args.run.params;
    params.seed = trial_seed(args.run.params.seed, i);
    auto opts = coloring_opts(args.run);
    auto r = solve_coloring(g, emb, params, opts);
    if (entries.size() == 1) write_trace(args.run, r.traj);

    json rec = {{"index", i},
                {"clues", e.quiz.clue_count()},
                {"proper", r.proper},
                {"conflicts", r.conflicts},
                {"restarts_used", r.restarts_used},
                {"steps", r.steps}};
    bool solved = false;
    if (r.proper) {
      const auto grid = assignment_to_grid(r.assignment, 9);
      const auto digits = grid_digits(grid);
      solved = validate_sudoku(grid, e.quiz) && (e.solution.empty() || digits == e.solution);
      rec["grid"] = digits;
      if (!e.solution.empty()) rec["matches_solution"] = digits == e.solution;
      grids << "puzzle " << i << '\n';
      write_grid(grids, grid);
    }
    rec["solved"] = solved;
    if (!solved) failed.push_back(i);
    streams.err << "puzzle " << i << ": " << (solved ? "solved" : "unsolved") << " after "
                << r.restarts_used << " restarts\n";
    records.push_back(std::move(rec));
  }

  if (args.grid_only) {
    streams.out << grids.str();
  } else {
    json out = {{"seed", args.run.params.seed},
                {"solved", entries.size() - failed.size()},
                {"total", entries.size()},
                {"unsolved", failed},
                {"puzzles", records}};
    streams.out << out.dump() << '\n';
    streams.err << grids.str();
  }
  if (!failed.empty()) {
    streams.err << "unsolved puzzles:";
    for (auto i : failed) streams.err << ' ' << i;
    streams.err << '\n';
    return unsolved;
  }
  return ok;
}

int cmd_experiment(const experiment_args& args, io streams) {
  const auto& p = args.run.params;
  json report;
  if (args.name == "converge-prob") {
    json records = json::array();
    json summary = json::object();
    for (auto k : parse_k_list(args.k)) {
      if (k < 2) throw usage_error("K must be at least 2");
      const auto point = convergence_probability(k, args.trials, p, args.run.jobs);
      records.push_back(to_json(point));
      summary[std::to_string(k)] = point.fraction();
    }
    report = experiment_report(p, summary, records);
  } else if (args.name == "equilibrium-census") {
    json records = json::array();
    std::size_t max_order = 0;
    for (auto k : parse_k_list(args.k)) {
      if (k < 2) throw usage_error("K must be at least 2");
      const auto census = equilibrium_census(k, args.trials, p, args.run.jobs);
      max_order = std::max(max_order, census.max_order());
      records.push_back(to_json(census));
    }
    report = experiment_report(p, {{"max_order", max_order}}, records);
  } else if (args.name == "maxcut-bench") {
    const auto q = maxcut_quality_benchmark(args.count, args.nodes, p, args.run.restarts, args.run.jobs);
    auto body = to_json(q);
    json summary = {{"mean_ratio", q.mean_ratio}, {"min_ratio", q.min_ratio}, {"skipped", q.skipped}};
    report = experiment_report(p, summary, body["instances"]);
  } else {
    throw usage_error("unknown experiment '" + args.name +
                      "' (expected converge-prob, equilibrium-census or maxcut-bench)");
  }
  streams.out << report.dump(2) << '\n';
  return ok;
}

}  // namespace v2im::cli
