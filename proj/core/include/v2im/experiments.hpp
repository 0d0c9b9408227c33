#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "v2im/graph.hpp"
#include "v2im/machine.hpp"
#include "v2im/rng.hpp"

namespace v2im {

class too_large : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct brute_force_result {
  double cut = 0.0;
  // Optimal pattern with sigma[0] = +1.
  std::vector<int> sigma;
  // Every optimal pattern with sigma[0] = +1, up to the cap given.
  std::vector<std::vector<int>> optima;
  std::size_t optimum_count = 0;
};

// Exhaustive search over the 2^(n-1) patterns modulo a global flip. Refuses
// graphs with more than 24 nodes.
brute_force_result brute_force_maxcut(const weighted_graph& g, std::size_t keep_optima = 64);

// Edges present with probability p, weights uniform on (0, 1].
weighted_graph random_weighted_graph(std::size_t n, double p, rng& gen);

// Apex plus K color spins of a single uncolored node.
weighted_graph coloring_gadget(std::size_t colors);

struct convergence_point {
  std::size_t colors = 0;
  std::size_t trials = 0;
  std::size_t definite = 0;
  double fraction() const { return trials ? static_cast<double>(definite) / static_cast<double>(trials) : 0.0; }
};

// Independent runs of the single-node gadget from random states; counts the
// runs whose final spins encode exactly one color.
convergence_point convergence_probability(std::size_t colors, std::size_t trials,
                                          const solver_params& params, unsigned jobs = 1);

struct census_result {
  std::size_t colors = 0;
  std::size_t trials = 0;
  // (cluster order, definite) -> runs
  std::map<std::pair<std::size_t, bool>, std::size_t> histogram;

  std::size_t count(std::size_t order, bool definite) const;
  std::size_t max_order() const;
};

// Cluster order of the final gadget states with apex charge K - 2 and unit
// charges on the color spins.
census_result equilibrium_census(std::size_t colors, std::size_t trials, const solver_params& params,
                                 unsigned jobs = 1);

struct quality_instance {
  std::size_t index = 0;
  std::size_t edges = 0;
  double optimum = 0.0;
  double achieved = 0.0;
  double ratio = 0.0;
  bool skipped = false;
};

struct quality_report {
  std::size_t nodes = 0;
  std::size_t restarts = 0;
  std::vector<quality_instance> instances;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  std::size_t skipped = 0;
};

// Random graphs (edge probability 1/2) solved with restarts and compared to
// the exhaustive optimum. Graphs without edges are skipped.
quality_report maxcut_quality_benchmark(std::size_t count, std::size_t n, const solver_params& params,
                                        std::size_t restarts, unsigned jobs = 1);

nlohmann::json to_json(const solver_params& params);
nlohmann::json to_json(const convergence_point& point);
nlohmann::json to_json(const census_result& census);
nlohmann::json to_json(const quality_report& report);

// {"seed": ..., "params": ..., "summary": ..., "records": [...]}
nlohmann::json experiment_report(const solver_params& params, nlohmann::json summary,
                                 nlohmann::json records);

}  // namespace v2im
