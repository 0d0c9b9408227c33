#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "v2im/graph.hpp"
#include "v2im/machine.hpp"

namespace v2im {

// How the auxiliary spin couples to the color spins of node i.
//  degree:  weighted degree of i plus lambda * (K - 2); the exact expansion
//           of the colliding-color penalty.
//  uniform: K + lambda * (K - 2) for every node; equal to `degree` on
//           K-regular graphs.
enum class apex_coupling { degree, uniform };

struct pin {
  node_id index;
  int sigma;
  double x;
};

// Max-cut instance for K-coloring: apex at index 0, spin (i, c) at
// 1 + i*K + c. Minimizing the coloring penalty is maximizing this cut.
struct ising_embedding {
  weighted_graph graph;
  std::size_t nodes = 0;
  std::size_t colors = 0;
  double lambda = 1.0;
  apex_coupling coupling = apex_coupling::degree;
  std::vector<pin> pinned;

  node_id index(node_id node, std::size_t color) const { return 1 + node * colors + color; }

  // Node id of the color complex each spin belongs to; -1 for the apex.
  std::vector<int> complex_map() const;

  // State with pins applied and marked fixed; free spins at (+1, 0).
  relaxed_spin_state pinned_state() const;
};

ising_embedding build_coloring_ising(const weighted_graph& g, std::size_t colors,
                                     double lambda = 1.0,
                                     apex_coupling coupling = apex_coupling::degree);

// Adds pins, replacing any earlier pin on the same index.
void add_pins(ising_embedding& embedding, std::span<const pin> pins);

// sigma^T A sigma over the embedding graph (both orderings of every edge).
double penalty_energy(const weighted_graph& g, std::span<const int> sigma);

struct color_assignment {
  static constexpr int invalid = 0;
  // 1..K, or `invalid`.
  std::vector<int> colors;

  std::size_t size() const noexcept { return colors.size(); }
  std::size_t invalid_count() const;
};

color_assignment decode_colors(const relaxed_spin_state& state, const ising_embedding& embedding);
color_assignment decode_colors(std::span<const int> sigma, const ising_embedding& embedding);

bool is_proper(const weighted_graph& g, const color_assignment& assignment);

// Monochromatic edges plus invalid nodes.
std::size_t conflict_count(const weighted_graph& g, const color_assignment& assignment);

struct coloring_options {
  std::size_t restarts = 50;
  unsigned jobs = 1;
  std::size_t trace_stride = 0;
  bool trace_spins = false;
};

struct coloring_result {
  bool proper = false;
  color_assignment assignment;
  std::size_t conflicts = 0;
  std::size_t restarts_used = 0;
  std::size_t steps = 0;
  double cut = 0.0;
  trajectory traj;
};

// Restart loop over random initial states of the free spins. On failure the
// result carries the attempt with the fewest conflicts (earliest on ties).
coloring_result solve_coloring(const weighted_graph& g, const ising_embedding& embedding,
                               const solver_params& params, const coloring_options& options = {});

}  // namespace v2im
