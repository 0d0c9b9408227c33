#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "v2im/experiments.hpp"
#include "v2im/machine.hpp"

namespace v2im::checks {

struct identity_report {
  double max_error = 0.0;
  std::size_t samples = 0;
  std::size_t failures = 0;
};

inline weighted_graph random_graph(std::size_t max_nodes, rng& gen) {
  return random_weighted_graph(2 + gen.below(max_nodes - 1), 0.5, gen);
}

inline std::vector<double> random_xi(std::size_t n, rng& gen, double span = 10.0) {
  std::vector<double> xi(n);
  for (auto& v : xi) v = gen.uniform(-span, span);
  return xi;
}

// xi -> (sigma, x, k) -> sigma + x + 4k, with x checked against [-1, 1).
inline identity_report decompose_round_trip(std::size_t samples, std::uint64_t seed) {
  rng gen(seed);
  identity_report r;
  for (std::size_t s = 0; s < samples; ++s) {
    const double xi = gen.uniform(-10.0, 10.0);
    const auto d = decompose(xi);
    const double err = std::abs(recompose(d.sigma, d.x, d.winding) - xi);
    r.max_error = std::max(r.max_error, err);
    if (err > 1e-12 || !(d.x >= -1.0 && d.x < 1.0)) ++r.failures;
    ++r.samples;
  }
  return r;
}

inline identity_report translation_invariance(std::size_t trials, std::uint64_t seed) {
  rng gen(seed);
  identity_report r;
  for (std::size_t t = 0; t < trials; ++t) {
    auto g = random_graph(20, gen);
    auto xi = random_xi(g.size(), gen);
    const double base = relaxed_cut_v2(g, relaxed_spin_state::from_xi(xi));
    const double shift = gen.uniform(-10.0, 10.0);
    for (auto& v : xi) v += shift;
    const double err = std::abs(relaxed_cut_v2(g, relaxed_spin_state::from_xi(xi)) - base);
    r.max_error = std::max(r.max_error, err);
    if (err > 1e-9) ++r.failures;
    ++r.samples;
  }
  return r;
}

inline identity_report gliding_symmetry(std::size_t trials, std::uint64_t seed) {
  rng gen(seed);
  const weighted_graph edge(2, {{0, 1, 1.0}});
  identity_report r;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> xi = random_xi(2, gen);
    const double base = relaxed_cut_v2(edge, relaxed_spin_state::from_xi(xi));
    xi[0] += 2.0;
    const double err = std::abs(relaxed_cut_v2(edge, relaxed_spin_state::from_xi(xi)) - (1.0 - base));
    r.max_error = std::max(r.max_error, err);
    if (err > 1e-12) ++r.failures;
    ++r.samples;
  }
  return r;
}

// Central differences of relaxed_cut_v2 in x_i, compared with 2 * eom_rhs.
// Coordinates within reach of a kink (a neighbor's x or the wrap point) are
// skipped.
inline identity_report eom_finite_difference(std::size_t trials, std::uint64_t seed) {
  rng gen(seed);
  constexpr double h = 1e-7;
  identity_report r;
  for (std::size_t t = 0; t < trials; ++t) {
    auto g = random_graph(12, gen);
    auto state = random_state(g.size(), gen);
    const auto v = eom_rhs(g, state);
    for (node_id i = 0; i < g.size(); ++i) {
      bool near_kink = state.x[i] - h < -1.0 || state.x[i] + h >= 1.0;
      for (const auto& nb : g.adjacency(i)) near_kink = near_kink || std::abs(state.x[i] - state.x[nb.node]) <= 1e-6;
      if (near_kink) continue;
      auto up = state;
      auto down = state;
      up.x[i] += h;
      down.x[i] -= h;
      const double fd = (relaxed_cut_v2(g, up) - relaxed_cut_v2(g, down)) / (2.0 * h);
      const double err = std::abs(2.0 * v[i] - fd);
      r.max_error = std::max(r.max_error, err);
      if (err > 1e-6) ++r.failures;
      ++r.samples;
    }
  }
  return r;
}

struct dominance_run {
  std::size_t nodes = 0;
  double initial_best = 0.0;
  double terminal_cut = 0.0;
  double spectrum_min = 0.0;
  double spectrum_max = 0.0;
  double relaxed_gap = 0.0;
  double dt = 0.0;
  std::size_t unflagged_regressions = 0;
  std::size_t flagged_steps = 0;
  stop_reason reason = stop_reason::max_steps;
};

// Random graph t of the terminal-state study: seed base + t, n in [2, 16],
// edge probability 1/2, weights in (0, 1], perturbations off.
inline dominance_run terminal_state_run(std::uint64_t base, std::uint64_t t, std::size_t max_steps) {
  rng gen(base + t);
  const std::size_t n = 2 + gen.below(15);
  auto g = random_weighted_graph(n, 0.5, gen);
  auto state = random_state(n, gen);

  dominance_run out;
  out.nodes = n;
  out.initial_best = 0.0;
  for (const auto& e : optimal_rounding_spectrum(state.xi(), g)) out.initial_best = std::max(out.initial_best, e.cut);

  solver_params p;
  p.seed = t;
  p.max_steps = max_steps;
  auto r = evolve(g, std::move(state), p);
  out.terminal_cut = r.cut;
  out.reason = r.reason;
  out.unflagged_regressions = r.unflagged_regressions;
  out.flagged_steps = r.flagged_steps;
  out.dt = p.dt;
  out.relaxed_gap = std::abs(relaxed_cut_v2(g, r.state) - r.cut);

  const auto spectrum =
      optimal_rounding_spectrum(r.state.xi(), g, cluster_tolerance(eom_rhs(g, r.state), p.dt));
  out.spectrum_min = spectrum.empty() ? 0.0 : spectrum.front().cut;
  out.spectrum_max = out.spectrum_min;
  for (const auto& e : spectrum) {
    out.spectrum_min = std::min(out.spectrum_min, e.cut);
    out.spectrum_max = std::max(out.spectrum_max, e.cut);
  }
  return out;
}

}  // namespace v2im::checks
