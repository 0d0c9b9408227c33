#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "v2im/graph.hpp"
#include "v2im/rng.hpp"

namespace v2im {

// ascent climbs the relaxed cut; descent runs the same flow backwards.
enum class direction { ascent, descent };

// One relaxed spin: xi = sigma + x + 4 * winding with x in [-1, 1).
struct relaxed_spin {
  int sigma;
  double x;
  long long winding;
};

relaxed_spin decompose(double xi);

inline double recompose(int sigma, double x, long long winding) {
  return static_cast<double>(sigma) + x + 4.0 * static_cast<double>(winding);
}

struct relaxed_spin_state {
  std::vector<int> sigma;
  std::vector<double> x;
  std::vector<bool> fixed;
  // Empty unless the xi trace is wanted.
  std::vector<long long> winding;

  relaxed_spin_state() = default;
  explicit relaxed_spin_state(std::size_t n) : sigma(n, 1), x(n, 0.0), fixed(n, false) {}

  std::size_t size() const noexcept { return sigma.size(); }
  bool tracks_winding() const noexcept { return !winding.empty(); }

  // Continuous coordinates sigma + x + 4k (k taken as 0 when not tracked).
  std::vector<double> xi() const;

  // Throws std::invalid_argument when sizes disagree or a value is out of
  // range.
  void validate() const;

  static relaxed_spin_state from_xi(std::span<const double> xi, bool track_winding = false);
};

// sigma uniform on {-1, +1}, x uniform on [-1, 1). Fixed entries untouched.
void randomize(relaxed_spin_state& state, rng& gen);
relaxed_spin_state random_state(std::size_t n, rng& gen);

struct solver_params {
  double dt = 0.01;
  std::size_t max_steps = 20000;
  std::size_t stall_window = 1000;
  std::size_t perturb_period = 0;
  double perturb_amplitude = 0.0;
  std::uint64_t seed = 1;
  // A spin may wrap only when flipping it does not move the cut against the
  // flow; blocked spins wait at the boundary and cross together once the
  // group flip is admissible. Off: every x leaving [-1, 1) wraps.
  bool gate_wraps = true;
  // Without gating: jitter one of two co-oriented spins of a complex that
  // wrap in the same step.
  bool mitigate_spurious = true;

  void validate() const;

  // Defaults for solving runs: a kick every 500 steps and no stall exit, so a
  // run ends on success or at max_steps.
  static solver_params solving();
};

class step_too_large : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

double discrete_cut(const weighted_graph& g, std::span<const int> sigma);

// C(sigma) + 1/4 sum_ij A_ij sigma_i sigma_j |x_i - x_j|
double relaxed_cut_v2(const weighted_graph& g, const relaxed_spin_state& state);

// dx_i/dt = 1/2 sum_j A_ij sigma_i sigma_j * sgn(x_i - x_j) / 2, sgn(0) = 0.
// Fixed nodes get exactly zero. This is half the gradient of relaxed_cut_v2.
std::vector<double> eom_rhs(const weighted_graph& g, const relaxed_spin_state& state,
                            direction dir = direction::ascent);

struct flip {
  node_id node;
  int old_sigma;
  double old_x;
  long long old_winding;
};

// x += dt * v on free nodes, then wraps any x that left [-1, 1) and flips its
// spin. Throws step_too_large if some |dt * v| >= 2.
std::vector<flip> advance(relaxed_spin_state& state, std::span<const double> velocity, double dt);

// Cut change from flipping every spin in `block` (sum over boundary edges of
// w * sigma_i * sigma_j).
double flip_gain(const weighted_graph& g, std::span<const int> sigma, std::span<const node_id> block);

std::vector<flip> euler_step(const weighted_graph& g, relaxed_spin_state& state,
                             const solver_params& params, direction dir = direction::ascent);

// Same step with a precomputed velocity.
std::vector<flip> euler_step(const weighted_graph& g, relaxed_spin_state& state,
                             std::span<const double> velocity, const solver_params& params,
                             direction dir = direction::ascent);

struct trajectory_record {
  std::size_t step = 0;
  double t = 0.0;
  double cut = 0.0;
  double relaxed_cut = 0.0;
  std::vector<int> sigma;
  std::vector<double> x;
};

struct trajectory {
  std::vector<trajectory_record> records;
  bool wide = false;
};

// Header "step,t,cut,relaxed_cut" plus sigma_i/x_i columns when wide.
void write_trajectory_csv(std::ostream& out, const trajectory& traj);

enum class stop_reason { stalled, max_steps, target_reached };
std::string_view to_string(stop_reason reason);

struct evolve_options {
  direction dir = direction::ascent;
  // Complex id per node (-1 for none). Drives spurious-flip detection.
  std::vector<int> complex_of;
  std::size_t trace_stride = 0;
  bool trace_spins = false;
  // Checked after every step that flips a spin.
  std::function<bool(const relaxed_spin_state&)> stop_when;
};

struct evolve_result {
  relaxed_spin_state state;
  trajectory traj;
  stop_reason reason = stop_reason::max_steps;
  std::size_t steps = 0;
  double cut = 0.0;
  // Best discrete cut seen along the run (lowest for descent).
  std::vector<int> best_sigma;
  double best_cut = 0.0;
  // Steps whose cut moved against the flow, split by whether two spins of one
  // complex wrapped together in that step.
  std::size_t flagged_steps = 0;
  std::size_t flagged_regressions = 0;
  std::size_t unflagged_regressions = 0;
  std::size_t mitigations = 0;
};

evolve_result evolve(const weighted_graph& g, relaxed_spin_state state, const solver_params& params,
                     const evolve_options& options = {});

// sigma_i(r): spin part of decompose(xi_i - r).
std::vector<int> parametric_round(std::span<const double> xi, double r);

struct rounding_entry {
  double r;
  std::vector<int> sigma;
  double cut;
};

// One rounding center inside every arc between consecutive breakpoints xi_i
// mod 2, distinct spin vectors only. Arcs not longer than merge_tol are
// skipped.
std::vector<rounding_entry> optimal_rounding_spectrum(std::span<const double> xi,
                                                      const weighted_graph& g,
                                                      double merge_tol = 0.0);

struct cluster {
  std::vector<node_id> members;
  double x = 0.0;
  // sum of q_b * sigma_b, spins expressed on the side of the boundary the
  // cluster center sits on.
  double charge = 0.0;
};

struct cluster_analysis {
  std::vector<cluster> clusters;
  std::size_t order() const noexcept { return clusters.size(); }
};

// Single-linkage grouping of x on the circle of circumference 2; clusters are
// returned in increasing order of their center.
cluster_analysis detect_clusters(const relaxed_spin_state& state, std::span<const double> charges,
                                 double eps);

// Width below which coordinates count as one cluster when stepping with dt:
// members of a cluster chatter within a few step lengths of each other.
double cluster_tolerance(std::span<const double> velocity, double dt);

// Largest |sum of velocities| over the clusters without a fixed member, with the
// clustering radius scaled to the step length. Zero at an equilibrium.
double cluster_drift(const weighted_graph& g, const relaxed_spin_state& state, double dt,
                     direction dir = direction::ascent);

struct maxcut_options {
  std::size_t restarts = 1;
  unsigned jobs = 1;
  std::size_t trace_stride = 0;
  bool trace_spins = false;
};

struct maxcut_result {
  std::vector<int> sigma;
  double cut = 0.0;
  std::size_t steps = 0;
  // Restart that produced the answer (0-based).
  std::size_t restart = 0;
  trajectory traj;
};

// Ascent runs from random states seeded per restart; the best cut seen in any
// run wins, earliest restart on ties.
maxcut_result solve_maxcut(const weighted_graph& g, const solver_params& params,
                           const maxcut_options& options = {});

}  // namespace v2im
