#include "v2im/machine.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "parallel.hpp"

namespace v2im {

namespace {

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Brings x back into [-1, 1), flipping the spin once per crossing.
int wrap(int& sigma, double& x, long long* winding) {
  int crossings = 0;
  while (x >= 1.0) {
    x -= 2.0;
    if (winding && sigma == 1) ++*winding;
    sigma = -sigma;
    ++crossings;
  }
  while (x < -1.0) {
    x += 2.0;
    if (winding && sigma == -1) --*winding;
    sigma = -sigma;
    ++crossings;
  }
  return crossings;
}

double mod_positive(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

void check_size(const weighted_graph& g, std::size_t n) {
  if (g.size() != n) {
    throw std::invalid_argument("state has " + std::to_string(n) + " nodes, graph has " +
                                std::to_string(g.size()));
  }
}

bool worse(double next, double prev, direction dir) {
  const double tol = 1e-9 * (1.0 + std::abs(prev));
  return dir == direction::ascent ? next < prev - tol : next > prev + tol;
}

bool better(double next, double prev, direction dir) {
  return dir == direction::ascent ? next > prev : next < prev;
}

}  // namespace

relaxed_spin decompose(double xi) {
  if (!std::isfinite(xi)) throw std::invalid_argument("decompose: non-finite input");
  const double y = mod_positive(xi + 2.0, 4.0) - 2.0;
  relaxed_spin out{};
  if (y >= 0.0) {
    out.sigma = 1;
    out.x = y - 1.0;
  } else {
    out.sigma = -1;
    out.x = y + 1.0;
  }
  out.winding = std::llround((xi - out.sigma - out.x) / 4.0);
  return out;
}

std::vector<double> relaxed_spin_state::xi() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = recompose(sigma[i], x[i], tracks_winding() ? winding[i] : 0);
  }
  return out;
}

void relaxed_spin_state::validate() const {
  const auto n = sigma.size();
  if (x.size() != n || fixed.size() != n || (!winding.empty() && winding.size() != n)) {
    throw std::invalid_argument("relaxed spin state: inconsistent lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] != 1 && sigma[i] != -1) {
      throw std::invalid_argument("relaxed spin state: spin must be +1 or -1");
    }
    if (!(x[i] >= -1.0 && x[i] < 1.0)) {
      throw std::invalid_argument("relaxed spin state: x outside [-1, 1)");
    }
  }
}

relaxed_spin_state relaxed_spin_state::from_xi(std::span<const double> xi, bool track_winding) {
  relaxed_spin_state s(xi.size());
  if (track_winding) s.winding.assign(xi.size(), 0);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const auto d = decompose(xi[i]);
    s.sigma[i] = d.sigma;
    s.x[i] = d.x;
    if (track_winding) s.winding[i] = d.winding;
  }
  return s;
}

void randomize(relaxed_spin_state& state, rng& gen) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.fixed[i]) continue;
    state.sigma[i] = gen.spin();
    state.x[i] = gen.uniform(-1.0, 1.0);
    if (state.tracks_winding()) state.winding[i] = 0;
  }
}

relaxed_spin_state random_state(std::size_t n, rng& gen) {
  relaxed_spin_state s(n);
  randomize(s, gen);
  return s;
}

void solver_params::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (!(perturb_amplitude >= 0.0)) {
    throw std::invalid_argument("perturb_amplitude must be non-negative");
  }
}

solver_params solver_params::solving() {
  solver_params p;
  p.perturb_period = 500;
  p.perturb_amplitude = 0.5;
  p.stall_window = 0;
  return p;
}

double discrete_cut(const weighted_graph& g, std::span<const int> sigma) {
  check_size(g, sigma.size());
  double cut = 0.0;
  for (const auto& e : g.edges()) {
    if (sigma[e.u] != sigma[e.v]) cut += e.w;
  }
  return cut;
}

double relaxed_cut_v2(const weighted_graph& g, const relaxed_spin_state& state) {
  check_size(g, state.size());
  double cut = 0.0;
  double correction = 0.0;
  for (const auto& e : g.edges()) {
    const int s = state.sigma[e.u] * state.sigma[e.v];
    if (s < 0) cut += e.w;
    // Both (u, v) and (v, u) terms of the 1/4 double sum.
    correction += 0.5 * e.w * s * std::abs(state.x[e.u] - state.x[e.v]);
  }
  return cut + correction;
}

std::vector<double> eom_rhs(const weighted_graph& g, const relaxed_spin_state& state,
                            direction dir) {
  check_size(g, state.size());
  std::vector<double> v(state.size(), 0.0);
  for (const auto& e : g.edges()) {
    const double f =
        0.25 * e.w * state.sigma[e.u] * state.sigma[e.v] * sgn(state.x[e.u] - state.x[e.v]);
    v[e.u] += f;
    v[e.v] -= f;
  }
  const double s = dir == direction::ascent ? 1.0 : -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = state.fixed[i] ? 0.0 : s * v[i];
  return v;
}

std::vector<flip> advance(relaxed_spin_state& state, std::span<const double> velocity, double dt) {
  if (velocity.size() != state.size()) {
    throw std::invalid_argument("advance: velocity length mismatch");
  }
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!state.fixed[i] && !(std::abs(dt * velocity[i]) < 2.0)) {
      throw step_too_large("step moves node " + std::to_string(i) + " by " +
                           std::to_string(dt * velocity[i]) + ", must stay below 2");
    }
  }
  std::vector<flip> flips;
  const bool track = state.tracks_winding();
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.fixed[i]) continue;
    const flip before{i, state.sigma[i], state.x[i], track ? state.winding[i] : 0};
    state.x[i] += dt * velocity[i];
    if (wrap(state.sigma[i], state.x[i], track ? &state.winding[i] : nullptr) != 0) {
      flips.push_back(before);
    }
  }
  return flips;
}

double flip_gain(const weighted_graph& g, std::span<const int> sigma,
                 std::span<const node_id> block) {
  check_size(g, sigma.size());
  double gain = 0.0;
  if (block.size() == 1) {
    const node_id i = block.front();
    for (const auto& nb : g.adjacency(i)) gain += nb.w * sigma[i] * sigma[nb.node];
    return gain;
  }
  std::vector<bool> inside(sigma.size(), false);
  for (auto i : block) inside[i] = true;
  for (auto i : block) {
    for (const auto& nb : g.adjacency(i)) {
      if (!inside[nb.node]) gain += nb.w * sigma[i] * sigma[nb.node];
    }
  }
  return gain;
}

std::vector<flip> euler_step(const weighted_graph& g, relaxed_spin_state& state,
                             const solver_params& params, direction dir) {
  const auto v = eom_rhs(g, state, dir);
  return euler_step(g, state, v, params, dir);
}

std::vector<flip> euler_step(const weighted_graph& g, relaxed_spin_state& state,
                             std::span<const double> velocity, const solver_params& params,
                             direction dir) {
  if (!params.gate_wraps) return advance(state, velocity, params.dt);
  check_size(g, state.size());
  if (velocity.size() != state.size()) {
    throw std::invalid_argument("euler_step: velocity length mismatch");
  }

  struct candidate {
    node_id node;
    double target;
    double overshoot;
  };
  std::vector<candidate> pending;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.fixed[i]) continue;
    const double step = params.dt * velocity[i];
    if (!(std::abs(step) < 2.0)) {
      throw step_too_large("step moves node " + std::to_string(i) + " by " +
                           std::to_string(step) + ", must stay below 2");
    }
    const double target = state.x[i] + step;
    if (target >= 1.0) {
      pending.push_back({i, target, target - 1.0});
    } else if (target < -1.0) {
      pending.push_back({i, target, -1.0 - target});
    } else {
      state.x[i] = target;
    }
  }
  std::vector<flip> flips;
  if (pending.empty()) return flips;

  // Earliest crossings first.
  std::stable_sort(pending.begin(), pending.end(), [](const candidate& a, const candidate& b) {
    return a.overshoot > b.overshoot;
  });
  const double orient = dir == direction::ascent ? 1.0 : -1.0;
  const bool track = state.tracks_winding();
  auto admissible = [&](double gain, std::span<const node_id> block) {
    double scale = 0.0;
    for (auto i : block) {
      for (const auto& nb : g.adjacency(i)) scale += std::abs(nb.w);
    }
    return orient * gain >= -1e-12 * (1.0 + scale);
  };
  auto cross = [&](const candidate& c) {
    const flip before{c.node, state.sigma[c.node], state.x[c.node],
                      track ? state.winding[c.node] : 0};
    state.x[c.node] = c.target;
    wrap(state.sigma[c.node], state.x[c.node], track ? &state.winding[c.node] : nullptr);
    flips.push_back(before);
  };

  for (bool progress = true; progress && !pending.empty();) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const node_id one[] = {it->node};
      if (admissible(flip_gain(g, state.sigma, one), one)) {
        cross(*it);
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }

  // Spins held at one side of the boundary try to cross together with the
  // spins chattering next to them (within two step lengths).
  double reach = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!state.fixed[i]) reach = std::max(reach, 2.0 * std::abs(params.dt * velocity[i]));
  }
  for (const bool upper : {true, false}) {
    std::vector<candidate> side;
    for (const auto& c : pending) {
      if ((c.target >= 1.0) == upper) side.push_back(c);
    }
    if (side.empty()) continue;
    std::vector<node_id> block;
    for (const auto& c : side) block.push_back(c.node);
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (state.fixed[i]) continue;
      const bool near = upper ? state.x[i] >= 1.0 - reach : state.x[i] < -1.0 + reach;
      const bool queued = std::any_of(side.begin(), side.end(),
                                      [i](const candidate& c) { return c.node == i; });
      // Spins that already wrapped this step sit near the far side; skip them.
      const bool moved = std::any_of(flips.begin(), flips.end(),
                                     [i](const flip& f) { return f.node == i; });
      if (near && !queued && !moved) {
        side.push_back({i, upper ? 1.0 : std::nextafter(-1.0, -2.0), 0.0});
        block.push_back(i);
      }
    }
    if (block.size() > 1 && admissible(flip_gain(g, state.sigma, block), block)) {
      for (const auto& c : side) cross(c);
    } else {
      for (const auto& c : side) {
        if (c.overshoot > 0.0) state.x[c.node] = upper ? std::nextafter(1.0, 0.0) : -1.0;
      }
    }
  }
  return flips;
}

void write_trajectory_csv(std::ostream& out, const trajectory& traj) {
  const std::size_t n =
      traj.wide && !traj.records.empty() ? traj.records.front().sigma.size() : 0;
  out << "step,t,cut,relaxed_cut";
  if (traj.wide) {
    for (std::size_t i = 0; i < n; ++i) out << ",sigma_" << i;
    for (std::size_t i = 0; i < n; ++i) out << ",x_" << i;
  }
  out << '\n';

  std::ostringstream line;
  line << std::setprecision(9);
  for (const auto& r : traj.records) {
    line.str({});
    line << r.step << ',' << r.t << ',' << r.cut << ',' << r.relaxed_cut;
    if (traj.wide) {
      for (int s : r.sigma) line << ',' << s;
      for (double x : r.x) line << ',' << x;
    }
    out << line.str() << '\n';
  }
}

double cluster_tolerance(std::span<const double> velocity, double dt) {
  double fastest = 0.0;
  for (double v : velocity) fastest = std::max(fastest, std::abs(v));
  return std::max(1e-9, 4.0 * dt * fastest);
}

double cluster_drift(const weighted_graph& g, const relaxed_spin_state& state, double dt,
                     direction dir) {
  const auto v = eom_rhs(g, state, dir);
  const double eps = cluster_tolerance(v, dt);
  const std::vector<double> unit(state.size(), 1.0);
  double drift = 0.0;
  for (const auto& c : detect_clusters(state, unit, eps).clusters) {
    // A fixed member anchors its cluster.
    if (std::any_of(c.members.begin(), c.members.end(), [&](node_id i) { return state.fixed[i]; }))
      continue;
    double total = 0.0;
    for (auto i : c.members) total += v[i];
    drift = std::max(drift, std::abs(total));
  }
  return drift;
}

std::string_view to_string(stop_reason reason) {
  switch (reason) {
    case stop_reason::stalled:
      return "stalled";
    case stop_reason::max_steps:
      return "max_steps";
    case stop_reason::target_reached:
      return "target_reached";
  }
  return "unknown";
}

evolve_result evolve(const weighted_graph& g, relaxed_spin_state state, const solver_params& params,
                     const evolve_options& options) {
  params.validate();
  state.validate();
  check_size(g, state.size());
  const bool use_complexes = !options.complex_of.empty();
  if (use_complexes && options.complex_of.size() != state.size()) {
    throw std::invalid_argument("evolve: complex map length mismatch");
  }

  rng gen(params.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto dir = options.dir;

  evolve_result result;
  result.traj.wide = options.trace_spins;
  double cut = discrete_cut(g, state.sigma);
  result.best_sigma = state.sigma;
  result.best_cut = cut;

  auto record = [&](std::size_t step) {
    if (options.trace_stride == 0) return;
    if (!result.traj.records.empty() && result.traj.records.back().step == step) return;
    trajectory_record r;
    r.step = step;
    r.t = static_cast<double>(step) * params.dt;
    r.cut = cut;
    r.relaxed_cut = relaxed_cut_v2(g, state);
    if (options.trace_spins) {
      r.sigma = state.sigma;
      r.x = state.x;
    }
    result.traj.records.push_back(std::move(r));
  };
  record(0);

  double total_abs_weight = 0.0;
  for (const auto& e : g.edges()) total_abs_weight += std::abs(e.w);
  std::size_t quiet = 0;
  std::size_t step = 0;
  result.reason = stop_reason::max_steps;
  std::map<int, std::vector<std::size_t>> by_complex;

  while (step < params.max_steps) {
    ++step;
    const auto velocity = eom_rhs(g, state, dir);
    auto flips = euler_step(g, state, velocity, params, dir);

    bool flagged = false;
    if (use_complexes && flips.size() >= 2) {
      by_complex.clear();
      for (std::size_t f = 0; f < flips.size(); ++f) {
        const int c = options.complex_of[flips[f].node];
        if (c >= 0) by_complex[c].push_back(f);
      }
      std::vector<std::size_t> rescinded;
      for (const auto& [c, members] : by_complex) {
        if (members.size() < 2) continue;
        flagged = true;
        if (!params.mitigate_spurious || params.gate_wraps) continue;
        // Lowest-id spin of a co-oriented pair gets a random offset against
        // its motion and is stepped again on its own.
        std::optional<std::size_t> pick;
        for (std::size_t a = 0; a < members.size() && !pick; ++a) {
          for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (flips[members[a]].old_sigma == flips[members[b]].old_sigma) {
              pick = flips[members[a]].node < flips[members[b]].node ? members[a] : members[b];
              break;
            }
          }
        }
        if (!pick) continue;
        const auto& f = flips[*pick];
        const node_id i = f.node;
        long long* k = state.tracks_winding() ? &state.winding[i] : nullptr;
        if (k) *k = f.old_winding;
        double jitter = 0.0;
        while (jitter == 0.0) jitter = gen.uniform() * params.dt;
        state.sigma[i] = f.old_sigma;
        state.x[i] = f.old_x + params.dt * velocity[i] - sgn(velocity[i]) * jitter;
        const int crossed = wrap(state.sigma[i], state.x[i], k);
        if (crossed == 0) rescinded.push_back(*pick);
        ++result.mitigations;
      }
      if (!rescinded.empty()) {
        std::sort(rescinded.rbegin(), rescinded.rend());
        for (auto f : rescinded) flips.erase(flips.begin() + static_cast<std::ptrdiff_t>(f));
      }
    }
    if (flagged) ++result.flagged_steps;

    bool changed = !flips.empty();
    if (changed) {
      const double next = discrete_cut(g, state.sigma);
      if (worse(next, cut, dir)) {
        if (flagged) {
          ++result.flagged_regressions;
        } else {
          ++result.unflagged_regressions;
        }
      }
      cut = next;
    }

    if (params.perturb_period > 0 && step % params.perturb_period == 0 &&
        params.perturb_amplitude > 0.0) {
      const bool track = state.tracks_winding();
      for (std::size_t i = 0; i < state.size(); ++i) {
        if (state.fixed[i]) continue;
        state.x[i] += gen.uniform(-params.perturb_amplitude, params.perturb_amplitude);
        if (wrap(state.sigma[i], state.x[i], track ? &state.winding[i] : nullptr) != 0) {
          changed = true;
        }
      }
      if (changed) cut = discrete_cut(g, state.sigma);
    }

    if (changed) {
      quiet = 0;
      if (better(cut, result.best_cut, dir)) {
        result.best_cut = cut;
        result.best_sigma = state.sigma;
      }
    } else {
      ++quiet;
    }

    if (options.trace_stride > 0 && step % options.trace_stride == 0) record(step);

    if (changed && options.stop_when && options.stop_when(state)) {
      result.reason = stop_reason::target_reached;
      break;
    }
    if (params.stall_window > 0 && quiet >= params.stall_window) {
      // A quiet window only ends the run once no cluster is still drifting.
      if (cluster_drift(g, state, params.dt, options.dir) <= 1e-9 * (1.0 + total_abs_weight)) {
        result.reason = stop_reason::stalled;
        break;
      }
      quiet = 0;
    }
  }

  record(step);
  result.steps = step;
  result.cut = cut;
  result.state = std::move(state);
  return result;
}

std::vector<int> parametric_round(std::span<const double> xi, double r) {
  std::vector<int> sigma(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) sigma[i] = decompose(xi[i] - r).sigma;
  return sigma;
}

std::vector<rounding_entry> optimal_rounding_spectrum(std::span<const double> xi,
                                                      const weighted_graph& g, double merge_tol) {
  check_size(g, xi.size());
  std::vector<rounding_entry> out;
  if (xi.empty()) {
    out.push_back({0.0, {}, 0.0});
    return out;
  }

  // Spins change where r crosses xi_i or xi_i - 2, so breakpoints live on the
  // circle of circumference 2; r and r + 2 give globally flipped partitions.
  std::vector<double> bp(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) bp[i] = mod_positive(xi[i], 2.0);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  struct arc {
    double lo, len;
  };
  std::vector<arc> arcs;
  for (std::size_t j = 0; j < bp.size(); ++j) {
    const double hi = j + 1 < bp.size() ? bp[j + 1] : bp.front() + 2.0;
    arcs.push_back({bp[j], hi - bp[j]});
  }
  std::vector<arc> kept;
  std::copy_if(arcs.begin(), arcs.end(), std::back_inserter(kept),
               [&](const arc& a) { return a.len > merge_tol; });
  if (kept.empty()) {
    kept.push_back(*std::max_element(arcs.begin(), arcs.end(),
                                     [](const arc& a, const arc& b) { return a.len < b.len; }));
  }

  std::set<std::vector<int>> seen;
  for (const auto& a : kept) {
    const double r = mod_positive(a.lo + 0.5 * a.len, 2.0);
    auto sigma = parametric_round(xi, r);
    if (!seen.insert(sigma).second) continue;
    const double c = discrete_cut(g, sigma);
    out.push_back({r, std::move(sigma), c});
  }
  std::sort(out.begin(), out.end(),
            [](const rounding_entry& a, const rounding_entry& b) { return a.r < b.r; });
  return out;
}

cluster_analysis detect_clusters(const relaxed_spin_state& state, std::span<const double> charges,
                                 double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("detect_clusters: eps must be positive");
  if (charges.size() != state.size()) {
    throw std::invalid_argument("detect_clusters: charge vector length mismatch");
  }
  cluster_analysis out;
  const std::size_t n = state.size();
  if (n == 0) return out;

  std::vector<node_id> order(n);
  std::iota(order.begin(), order.end(), node_id{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](node_id a, node_id b) { return state.x[a] < state.x[b]; });

  // gap[j] separates order[j] from its successor on the circle.
  std::vector<double> gap(n);
  for (std::size_t j = 0; j + 1 < n; ++j) gap[j] = state.x[order[j + 1]] - state.x[order[j]];
  gap[n - 1] = state.x[order[0]] + 2.0 - state.x[order[n - 1]];

  std::size_t start = 0;
  bool any_split = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (gap[(n - 1 + j) % n] > eps) {
      start = j;
      any_split = true;
      break;
    }
  }

  auto finish = [&](std::vector<std::pair<node_id, double>> members) {
    cluster c;
    double sum = 0.0;
    for (const auto& [node, pos] : members) sum += pos;
    double center = sum / static_cast<double>(members.size());
    const bool high = center >= 1.0;
    c.x = high ? center - 2.0 : center;
    for (const auto& [node, pos] : members) {
      c.members.push_back(node);
      // Spins on the far side of the boundary count with the opposite sign.
      const bool far = high ? pos < 1.0 : pos >= 1.0;
      c.charge += charges[node] * (far ? -state.sigma[node] : state.sigma[node]);
    }
    std::sort(c.members.begin(), c.members.end());
    out.clusters.push_back(std::move(c));
  };

  std::vector<std::pair<node_id, double>> current;
  double offset = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t idx = (start + j) % n;
    if (j > 0 && idx == 0) offset = 2.0;
    current.emplace_back(order[idx], state.x[order[idx]] + offset);
    const bool last = j + 1 == n;
    if (last || (any_split && gap[idx] > eps)) {
      finish(std::move(current));
      current.clear();
    }
  }
  if (!any_split && out.clusters.size() == 1) {
    // A single cluster covering the whole circle has no boundary to respect.
    out.clusters.front().x = state.x[order[0]];
  }

  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const cluster& a, const cluster& b) { return a.x < b.x; });
  return out;
}

maxcut_result solve_maxcut(const weighted_graph& g, const solver_params& params,
                           const maxcut_options& options) {
  params.validate();
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  std::vector<maxcut_result> runs(restarts);
  detail::run_indexed(0, restarts, options.jobs, [&](std::size_t r) {
    solver_params p = params;
    p.seed = trial_seed(params.seed, r);
    rng gen(p.seed);
    auto state = random_state(g.size(), gen);
    if (options.trace_spins) state.winding.assign(state.size(), 0);
    evolve_options eo;
    eo.trace_stride = options.trace_stride;
    eo.trace_spins = options.trace_spins;
    auto run = evolve(g, std::move(state), p, eo);
    runs[r] = {std::move(run.best_sigma), run.best_cut, run.steps, r, std::move(run.traj)};
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (runs[r].cut > runs[best].cut) best = r;
  }
  return std::move(runs[best]);
}

}  // namespace v2im
