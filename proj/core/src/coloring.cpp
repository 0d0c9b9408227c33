#include "v2im/coloring.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace v2im {

std::vector<int> ising_embedding::complex_map() const {
  std::vector<int> map(graph.size(), -1);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t c = 0; c < colors; ++c) map[index(i, c)] = static_cast<int>(i);
  }
  return map;
}

relaxed_spin_state ising_embedding::pinned_state() const {
  relaxed_spin_state s(graph.size());
  for (const auto& p : pinned) {
    s.sigma[p.index] = p.sigma;
    s.x[p.index] = p.x;
    s.fixed[p.index] = true;
  }
  return s;
}

ising_embedding build_coloring_ising(const weighted_graph& g, std::size_t colors, double lambda,
                                     apex_coupling coupling) {
  if (colors < 2) throw std::invalid_argument("coloring needs at least 2 colors");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  for (const auto& e : g.edges()) {
    if (!(e.w > 0.0)) throw std::invalid_argument("coloring needs positive edge weights");
  }

  const std::size_t n = g.size();
  const auto k = static_cast<double>(colors);
  const auto collisions = kronecker_identity_left(g, colors);
  const auto one_hot = kronecker_identity_right(n, complete_graph(colors, 1.0));
  const auto body = overlay(collisions, one_hot, lambda);

  std::vector<edge> edges;
  edges.reserve(body.edge_count() + body.size());
  for (node_id i = 0; i < n; ++i) {
    const double base = coupling == apex_coupling::degree ? g.weighted_degree(i) : k;
    const double w = base + lambda * (k - 2.0);
    for (std::size_t c = 0; c < colors; ++c) edges.push_back({0, 1 + i * colors + c, w});
  }
  for (const auto& e : body.edges()) edges.push_back({e.u + 1, e.v + 1, e.w});

  ising_embedding out;
  out.graph = weighted_graph(body.size() + 1, std::move(edges));
  out.nodes = n;
  out.colors = colors;
  out.lambda = lambda;
  out.coupling = coupling;
  out.pinned.push_back({0, 1, 0.0});
  return out;
}

void add_pins(ising_embedding& embedding, std::span<const pin> pins) {
  for (const auto& p : pins) {
    if (p.index >= embedding.graph.size()) throw std::out_of_range("pin index out of range");
    auto it = std::find_if(embedding.pinned.begin(), embedding.pinned.end(),
                           [&](const pin& q) { return q.index == p.index; });
    if (it != embedding.pinned.end()) {
      *it = p;
    } else {
      embedding.pinned.push_back(p);
    }
  }
}

double penalty_energy(const weighted_graph& g, std::span<const int> sigma) {
  if (sigma.size() != g.size()) throw std::invalid_argument("penalty_energy: length mismatch");
  double h = 0.0;
  for (const auto& e : g.edges()) h += 2.0 * e.w * sigma[e.u] * sigma[e.v];
  return h;
}

std::size_t color_assignment::invalid_count() const {
  return static_cast<std::size_t>(std::count(colors.begin(), colors.end(), invalid));
}

color_assignment decode_colors(std::span<const int> sigma, const ising_embedding& embedding) {
  if (sigma.size() != embedding.graph.size()) {
    throw std::invalid_argument("decode_colors: state does not match embedding");
  }
  color_assignment out;
  out.colors.assign(embedding.nodes, color_assignment::invalid);
  for (std::size_t i = 0; i < embedding.nodes; ++i) {
    int hot = 0;
    int color = color_assignment::invalid;
    for (std::size_t c = 0; c < embedding.colors; ++c) {
      if (sigma[embedding.index(i, c)] == 1) {
        ++hot;
        color = static_cast<int>(c) + 1;
      }
    }
    if (hot == 1) out.colors[i] = color;
  }
  return out;
}

color_assignment decode_colors(const relaxed_spin_state& state, const ising_embedding& embedding) {
  return decode_colors(std::span<const int>(state.sigma), embedding);
}

bool is_proper(const weighted_graph& g, const color_assignment& assignment) {
  return assignment.size() == g.size() && conflict_count(g, assignment) == 0;
}

std::size_t conflict_count(const weighted_graph& g, const color_assignment& assignment) {
  if (assignment.size() != g.size()) {
    throw std::invalid_argument("conflict_count: assignment length mismatch");
  }
  std::size_t conflicts = assignment.invalid_count();
  for (const auto& e : g.edges()) {
    const int a = assignment.colors[e.u];
    if (a != color_assignment::invalid && a == assignment.colors[e.v]) ++conflicts;
  }
  return conflicts;
}

namespace {

coloring_result run_attempt(const weighted_graph& g, const ising_embedding& embedding,
                            const solver_params& params, const coloring_options& options,
                            std::size_t restart) {
  solver_params p = params;
  p.seed = trial_seed(params.seed, restart);
  rng gen(p.seed);
  auto state = embedding.pinned_state();
  if (options.trace_spins) state.winding.assign(state.size(), 0);
  randomize(state, gen);

  evolve_options eo;
  eo.dir = direction::ascent;
  eo.complex_of = embedding.complex_map();
  eo.trace_stride = options.trace_stride;
  eo.trace_spins = options.trace_spins;
  eo.stop_when = [&](const relaxed_spin_state& s) {
    return is_proper(g, decode_colors(s, embedding));
  };
  auto run = evolve(embedding.graph, std::move(state), p, eo);

  coloring_result r;
  r.assignment = decode_colors(run.state, embedding);
  r.conflicts = conflict_count(g, r.assignment);
  r.proper = r.conflicts == 0;
  r.restarts_used = restart + 1;
  r.steps = run.steps;
  r.cut = run.cut;
  r.traj = std::move(run.traj);
  return r;
}

}  // namespace

coloring_result solve_coloring(const weighted_graph& g, const ising_embedding& embedding,
                               const solver_params& params, const coloring_options& options) {
  params.validate();
  if (embedding.nodes != g.size()) {
    throw std::invalid_argument("solve_coloring: embedding built for a different graph");
  }
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  const unsigned jobs = std::max(1u, options.jobs);

  std::optional<coloring_result> best;
  for (std::size_t base = 0; base < restarts; base += jobs) {
    const std::size_t batch = std::min<std::size_t>(jobs, restarts - base);
    std::vector<coloring_result> results(batch);
    detail::run_indexed(base, base + batch, jobs, [&](std::size_t i) {
      results[i - base] = run_attempt(g, embedding, params, options, i);
    });
    for (auto& r : results) {
      if (r.proper) return std::move(r);
      if (!best || r.conflicts < best->conflicts) best = std::move(r);
    }
  }
  best->restarts_used = restarts;
  return std::move(*best);
}

}  // namespace v2im
