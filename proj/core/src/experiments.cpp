#include "v2im/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "v2im/coloring.hpp"

namespace v2im {

brute_force_result brute_force_maxcut(const weighted_graph& g, std::size_t keep_optima) {
  const std::size_t n = g.size();
  if (n > 24) throw too_large("brute force refuses " + std::to_string(n) + " nodes (limit 24)");
  brute_force_result out;
  if (n == 0) {
    out.optimum_count = 1;
    out.optima.emplace_back();
    return out;
  }
  std::vector<int> sigma(n, 1);
  double cut = 0.0;
  const double tol = 1e-9 * (1.0 + total_weight(g));
  double best = -std::numeric_limits<double>::infinity();

  auto consider = [&] {
    if (cut > best + tol) {
      best = cut;
      out.sigma = sigma;
      out.optima.clear();
      out.optimum_count = 0;
    }
    if (std::abs(cut - best) <= tol) {
      ++out.optimum_count;
      if (out.optima.size() < keep_optima) out.optima.push_back(sigma);
    }
  };

  // Gray code over nodes 1..n-1; node 0 stays at +1.
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  consider();
  for (std::uint64_t k = 1; k < patterns; ++k) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(k));
    const node_id i = bit + 1;
    for (const auto& nb : g.adjacency(i)) cut += nb.w * sigma[i] * sigma[nb.node];
    sigma[i] = -sigma[i];
    consider();
  }
  out.cut = discrete_cut(g, out.sigma);
  return out;
}

weighted_graph random_weighted_graph(std::size_t n, double p, rng& gen) {
  std::vector<edge> edges;
  for (node_id a = 0; a < n; ++a) {
    for (node_id b = a + 1; b < n; ++b) {
      if (gen.uniform() < p) edges.push_back({a, b, 1.0 - gen.uniform()});
    }
  }
  return weighted_graph(n, std::move(edges));
}

weighted_graph coloring_gadget(std::size_t colors) {
  return build_coloring_ising(weighted_graph(1, {}), colors).graph;
}

namespace {

struct gadget_run {
  relaxed_spin_state state;
  bool definite = false;
};

gadget_run run_gadget(const ising_embedding& emb, const solver_params& params, std::size_t trial) {
  solver_params p = params;
  p.seed = trial_seed(params.seed, trial);
  rng gen(p.seed);
  auto state = emb.pinned_state();
  randomize(state, gen);
  evolve_options eo;
  eo.dir = direction::ascent;
  eo.complex_of = emb.complex_map();
  auto run = evolve(emb.graph, std::move(state), p, eo);
  gadget_run out;
  out.definite = decode_colors(run.state, emb).invalid_count() == 0;
  out.state = std::move(run.state);
  return out;
}

}  // namespace

convergence_point convergence_probability(std::size_t colors, std::size_t trials,
                                          const solver_params& params, unsigned jobs) {
  params.validate();
  const auto emb = build_coloring_ising(weighted_graph(1, {}), colors);
  std::vector<char> hit(trials, 0);
  detail::run_indexed(0, trials, jobs, [&](std::size_t t) { hit[t] = run_gadget(emb, params, t).definite; });
  convergence_point out;
  out.colors = colors;
  out.trials = trials;
  out.definite = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  return out;
}

std::size_t census_result::count(std::size_t order, bool definite) const {
  const auto it = histogram.find({order, definite});
  return it == histogram.end() ? 0 : it->second;
}

std::size_t census_result::max_order() const {
  std::size_t m = 0;
  for (const auto& [key, n] : histogram) {
    if (n > 0) m = std::max(m, key.first);
  }
  return m;
}

census_result equilibrium_census(std::size_t colors, std::size_t trials, const solver_params& params,
                                 unsigned jobs) {
  params.validate();
  const auto emb = build_coloring_ising(weighted_graph(1, {}), colors);
  std::vector<double> charges(emb.graph.size(), 1.0);
  charges[0] = static_cast<double>(colors) - 2.0;

  std::vector<std::pair<std::size_t, bool>> outcome(trials);
  detail::run_indexed(0, trials, jobs, [&](std::size_t t) {
    auto run = run_gadget(emb, params, t);
    const auto v = eom_rhs(emb.graph, run.state);
    const auto clusters = detect_clusters(run.state, charges, cluster_tolerance(v, params.dt));
    outcome[t] = {clusters.order(), run.definite};
  });
  census_result out;
  out.colors = colors;
  out.trials = trials;
  for (const auto& key : outcome) ++out.histogram[key];
  return out;
}

quality_report maxcut_quality_benchmark(std::size_t count, std::size_t n, const solver_params& params,
                                        std::size_t restarts, unsigned jobs) {
  params.validate();
  if (n > 24) throw too_large("benchmark graphs are limited to 24 nodes");
  quality_report out;
  out.nodes = n;
  out.restarts = restarts;
  out.instances.resize(count);
  detail::run_indexed(0, count, jobs, [&](std::size_t i) {
    rng gen(trial_seed(params.seed, i));
    const auto g = random_weighted_graph(n, 0.5, gen);
    auto& rec = out.instances[i];
    rec.index = i;
    rec.edges = g.edge_count();
    if (g.edge_count() == 0) {
      rec.skipped = true;
      return;
    }
    rec.optimum = brute_force_maxcut(g, 0).cut;
    solver_params p = params;
    p.seed = trial_seed(params.seed, i);
    maxcut_options mo;
    mo.restarts = restarts;
    rec.achieved = solve_maxcut(g, p, mo).cut;
    rec.ratio = rec.achieved / rec.optimum;
  });
  double sum = 0.0;
  std::size_t used = 0;
  out.min_ratio = 1.0;
  for (const auto& rec : out.instances) {
    if (rec.skipped) {
      ++out.skipped;
      continue;
    }
    sum += rec.ratio;
    ++used;
    out.min_ratio = std::min(out.min_ratio, rec.ratio);
  }
  out.mean_ratio = used ? sum / static_cast<double>(used) : 0.0;
  if (!used) out.min_ratio = 0.0;
  return out;
}

nlohmann::json to_json(const solver_params& params) {
  return {{"dt", params.dt},
          {"max_steps", params.max_steps},
          {"stall_window", params.stall_window},
          {"perturb_period", params.perturb_period},
          {"perturb_amplitude", params.perturb_amplitude},
          {"gate_wraps", params.gate_wraps},
          {"mitigate_spurious", params.mitigate_spurious}};
}

nlohmann::json to_json(const convergence_point& point) {
  return {{"k", point.colors},
          {"trials", point.trials},
          {"definite", point.definite},
          {"fraction", point.fraction()}};
}

nlohmann::json to_json(const census_result& census) {
  auto bins = nlohmann::json::array();
  for (const auto& [key, n] : census.histogram) {
    bins.push_back({{"order", key.first}, {"definite", key.second}, {"count", n}});
  }
  return {{"k", census.colors}, {"trials", census.trials}, {"max_order", census.max_order()}, {"bins", bins}};
}

nlohmann::json to_json(const quality_report& report) {
  auto rows = nlohmann::json::array();
  for (const auto& r : report.instances) {
    nlohmann::json row = {{"index", r.index}, {"edges", r.edges}};
    if (r.skipped) {
      row["skipped"] = "no edges";
    } else {
      row["optimum"] = r.optimum;
      row["achieved"] = r.achieved;
      row["ratio"] = r.ratio;
    }
    rows.push_back(std::move(row));
  }
  return {{"nodes", report.nodes},
          {"restarts", report.restarts},
          {"mean_ratio", report.mean_ratio},
          {"min_ratio", report.min_ratio},
          {"skipped", report.skipped},
          {"instances", rows}};
}

nlohmann::json experiment_report(const solver_params& params, nlohmann::json summary,
                                 nlohmann::json records) {
  return {{"seed", params.seed},
          {"params", to_json(params)},
          {"summary", std::move(summary)},
          {"records", std::move(records)}};
}

}  // namespace v2im
