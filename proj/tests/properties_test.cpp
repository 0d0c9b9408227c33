#include <gtest/gtest.h>

#include "checks.hpp"
#include "v2im/coloring.hpp"

using namespace v2im;

TEST(Properties, DecomposeRoundTrip) {
  auto r = checks::decompose_round_trip(1000000, 1);
  EXPECT_EQ(r.failures, 0u) << "max error " << r.max_error;
}

TEST(Properties, TranslationInvariance) {
  auto r = checks::translation_invariance(2000, 2);
  EXPECT_EQ(r.failures, 0u) << "max error " << r.max_error;
}

TEST(Properties, GlidingSymmetry) {
  auto r = checks::gliding_symmetry(100000, 3);
  EXPECT_EQ(r.failures, 0u) << "max error " << r.max_error;
}

TEST(Properties, EomIsHalfTheGradient) {
  auto r = checks::eom_finite_difference(500, 4);
  EXPECT_GT(r.samples, 1000u);
  EXPECT_EQ(r.failures, 0u) << "max error " << r.max_error;
}

TEST(Properties, TerminalStatesOnRandomGraphs) {
  for (std::uint64_t t = 0; t < 60; ++t) {
    const auto run = checks::terminal_state_run(5000, t, 2000000);
    EXPECT_GE(run.terminal_cut, run.initial_best - 1e-9) << "graph " << t;
    EXPECT_EQ(run.unflagged_regressions, 0u) << "graph " << t;
    EXPECT_LE(run.relaxed_gap, static_cast<double>(run.nodes) * run.dt) << "graph " << t;
    EXPECT_NEAR(run.spectrum_min, run.spectrum_max, 1e-9) << "graph " << t;
  }
}

TEST(Properties, DefiniteGadgetStatesHaveNeutralClusters) {
  for (std::size_t k : {3, 4, 6}) {
    auto emb = build_coloring_ising(weighted_graph(1, {}), k);
    std::vector<double> charges(k + 1, 1.0);
    charges[0] = static_cast<double>(k) - 2.0;
    solver_params p;
    for (std::uint64_t t = 0; t < 50; ++t) {
      rng gen(trial_seed(p.seed, t));
      auto state = emb.pinned_state();
      randomize(state, gen);
      evolve_options o;
      o.complex_of = emb.complex_map();
      auto r = evolve(emb.graph, std::move(state), p, o);
      if (decode_colors(r.state, emb).invalid_count() != 0) continue;
      auto clusters = detect_clusters(r.state, charges, cluster_tolerance(eom_rhs(emb.graph, r.state), p.dt));
      for (const auto& c : clusters.clusters) EXPECT_NEAR(c.charge, 0.0, 1e-9) << "K=" << k << " trial " << t;
    }
  }
}
