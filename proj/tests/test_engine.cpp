#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace gcaofp;
using namespace gcaofp::testing;

namespace {

Params defaults(std::size_t n, std::uint64_t seed) {
  Params p = Params::uniform(n, 1.4);
  p.seed = seed;
  return p;
}

}  // namespace

TEST(Engine, MutualPairConverges) {
  const Network g = net_from("0 1", false);
  Params p = Params::uniform(2, 1.5);
  const RunResult r = run_gcaofp(g, OpinionVector({0.2, 0.5}), Partition({0, 0}), p);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.final_opinions[0], 0.35, 1e-5);
  EXPECT_NEAR(r.final_opinions[1], 0.35, 1e-5);
  EXPECT_EQ(r.final_partition.num_communities(), 1u);
  EXPECT_TRUE(r.partition_stable);
}

TEST(Engine, ConstantStartStopsAfterOneStep) {
  const Network g = karate();
  const OpinionVector x(std::vector<double>(g.size(), 0.42));
  Rng rng(1);
  const RunResult r = run_gcaofp(g, x, random_partition(g.size(), 5, rng), defaults(g.size(), 0));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1u);
  for (double v : r.final_opinions.values) EXPECT_DOUBLE_EQ(v, 0.42);
}

TEST(Engine, RejectsBadInputs) {
  const Network g = net_from("0 1\n1 2\n", true);
  Params p = Params::uniform(3, 1.4);
  EXPECT_THROW(run_gcaofp(g, OpinionVector({0.1, 0.2, 0.3}), Partition::single(3), p), std::invalid_argument);
  const Network h = net_from("0 1", false);
  EXPECT_THROW(run_gcaofp(h, OpinionVector({0.1}), Partition::single(2), Params::uniform(2, 1.4)),
               std::invalid_argument);
  Params bad = Params::uniform(2, 0.5);
  EXPECT_THROW(run_gcaofp(h, OpinionVector({0.1, 0.2}), Partition::single(2), bad), ParamError);
}

TEST(Engine, KaratePropertyRun) {
  const Network g = karate();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Params p = defaults(g.size(), seed);
    const RunResult r = run_gcaofp_seeded(g, p);
    ASSERT_TRUE(r.converged) << "seed " << seed;
    EXPECT_TRUE(r.partition_stable) << "seed " << seed;
    for (const auto& phase : r.potential_trace) {
      for (std::size_t k = 1; k < phase.size(); ++k) EXPECT_GE(phase[k], phase[k - 1] - 1e-9);
    }
    for (std::size_t t = 1; t < r.opinion_trace.size(); ++t) {
      const double bound = confidence_bound(p, t - 1);
      for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_LT(std::abs(r.opinion_trace[t][i] - r.opinion_trace[t - 1][i]), bound + 1e-12);
      }
    }
    EXPECT_EQ(r.opinion_trace.size(), r.iterations + 1);
    EXPECT_EQ(r.label_trace.size(), r.iterations + 1);
    EXPECT_EQ(r.welfare_trace.size(), r.iterations + 1);
    EXPECT_EQ(r.potential_trace.size(), r.iterations);
  }
}

TEST(Engine, PostConvergenceStability) {
  const Network g = karate();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Params p = defaults(g.size(), seed);
    const RunResult r = run_gcaofp_seeded(g, p);
    Partition part = r.final_partition;
    Rng rng(seed, Stream::sweeps);
    run_cdp(r.final_opinions, part, g, p, rng);
    EXPECT_EQ(part.labels(), r.final_partition.labels());
    const OpinionVector next = opinion_step(r.final_opinions, part, g, p, r.iterations);
    EXPECT_LT(max_abs_change(next, r.final_opinions), p.epsilon);
  }
}

TEST(Engine, Deterministic) {
  const Network g = karate();
  const Params p = defaults(g.size(), 42);
  const RunResult a = run_gcaofp_seeded(g, p);
  const RunResult b = run_gcaofp_seeded(g, p);
  EXPECT_EQ(a.opinion_trace, b.opinion_trace);
  EXPECT_EQ(a.label_trace, b.label_trace);
  EXPECT_EQ(a.potential_trace, b.potential_trace);
  EXPECT_EQ(a.welfare_trace, b.welfare_trace);
}

TEST(Engine, IterationCapReportsNotConverged) {
  const Network g = karate();
  Params p = defaults(g.size(), 3);
  p.max_outer_iters = 2;
  const RunResult r = run_gcaofp_seeded(g, p);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2u);
}

TEST(Engine, ArcTouchesBounded) {
  const Network g = karate();
  const RunResult r = run_gcaofp_seeded(g, defaults(g.size(), 8));
  const std::uint64_t m = g.arc_count(), n = g.size();
  for (std::size_t t = 0; t < r.iterations; ++t) {
    EXPECT_LE(r.arc_touches_per_iter[t], 2 * (r.sweeps_per_iter[t] * (2 * m + n) + m));
  }
}

TEST(Engine, FrozenPartition) {
  const Network g = karate();
  Params p = defaults(g.size(), 1);
  p.freeze_partition = true;
  Rng rng(4);
  const Partition part0 = random_partition(g.size(), 3, rng);
  const RunResult r = run_gcaofp(g, init_opinions(g.size(), 1), part0, p);
  for (const auto& labels : r.label_trace) EXPECT_EQ(labels, part0.labels());
}

TEST(Baseline, DeGrootOneStep) {
  const Network g = net_from("0 1", false);
  const OpinionVector x = degroot_step(OpinionVector({0.0, 1.0}), g);
  EXPECT_DOUBLE_EQ(x[0], 0.5);
  EXPECT_DOUBLE_EQ(x[1], 0.5);
}

TEST(Baseline, FjEquilibrium) {
  const Network g = net_from("0 1", false);
  BaselineParams bp;
  bp.epsilon = 1e-13;
  const RunResult r = run_baseline(BaselineModel::fj, g, OpinionVector({0.0, 1.0}), bp);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.final_opinions[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.final_opinions[1], 2.0 / 3.0, 1e-12);
}

TEST(Baseline, HkFullTrustReachesConsensus) {
  const Network g = karate();
  BaselineParams bp;
  bp.rho = 1.0;
  const RunResult r = run_baseline(BaselineModel::hk, g, init_opinions(g.size(), 5), bp);
  EXPECT_TRUE(r.converged);
  const auto [lo, hi] = std::minmax_element(r.final_opinions.values.begin(), r.final_opinions.values.end());
  EXPECT_LT(*hi - *lo, 1e-4);
  EXPECT_EQ(r.final_partition.num_communities(), 1u);
}

TEST(Baseline, ParseAndValidate) {
  EXPECT_EQ(parse_baseline_model("degroot"), BaselineModel::degroot);
  EXPECT_THROW(parse_baseline_model("lpa"), std::invalid_argument);
  BaselineParams bp;
  bp.susceptibility = 1.5;
  const Network g = net_from("0 1", false);
  EXPECT_THROW(run_baseline(BaselineModel::fj, g, OpinionVector({0.0, 1.0}), bp), std::invalid_argument);
}

TEST(Baseline, HkDegeneracyTrajectory) {
  const Network g = karate();
  Params p = Params::uniform(g.size(), 1.0);
  p.mode = WeightingMode::binary;
  p.beta = 0.8;
  p.freeze_partition = true;
  p.max_outer_iters = 50;
  p.epsilon = 1e-300;
  const OpinionVector x0 = init_opinions(g.size(), 9);
  const RunResult a = run_gcaofp(g, x0, Partition::single(g.size()), p);
  BaselineParams bp;
  bp.rho = 0.8;
  bp.epsilon = 1e-300;
  bp.max_iters = 50;
  const RunResult b = run_baseline(BaselineModel::hk, g, x0, bp);
  ASSERT_EQ(a.opinion_trace.size(), b.opinion_trace.size());
  for (std::size_t t = 0; t < a.opinion_trace.size(); ++t) {
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(a.opinion_trace[t][i], b.opinion_trace[t][i], 1e-12);
  }
}
