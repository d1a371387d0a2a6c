#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"

using namespace gcaofp;
using namespace gcaofp::testing;

namespace {

Params opinion_params(std::size_t n, double lambda, double beta, double gamma = 1.0) {
  Params p = Params::uniform(n, lambda);
  p.beta = beta;
  p.gamma = gamma;
  return p;
}

}  // namespace

TEST(Opinion, ConfidenceBound) {
  EXPECT_DOUBLE_EQ(confidence_bound(opinion_params(1, 1.4, 0.9), 5), 0.9);
  EXPECT_NEAR(confidence_bound(opinion_params(1, 1.4, 0.9, 0.99), 2), 0.88209, 1e-12);
  EXPECT_DOUBLE_EQ(confidence_bound(opinion_params(1, 1.4, 0.7, 0.5), 0), 0.7);
}

TEST(Opinion, WeightsMutualPair) {
  const Network g = net_from("0 1", false);
  const auto rows = compute_weights(OpinionVector({0.2, 0.5}), Partition({0, 0}), g, opinion_params(2, 1.5, 0.9), 0);
  EXPECT_NEAR(rows[0].self_weight, 1.0 / 1.9, 1e-15);
  ASSERT_EQ(rows[0].neighbor_weights.size(), 1u);
  EXPECT_EQ(rows[0].neighbor_weights[0].first, 1u);
  EXPECT_NEAR(rows[0].neighbor_weights[0].second, 0.9 / 1.9, 1e-15);
}

TEST(Opinion, StubbornAgent) {
  const Network g = net_from("0 1", false);
  const auto rows = compute_weights(OpinionVector({0.0, 0.95}), Partition({0, 0}), g, opinion_params(2, 1.5, 0.9), 0);
  EXPECT_EQ(rows[0].self_weight, 1.0);
  EXPECT_TRUE(rows[0].neighbor_weights.empty());
}

TEST(Opinion, BinaryClosedForm) {
  const Network g = complete(5);
  Params p = opinion_params(5, 1.0, 0.9);
  p.mode = WeightingMode::binary;
  const auto rows = compute_weights(OpinionVector({0.1, 0.2, 0.3, 0.4, 0.5}), Partition::single(5), g, p, 0);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.self_weight, 0.2, 1e-15);
    for (const auto& [j, w] : row.neighbor_weights) EXPECT_NEAR(w, 0.2, 1e-15);
  }
}

TEST(Opinion, StepMutualPair) {
  const Network g = net_from("0 1", false);
  const Params p = opinion_params(2, 1.5, 0.9);
  OpinionVector x({0.2, 0.5});
  const Partition part({0, 0});
  x = opinion_step(x, part, g, p, 0);
  EXPECT_NEAR(x[0], (0.2 + 0.9 * 0.5) / 1.9, 1e-15);
  EXPECT_NEAR(x[1], (0.5 + 0.9 * 0.2) / 1.9, 1e-15);
  EXPECT_NEAR(x[0], 0.342105, 1e-6);
  EXPECT_NEAR(x[1], 0.357895, 1e-6);
  for (std::size_t t = 1; t < 200; ++t) x = opinion_step(x, part, g, p, t);
  EXPECT_NEAR(x[0], 0.35, 1e-9);
  EXPECT_NEAR(x[1], 0.35, 1e-9);
}

TEST(Opinion, ConstantIsFixedPoint) {
  const Network g = random_strong(20, 0.2, 4, true);
  Rng rng(2);
  const OpinionVector x(std::vector<double>(20, 0.37));
  const OpinionVector y = opinion_step(x, random_partition(20, 3, rng), g, opinion_params(20, 1.4, 0.9), 3);
  for (double v : y.values) EXPECT_DOUBLE_EQ(v, 0.37);
}

TEST(Opinion, DegenerateLambdaOneLinear) {
  const Network g = complete(3);
  const OpinionVector y =
      opinion_step(OpinionVector({0.0, 0.3, 0.6}), Partition::single(3), g, opinion_params(3, 1.0, 0.9), 0);
  EXPECT_NEAR(y[0], (0.6 * 0.3 + 0.3 * 0.6) / 1.9, 1e-15);
  EXPECT_NEAR(y[0], 0.189474, 1e-6);
}

TEST(Opinion, BoundaryNeighborContributesNothing) {
  const Network g = net_from("0 1", false);
  for (WeightingMode mode : {WeightingMode::linear, WeightingMode::binary}) {
    Params p = opinion_params(2, 1.5, 0.5);
    p.mode = mode;
    const auto rows = compute_weights(OpinionVector({0.25, 0.75}), Partition({0, 0}), g, p, 0);
    EXPECT_EQ(rows[0].self_weight, 1.0);
    EXPECT_TRUE(rows[0].neighbor_weights.empty());
  }
}

TEST(Opinion, HkExamples) {
  const Network g = complete(3);
  const OpinionVector y = hk_step(OpinionVector({0.1, 0.2, 0.9}), g, 0.15);
  EXPECT_NEAR(y[0], 0.15, 1e-15);
  EXPECT_NEAR(y[1], 0.15, 1e-15);
  EXPECT_NEAR(y[2], 0.9, 1e-15);

  const OpinionVector c = hk_step(OpinionVector({0.4, 0.4, 0.4}), g, 0.3);
  for (double v : c.values) EXPECT_DOUBLE_EQ(v, 0.4);

  const OpinionVector m = hk_step(OpinionVector({0.1, 0.2, 0.9}), g, 0.85);
  for (double v : m.values) EXPECT_NEAR(v, 0.4, 1e-15);
  EXPECT_THROW(hk_step(OpinionVector({0.1, 0.2, 0.9}), g, 0.0), std::invalid_argument);
}

TEST(Opinion, RowStochasticRangeAndContraction) {
  Rng rng(123);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 5 + rng.below(30);
    const Network g = random_strong(n, 0.2, 1000 + t, rng.below(2) == 1);
    Params p = opinion_params(n, 1.4, 0.05 + 0.9 * rng.uniform01(), 0.5 + 0.5 * rng.uniform01());
    for (auto& l : p.lambda) l = 1.001 + 3.0 * rng.uniform01();
    if (rng.below(3) == 0) p.mode = WeightingMode::binary;
    const OpinionVector x = random_opinions(n, rng);
    const Partition part = random_partition(n, 1 + rng.below(n), rng);
    const std::size_t step = rng.below(20);
    const auto rows = compute_weights(x, part, g, p, step);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = rows[i].self_weight;
      EXPECT_GT(rows[i].self_weight, 0.0);
      for (const auto& [j, w] : rows[i].neighbor_weights) {
        EXPECT_GT(w, 0.0);
        EXPECT_GT(g.weight(i, j), 0.0);
        EXPECT_LT(std::abs(x[i] - x[j]), confidence_bound(p, step));
        sum += w;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    const OpinionVector y = opinion_step(x, part, g, p, step);
    for (std::size_t i = 0; i < n; ++i) {
      double expected = rows[i].self_weight * x[i];
      for (const auto& [j, w] : rows[i].neighbor_weights) expected += w * x[j];
      EXPECT_NEAR(y[i], expected, 1e-12);
      EXPECT_GE(y[i], 0.0);
      EXPECT_LE(y[i], 1.0);
      EXPECT_LT(std::abs(y[i] - x[i]), confidence_bound(p, step) + 1e-12);
    }
  }
}

TEST(Opinion, HkDegeneracyArbitraryInputs) {
  Rng rng(55);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + rng.below(25);
    const Network g = random_strong(n, 0.3, 2000 + t, false);
    const double rho = 0.05 + 0.9 * rng.uniform01();
    Params p = opinion_params(n, 1.0, rho);
    p.mode = WeightingMode::binary;
    const OpinionVector x = random_opinions(n, rng);
    const OpinionVector a = opinion_step(x, Partition::single(n), g, p, rng.below(10));
    const OpinionVector b = hk_step(x, g, rho);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(Opinion, ArcTouchCounter) {
  const Network g = random_strong(15, 0.2, 8, false);
  Rng rng(1);
  std::uint64_t touches = 0;
  opinion_step(random_opinions(15, rng), Partition::single(15), g, opinion_params(15, 1.4, 0.9), 0, &touches);
  EXPECT_EQ(touches, g.arc_count());
}
