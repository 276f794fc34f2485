#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_graphs.hpp"
#include "vne/entropy.hpp"
#include "vne/jacobi.hpp"

using namespace vne;
using namespace vne::test;

TEST(ExactEntropy, SmallGraphFixtures) {
  EXPECT_NEAR(vnge_exact(complete(2)), 0.0, 1e-12);
  EXPECT_NEAR(vnge_exact(complete(3)), std::log(2.0), 1e-12);
  // Spectrum {1/6, 1/6, 2/3}.
  const double star3 = -2.0 / 6.0 * std::log(1.0 / 6.0) - 2.0 / 3.0 * std::log(2.0 / 3.0);
  EXPECT_NEAR(star3, 0.8675632284814612, 1e-15);
  EXPECT_NEAR(vnge_exact(star(3)), star3, 1e-9);
}

TEST(ExactEntropy, CompleteGraphIsLogOfNMinusOne) {
  for (std::size_t n : {4u, 7u, 15u}) EXPECT_NEAR(vnge_exact(complete(n)), std::log(n - 1.0), 1e-10);
}

TEST(ExactEntropy, CycleMatchesAnalyticSpectrum) {
  for (std::size_t n : {5u, 9u, 24u}) {
    double h = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double lam = (2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n)) / (2.0 * n);
      h -= lam * std::log(lam);
    }
    EXPECT_NEAR(vnge_exact(cycle(n)), h, 1e-10);
  }
}

TEST(ExactEntropy, EdgelessAndEmpty) {
  EXPECT_EQ(vnge_exact(Graph::from_edges(4, {})), 0.0);
  EXPECT_EQ(vnge_exact(Graph::from_edges(1, {})), 0.0);
  EXPECT_THROW(vnge_exact(Graph{}), GraphError);
}

TEST(ExactEntropy, IsolatedNodesDoNotChangeEntropy) {
  const Graph tri = complete(3);
  auto e = tri.edges();
  EXPECT_NEAR(vnge_exact(Graph::from_edges(8, e)), vnge_exact(tri), 1e-12);
}

TEST(DensityMatrix, UnitTraceAndSpectrumInUnitInterval) {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const Graph g = random_graph(rng, 2, 30);
    const Matrix rho = density_matrix(g);
    double tr = 0.0;
    for (std::size_t i = 0; i < rho.rows(); ++i) tr += rho(i, i);
    EXPECT_NEAR(tr, 1.0, 1e-12);
    const auto s = density_spectrum(g);
    double sum = 0.0;
    for (double v : s.eigenvalues) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
  EXPECT_THROW(density_matrix(Graph::from_edges(3, {})), DegenerateGraphError);
}

TEST(SpectralEntropy, ZeroLogZeroAndRoundOff) {
  const std::vector<double> s{0.0, -1e-17, 0.5, 0.5};
  EXPECT_NEAR(spectral_entropy(s), std::log(2.0), 1e-15);
}

TEST(QuadraticTerm, Fixtures) {
  EXPECT_NEAR(quadratic_q(complete(3)), 0.5, 1e-15);
  EXPECT_NEAR(quadratic_q(path(3)), 0.375, 1e-15);
  EXPECT_NEAR(quadratic_q(complete(2)), 0.0, 1e-15);
  EXPECT_THROW(quadratic_q(Graph::from_edges(2, {})), DegenerateGraphError);
}

TEST(QuadraticTerm, EqualsTraceOfRhoTimesComplement) {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const Graph g = random_graph(rng, 2, 30);
    const Matrix rho = density_matrix(g);
    const std::size_t n = rho.rows();
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double rr = 0.0;
      for (std::size_t k = 0; k < n; ++k) rr += rho(i, k) * rho(k, i);
      tr += rho(i, i) - rr;
    }
    EXPECT_NEAR(quadratic_q(g), tr, 1e-12);
  }
}

TEST(PowerIteration, MatchesDenseSolver) {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    const Graph g = random_graph(rng, 2, 40);
    const auto dense = density_spectrum(g).eigenvalues.back();
    const auto lm = power_iteration_lambda_max(g);
    EXPECT_NEAR(lm.value, dense, 1e-6);
    EXPECT_GT(lm.iterations, 0);
  }
}

TEST(PowerIteration, StarCenteredAwayFromNodeZero) {
  std::vector<Edge> e{{1, 0}, {1, 2}, {1, 3}, {1, 4}, {1, 5}};
  const Graph g = Graph::from_edges(6, e);
  EXPECT_NEAR(power_iteration_lambda_max(g).value, density_spectrum(g).eigenvalues.back(), 1e-9);
}

TEST(PowerIteration, ThrowsWhenCapped) {
  PowerIterationOptions opts;
  opts.max_iters = 1;
  Rng rng(2);
  try {
    power_iteration_lambda_max(random_graph(rng, 20, 30), opts);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.iterations(), 1);
    EXPECT_GT(e.estimate(), 0.0);
  }
  EXPECT_THROW(power_iteration_lambda_max(Graph::from_edges(3, {})), DegenerateGraphError);
}

TEST(ApproxEntropy, Fixtures) {
  EXPECT_NEAR(vnge_approx(complete(2)), 0.0, 1e-6);
  EXPECT_NEAR(vnge_approx(complete(3)), 0.346574, 1e-6);
  EXPECT_NEAR(vnge_approx(star(3)), 0.202733, 1e-6);
  EXPECT_EQ(vnge_approx(Graph::from_edges(5, {})), 0.0);
  const auto s = approx_summary(Graph::from_edges(5, {}));
  EXPECT_EQ(s.q, 0.0);
  EXPECT_EQ(s.lambda_max, 1.0);
}

TEST(ApproxEntropy, LowerBoundTightOnlyForSingleEdge) {
  Rng rng(51);
  for (int t = 0; t < 60; ++t) {
    const Graph g = random_graph(rng, 2, 30);
    const double exact = vnge_exact(g), approx = vnge_approx(g);
    const double lm = power_iteration_lambda_max(g).value;
    EXPECT_LE(approx, exact + 1e-6);
    EXPECT_EQ(std::abs(approx - exact) <= 1e-6, std::abs(lm - 1.0) <= 1e-9);
  }
  auto e = complete(2).edges();
  const Graph single = Graph::from_edges(6, e);
  EXPECT_NEAR(vnge_approx(single), vnge_exact(single), 1e-12);
}

TEST(BinaryEntropy, Values) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), std::log(2.0), 1e-15);
}

TEST(ContinuityBound, HoldsOnRandomPairs) {
  Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    const Graph a = random_graph(rng, 6, 6);
    Graph b;
    do b = random_graph(rng, 6, 6);
    while (b.num_nodes() != a.num_nodes());
    const auto cb = fannes_audenaert_bound(a, b);
    EXPECT_LE(cb.lhs, cb.rhs + 1e-9);
    EXPECT_GE(cb.trace_distance, 0.0);
    EXPECT_LE(cb.trace_distance, 1.0 + 1e-12);
  }
}

TEST(ContinuityBound, IdenticalGraphsHaveZeroDistance) {
  const auto cb = fannes_audenaert_bound(cycle(6), cycle(6));
  EXPECT_NEAR(cb.trace_distance, 0.0, 1e-12);
  EXPECT_NEAR(cb.lhs, 0.0, 1e-12);
  EXPECT_THROW(fannes_audenaert_bound(cycle(5), cycle(6)), GraphError);
  EXPECT_THROW(fannes_audenaert_bound(cycle(3), Graph::from_edges(3, {})), DegenerateGraphError);
}
