#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_graphs.hpp"
#include "vne/entropy.hpp"
#include "vne/jacobi.hpp"

using namespace vne;

namespace {

Matrix random_symmetric(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

}  // namespace

TEST(Jacobi, TwoByTwoClosedForm) {
  Matrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = a(1, 0) = 1;
  a(1, 1) = 3;
  const auto e = jacobi_eigen(a);
  const double mid = 2.5, rad = std::sqrt(0.25 + 1.0);
  EXPECT_NEAR(e.values[0], mid - rad, 1e-14);
  EXPECT_NEAR(e.values[1], mid + rad, 1e-14);
}

TEST(Jacobi, DiagonalNeedsNoSweeps) {
  Matrix a(3, 3);
  a(0, 0) = 3;
  a(1, 1) = -1;
  a(2, 2) = 2;
  const auto e = jacobi_eigen(a, true);
  EXPECT_EQ(e.values, (std::vector<double>{-1, 2, 3}));
  EXPECT_EQ(e.sweeps, 0);
}

TEST(Jacobi, PathLaplacianMatchesCosineSpectrum) {
  for (std::size_t n : {2u, 5u, 12u, 30u}) {
    const auto e = jacobi_eigen(laplacian(test::path(n)));
    for (std::size_t k = 0; k < n; ++k) {
      const double expect = 2.0 - 2.0 * std::cos(std::numbers::pi * k / n);
      EXPECT_NEAR(e.values[k], expect, 1e-11) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Jacobi, ReconstructsRandomMatrices) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 25;
    const Matrix a = random_symmetric(rng, n);
    const auto e = jacobi_eigen(a, true);
    ASSERT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    double trace = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
    for (double v : e.values) sum += v;
    EXPECT_NEAR(trace, sum, 1e-11);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t k = 0; k < n; ++k) av += a(i, k) * e.vectors(k, j);
        EXPECT_NEAR(av, e.values[j] * e.vectors(i, j), 1e-10);
      }
      for (std::size_t l = 0; l < n; ++l) {
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += e.vectors(k, j) * e.vectors(k, l);
        EXPECT_NEAR(dot, j == l ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(Jacobi, ReadsOnlyUpperTriangle) {
  Matrix a(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 99.0;
  const auto e = jacobi_eigen(a);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(Jacobi, ThrowsWhenSweepsExhausted) {
  Rng rng(9);
  EXPECT_THROW(jacobi_eigen(random_symmetric(rng, 10), false, 1), EigenSolverError);
}
