#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmeta/error.hpp"
#include "qmeta/jacobi.hpp"

using qmeta::jacobi_eigen;

TEST(Jacobi, TwoByTwo) {
  const auto e = jacobi_eigen({2.0, 1.0, 1.0, 2.0}, 2);
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 3.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vec(0, 0)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(e.vec(0, 0), -e.vec(0, 1), 1e-15);
}

TEST(Jacobi, DiagonalNeedsNoSweeps) {
  const auto e = jacobi_eigen({3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0}, 3);
  EXPECT_EQ(e.sweeps, 0);
  EXPECT_EQ(e.values, (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(Jacobi, RandomSymmetricDecomposition) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  for (std::size_t n : {1u, 3u, 17u, 41u}) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = d(rng);
    const auto e = jacobi_eigen(a, n);
    double trace = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a[i * n + i];
    for (std::size_t k = 0; k < n; ++k) {
      sum += e.values[k];
      if (k > 0) {
        EXPECT_LE(e.values[k - 1], e.values[k]);
      }
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += a[i * n + j] * e.vec(k, j);
        EXPECT_NEAR(av, e.values[k] * e.vec(k, i), 1e-12);
      }
      for (std::size_t l = 0; l < n; ++l) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += e.vec(k, i) * e.vec(l, i);
        EXPECT_NEAR(dot, k == l ? 1.0 : 0.0, 1e-13);
      }
    }
    EXPECT_NEAR(sum, trace, 1e-12 * n);
  }
}

TEST(Jacobi, Errors) {
  EXPECT_THROW(jacobi_eigen({1.0, 2.0, 3.0}, 2), qmeta::PreconditionError);
  EXPECT_THROW(jacobi_eigen({1.0, 0.5, 0.5, 1.0}, 2, 0), qmeta::PreconditionError);
}
