// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "kreiss/linalg.hpp"

using namespace kreiss;
using namespace kreiss::linalg;

namespace
{

// Well conditioned apart from what the caller does to it: diagonal of modulus
// about 2, strictly upper part scaled by 1/√n.
Matrix random_upper(Index n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> d;
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
  {
    m(i, i) = std::polar(2.0 + 0.1 * d(rng), d(rng));
    for (Index j = i + 1; j < n; ++j)
      m(i, j) = Complex(d(rng), d(rng)) / std::sqrt(double(n));
  }
  return m;
}

}  // namespace

TEST(Linalg, JordanResolventSingularValues)
{
  // R(−0.1) for the 2×2 nilpotent Jordan block, written out.
  const Complex l = -0.1;
  Matrix r(2, 2);
  r << 1.0 / l, 1.0 / (l * l), 0.0, 1.0 / l;
  const double s = sigma_max(r);
  // Largest singular value of [[a, a²], [0, a]] with a = 10: closed form.
  const double a = 10.0;
  const double want = (std::sqrt(a * a * a * a + 4 * a * a) + a * a) / 2.0;
  EXPECT_NEAR(s, want, 1e-9 * want);
  EXPECT_NEAR(s, 101.0, 0.05);
}

TEST(Linalg, InverseIterationMatchesSvd)
{
  std::mt19937_64 rng(21);
  for (Index n : {3, 10, 40})
  {
    Matrix t = random_upper(n, rng);
    t(n / 2, n / 2) *= 1e-3;  // push σ_min down
    EXPECT_NEAR(sigma_min_triangular(t), sigma_min_svd(t), 1e-8 * sigma_min_svd(t)) << n;
  }
}

TEST(Linalg, InverseIterationClusteredSingularValues)
{
  // σ = 1, 1.001, 1.002, ... behind a random unitary: a single-vector
  // iteration barely separates the bottom pair.
  std::mt19937_64 rng(4);
  const Index n = 30;
  Vector s(n);
  for (Index i = 0; i < n; ++i)
    s[i] = 1.0 + 1e-3 * double(i);
  std::normal_distribution<double> d;
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      g(i, j) = Complex(d(rng), d(rng));
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  const Matrix a = q * s.asDiagonal() * q.adjoint();
  const Matrix t = Eigen::ComplexSchur<Matrix>(a).matrixT();
  EXPECT_NEAR(sigma_min_triangular(t), 1.0, 1e-8);
}

TEST(Linalg, InverseIterationIsDeterministic)
{
  std::mt19937_64 rng(2);
  const Matrix t = random_upper(25, rng);
  EXPECT_EQ(sigma_min_triangular(t), sigma_min_triangular(t));
}

TEST(Linalg, ExactZeroDiagonal)
{
  Matrix t = Matrix::Identity(3, 3);
  t(1, 1) = 0.0;
  EXPECT_EQ(sigma_min_triangular(t), 0.0);
}

TEST(Linalg, LambdaMaxHermitian)
{
  Matrix h(2, 2);
  h << 2.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
  EXPECT_NEAR(lambda_max_hermitian(h), 3.0, 1e-14);
}
