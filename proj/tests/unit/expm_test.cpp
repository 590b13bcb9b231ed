// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "kreiss/expm.hpp"

using namespace kreiss;

namespace
{

double rel_err(const Matrix &got, const Matrix &want)
{
  return (got - want).norm() / std::max(1.0, want.norm());
}

Matrix random_matrix(Index n, double scale, std::mt19937_64 &rng)
{
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      m(i, j) = scale * Complex(d(rng), d(rng));
  return m;
}

}  // namespace

TEST(Expm, ZeroIsIdentity)
{
  EXPECT_EQ(expm(Matrix::Zero(3, 3)), Matrix::Identity(3, 3));
}

TEST(Expm, Scalar)
{
  Matrix a(1, 1);
  a << -2.0;
  EXPECT_NEAR(expm(a)(0, 0).real(), std::exp(-2.0), 1e-15);
  a << Complex(0.0, 3.0);
  EXPECT_NEAR(std::abs(expm(a)(0, 0) - std::exp(Complex(0.0, 3.0))), 0.0, 1e-15);
}

TEST(Expm, NilpotentSeriesTerminates)
{
  // exp(−t J) with J = I + N, N³ = 0.
  const double t = 1.7;
  Matrix a = Matrix::Identity(3, 3);
  a(0, 1) = a(1, 2) = 1.0;
  Matrix want(3, 3);
  want << 1.0, -t, t * t / 2, 0.0, 1.0, -t, 0.0, 0.0, 1.0;
  want *= std::exp(-t);
  EXPECT_LE(rel_err(expm(-t * a), want), 1e-13);

  Matrix j(2, 2);
  j << 0.0, 1.0, 0.0, 0.0;
  Matrix w2(2, 2);
  w2 << 1.0, -3.0, 0.0, 1.0;
  EXPECT_LE(rel_err(expm(-3.0 * j), w2), 1e-14);
}

TEST(Expm, DiagonalAgreesWithElementwise)
{
  Vector d(4);
  d << Complex(-30.0, 1.0), Complex(0.0, 5.0), Complex(2.0, -1.0), Complex(-0.5, 0.0);
  const Matrix got = expm(Matrix(d.asDiagonal()));
  for (Index i = 0; i < 4; ++i)
    EXPECT_NEAR(std::abs(got(i, i) - std::exp(d[i])) / std::abs(std::exp(d[i])), 0.0, 1e-13);
}

TEST(Expm, AgreesWithEigenUnsupported)
{
  std::mt19937_64 rng(11);
  for (double scale : {1e-3, 0.1, 1.0, 5.0})
    for (Index n : {2, 7, 20})
    {
      const Matrix a = random_matrix(n, scale, rng);
      const Matrix want = a.exp();
      EXPECT_LE(rel_err(expm(a), want), 1e-10) << "n=" << n << " scale=" << scale;
    }
}

TEST(Expm, UnitaryStaysUnitary)
{
  std::mt19937_64 rng(5);
  Matrix h = random_matrix(12, 3.0, rng);
  const Matrix skew = (h - h.adjoint()) / 2.0;
  const Matrix u = expm(skew);
  EXPECT_LE((u.adjoint() * u - Matrix::Identity(12, 12)).norm(), 1e-11);
}

TEST(Expm, SemigroupLaw)
{
  std::mt19937_64 rng(3);
  const Matrix a = random_matrix(10, 0.5, rng);
  for (auto [t1, t2] : {std::pair{0.3, 0.9}, {1.0, 2.5}, {4.0, 0.125}})
  {
    const Matrix lhs = expm(-(t1 + t2) * a);
    const Matrix rhs = expm(-t1 * a) * expm(-t2 * a);
    EXPECT_LE(rel_err(lhs, rhs), 1e-10);
  }
}

TEST(Expm, RejectsNonFinite)
{
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(expm(a), NumericalFailure);
}
