// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kreiss/grid.hpp"
#include "kreiss/linalg.hpp"
#include "kreiss/propagator.hpp"

using namespace kreiss;

namespace
{

OperatorSystem scalar(double a)
{
  const std::vector<Complex> e = {a};
  return build_diagonal(e);
}

OperatorSystem skew(int k_max)
{
  std::vector<Complex> eigs;
  for (int k = -k_max; k <= k_max; ++k)
    eigs.emplace_back(0.0, k);
  return build_diagonal(eigs);
}

}  // namespace

TEST(Propagator, ClosedForms)
{
  EXPECT_NEAR(semigroup_norm(scalar(1.0), 2.0), std::exp(-2.0), 1e-15);
  EXPECT_EQ(semigroup_norm(build_jordan(0.0, 2), 0.0), 1.0);
  EXPECT_NEAR(semigroup_norm(build_jordan(0.0, 2), 2.0), 1.0 + std::sqrt(2.0), 1e-12);
  for (double t : {0.5, 3.0, 17.0})
    EXPECT_NEAR(semigroup_norm(skew(8), t), 1.0, 1e-12);
  const Matrix t3 = expm_semigroup(build_jordan(0.0, 2), 3.0);
  EXPECT_NEAR(std::abs(t3(0, 1) - Complex(-3.0)), 0.0, 1e-13);
  EXPECT_NEAR(semigroup_norm(shifted(scalar(1.0), 0.5), 2.0), std::exp(-3.0), 1e-15);
}

TEST(Propagator, WeightedCoordinates)
{
  // T_t in H coordinates must not depend on how the weight is split.
  Matrix a(2, 2);
  a << 0.0, 1.0, 0.0, 0.0;
  RealVector w(2);
  w << 4.0, 1.0;
  const auto sys = build_matrix(a, w);
  const Matrix t = expm_semigroup(sys, 2.0);
  EXPECT_NEAR(std::abs(t(0, 1) - Complex(-2.0)), 0.0, 1e-13);
  // ‖T‖_H = ‖D T D⁻¹‖₂ with D T D⁻¹ = [[1, −4], [0, 1]].
  const double want = 2.0 + std::sqrt(5.0);
  EXPECT_NEAR(semigroup_norm(sys, 2.0), want, 1e-12);
}

TEST(Propagator, AdjointSharesNorm)
{
  const auto sys = shifted(build_wave({2, 3}), 0.5);
  for (double t : {0.7, 4.0})
    EXPECT_NEAR(semigroup_norm(sys, t), semigroup_norm(adjoint(sys), t), 1e-10);
}

TEST(Propagator, SemigroupLawOnWave)
{
  const auto sys = build_wave({3, 3});
  for (auto [s, t] : {std::pair{0.5, 1.5}, {2.0, 3.25}})
  {
    const Matrix lhs = expm_semigroup(sys, s + t);
    const Matrix rhs = expm_semigroup(sys, s) * expm_semigroup(sys, t);
    EXPECT_LE((lhs - rhs).norm() / lhs.norm(), 1e-8);
  }
}

TEST(Propagator, TrajectoryMatchesDirect)
{
  const std::vector<double> g = {0.0, 1.0, 2.0};
  const auto tr = trajectory(scalar(1.0), g);
  ASSERT_EQ(tr.size(), 3u);
  EXPECT_NEAR(tr[1].op_norm, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(tr[2].op_norm, std::exp(-2.0), 1e-15);

  const std::vector<double> g2 = {0.0, 2.0};
  EXPECT_NEAR(trajectory(build_jordan(0.0, 2), g2)[1].op_norm, 1.0 + std::sqrt(2.0), 1e-12);

  // Stepping versus a fresh exponential, long enough to cross a re-exponentiation.
  const auto wave = build_wave({4, 4});
  const auto grid = linspace(0.0, 10.0, 81);
  const std::vector<Vector> probes = {Vector::Ones(wave.dim())};
  const auto steps = trajectory(wave, grid, probes);
  const double direct = semigroup_norm(wave, 10.0);
  EXPECT_NEAR(steps.back().op_norm, direct, 1e-6 * direct);
  const Vector tx = expm_semigroup(wave, 10.0) * probes[0];
  EXPECT_NEAR(steps.back().probe_norms[0], wave.norm_h(tx), 1e-6 * wave.norm_h(tx));
}

TEST(Propagator, TrajectoryRejectsBadGrid)
{
  const std::vector<double> dec = {2.0, 1.0};
  EXPECT_THROW(trajectory(scalar(1.0), dec), ConfigError);
  const std::vector<double> neg = {-1.0, 1.0};
  EXPECT_THROW(trajectory(scalar(1.0), neg), ConfigError);
}

TEST(Propagator, GramCesaroAnalytic)
{
  const auto g1 = gram_cesaro(scalar(1.0), 1.0, 1.0, 0.25);
  EXPECT_NEAR(g1.lambda_max, (1 - std::exp(-2.0)) / 2, 1e-7);
  EXPECT_NEAR(g1.c, 0.432332, 1e-6);
  const auto g0 = gram_cesaro(scalar(0.0), 4.0, 1.0, 0.5);
  EXPECT_NEAR(g0.lambda_max, 4.0, 1e-12);
  EXPECT_NEAR(g0.c, 0.25, 1e-12);
  EXPECT_THROW(gram_cesaro(scalar(0.0), 1.0, 1.0, 0.5), ConfigError);
}

TEST(Propagator, GramJordanRefinedStep)
{
  // ∫₀⁸ T_sᴴT_s ds has polynomial entries: [[8, −32], [−32, 8 + 512/3]].
  const auto g = gram_cesaro(build_jordan(0.0, 2), 8.0, 2.0, 0.5);
  Matrix exact(2, 2);
  exact << 8.0, -32.0, -32.0, 8.0 + 512.0 / 3.0;
  const double want = linalg::lambda_max_hermitian(exact);
  EXPECT_NEAR(g.lambda_max, want, 1e-6 * want);
  EXPECT_NEAR(g.c, want / std::pow(8.0, 4), 1e-9);
  const auto fine = gram_cesaro(build_jordan(0.0, 2), 8.0, 2.0, 0.25);
  EXPECT_NEAR(fine.lambda_max, g.lambda_max, 1e-6 * want);
}

TEST(Propagator, CesaroConstants)
{
  const std::vector<double> g24 = {2.0, 4.0};
  const auto s1 = cesaro_constants(scalar(1.0), 1.0, g24);
  const double want = (1 - std::exp(-4.0)) / 8.0;
  EXPECT_NEAR(s1.c_primal, want, 1e-7);
  EXPECT_NEAR(s1.c_adjoint, want, 1e-7);
  EXPECT_NEAR(s1.c_primal, 0.1227105, 1e-6);

  const std::vector<double> g248 = {2.0, 4.0, 8.0};
  EXPECT_NEAR(cesaro_constants(scalar(0.0), 1.0, g248).c_primal, 0.5, 1e-12);

  std::vector<double> dyadic;
  for (double t = 2.0; t <= 64.0; t *= 2.0)
    dyadic.push_back(t);
  const auto u = cesaro_constants(skew(4), 1.0, dyadic);
  EXPECT_NEAR(u.c_primal, 0.5, 1e-8);
  EXPECT_NEAR(u.c_adjoint, 0.5, 1e-8);

  const std::vector<double> early = {1.0, 2.0};
  EXPECT_THROW(cesaro_constants(scalar(0.0), 1.0, early), ConfigError);
}

TEST(Propagator, GramSeriesMonotone)
{
  const auto sys = shifted(build_wave({2, 2}), 0.5);
  const auto grid = linspace(2.0, 12.0, 6);
  const auto series = gram_series(sys, grid, default_gram_step(2.0, block_form(sys).norm2));
  for (std::size_t i = 1; i < series.t.size(); ++i)
  {
    EXPECT_GT(series.lambda_max_primal[i], series.lambda_max_primal[i - 1]);
    EXPECT_GT(series.lambda_max_adjoint[i], series.lambda_max_adjoint[i - 1]);
  }
  EXPECT_LT(series.rel_change, 1e-6);
  const Vector x = Vector::Ones(sys.dim()) / std::sqrt(double(sys.dim()));
  EXPECT_LE(series.quadratic_form(3, x), series.lambda_max_primal[3] * (1 + 1e-12));
}
