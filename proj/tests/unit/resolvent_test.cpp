// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "kreiss/grid.hpp"
#include "kreiss/resolvent.hpp"

using namespace kreiss;
using std::numbers::pi;

namespace
{

OperatorSystem scalar(double a)
{
  const std::vector<Complex> e = {a};
  return build_diagonal(e);
}

// ‖R(λ)‖ for the 2×2 nilpotent Jordan block: largest singular value of
// [[1/λ, 1/λ²], [0, 1/λ]], from the 2×2 closed form.
double jordan2_resolvent(Complex l)
{
  const double a = 1.0 / std::abs(l);
  const double b = a * a;
  const double fro2 = 2 * a * a + b * b;
  const double det = a * a;
  return std::sqrt((fro2 + std::sqrt(fro2 * fro2 - 4 * det * det)) / 2);
}

Vector ones(Index n) { return Vector::Ones(n); }

}  // namespace

TEST(Resolvent, ScalarNorms)
{
  const auto sys = scalar(1.0);
  EXPECT_NEAR(resolvent_norm(sys, {-1.0, 0.0}).norm, 0.5, 1e-15);
  EXPECT_NEAR(resolvent_norm(sys, {-1.0, 1.0}).norm, 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(Resolvent, JordanClosedForm)
{
  const auto sys = build_jordan(0.0, 2);
  const double got = resolvent_norm(sys, {-0.1, 0.0}).norm;
  EXPECT_NEAR(got, jordan2_resolvent({-0.1, 0.0}), 1e-10 * got);
  EXPECT_NEAR(got, 101.0, 0.05);
}

TEST(Resolvent, SingularPointThrowsAndSweepFlags)
{
  Matrix m(1, 1);
  m << -1.0;
  const auto sys = build_matrix(m);
  EXPECT_THROW(resolvent_norm(sys, {-1.0, 0.0}), ResolventUndefined);
  const std::vector<double> r = {1.0}, beta = {-1.0, 0.0, 1.0};
  const auto s = sweep(sys, r, beta);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_FALSE(s[1].defined());
  EXPECT_TRUE(std::isinf(s[1].norm));
  EXPECT_TRUE(s[0].defined());
  EXPECT_THROW(kreiss_fit(s, 1.0), FitError);
}

TEST(Resolvent, SweepOrderAndValues)
{
  const auto sys = scalar(1.0);
  const std::vector<double> r = {1.0}, beta = {-1.0, 0.0, 1.0};
  const auto s = sweep(sys, r, beta);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s[0].norm, 1 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(s[1].norm, 0.5, 1e-15);
  EXPECT_NEAR(s[2].norm, 1 / std::sqrt(5.0), 1e-15);
  EXPECT_EQ(s[2].lambda, Complex(-1.0, 1.0));

  const std::vector<double> r0 = {1.0}, b0 = {0.0};
  EXPECT_NEAR(sweep(scalar(0.0), r0, b0)[0].norm, 1.0, 1e-15);
}

TEST(Resolvent, JordanSweepAgainstClosedForm)
{
  const auto sys = build_jordan(0.0, 2);
  const auto r = logspace(1e-3, 1.0, 20);
  const std::vector<double> beta = {0.0};
  for (const auto &s : sweep(sys, r, beta))
    EXPECT_NEAR(s.norm, jordan2_resolvent(s.lambda), 1e-9 * s.norm);
}

TEST(Resolvent, KreissFitExamples)
{
  const auto r = logspace(1e-2, 10.0, 15);
  const auto beta = linspace(-5.0, 5.0, 21);
  EXPECT_NEAR(kreiss_fit(sweep(scalar(0.0), r, beta), 1.0).c_est, 1.0, 1e-14);

  std::vector<Complex> eigs;
  for (int k = -3; k <= 3; ++k)
    eigs.emplace_back(0.0, k);
  const auto skew = build_diagonal(eigs);
  const auto b_int = linspace(-4.0, 4.0, 81);
  EXPECT_NEAR(kreiss_fit(sweep(skew, r, b_int), 1.0).c_est, 1.0, 1e-12);

  // Jordan at α = 1: C_est ≈ 1 + 1/r_min blows up.
  const auto rj = logspace(1e-3, 1e-1, 9);
  const std::vector<double> b0 = {0.0};
  const auto fit = kreiss_fit(sweep(build_jordan(0.0, 2), rj, b0), 1.0);
  EXPECT_GT(fit.c_est, 1000.0);
  EXPECT_NEAR(fit.argmax_lambda.real(), -1e-3, 1e-15);
}

TEST(Resolvent, KreissFitPermutationInvariant)
{
  const auto sys = build_wave({2, 2});
  const auto r = logspace(1e-2, 1.0, 7);
  const auto beta = linspace(-6.0, 6.0, 25);
  auto s = sweep(sys, r, beta);
  const double c = kreiss_fit(s, 1.0).c_est;
  std::mt19937_64 rng(9);
  std::shuffle(s.begin(), s.end(), rng);
  EXPECT_EQ(kreiss_fit(s, 1.0).c_est, c);
  EXPECT_THROW(kreiss_fit(std::span<const ResolventSample>{}, 1.0), FitError);
}

TEST(Resolvent, InverseIterationMatchesSvdOnWave)
{
  const auto sys = shifted(build_wave({3, 3}), 0.5);
  ResolventOptions svd, inv;
  svd.method = linalg::SigmaMinMethod::Svd;
  inv.method = linalg::SigmaMinMethod::InverseIteration;
  const ResolventEvaluator a(sys, svd), b(sys, inv);
  for (Complex l : {Complex(-0.3, 1.0), Complex(-0.05, 2.9), Complex(-0.9, -7.5)})
  {
    const double x = a.sample(l).norm, y = b.sample(l).norm;
    EXPECT_NEAR(x, y, 1e-8 * x) << l;
  }
}

TEST(Resolvent, SolveMatchesDenseInverse)
{
  const auto sys = build_wave({2, 2});
  const ResolventEvaluator eval(sys);
  const Complex l(-0.4, 1.3);
  const Matrix e = euclidean_form(sys);
  const Matrix m = l * Matrix::Identity(sys.dim(), sys.dim()) - e;
  Vector y = Vector::LinSpaced(sys.dim(), 1.0, 2.0);
  const Vector want = m.partialPivLu().solve(y);
  EXPECT_LE((eval.solve(l, y) - want).norm(), 1e-11 * want.norm());
}

TEST(Resolvent, LineIntegralScalar)
{
  const Vector x = ones(1);
  const auto a1 = line_integral_L2(scalar(1.0), 1.0, x, 1e-8);
  EXPECT_NEAR(a1.value, pi / 2, 1e-6);
  EXPECT_LE(a1.tail_bound, 1e-7);
  const auto a0 = line_integral_L2(scalar(0.0), 2.0, x, 1e-8);
  EXPECT_NEAR(a0.value, pi / 2, 1e-6);
}

TEST(Resolvent, LineIntegralHomogeneous)
{
  const auto sys = build_jordan(0.0, 2);
  const Vector x = ones(2);
  const double one = line_integral_L2(sys, 0.5, x, 1e-9).value;
  const double three = line_integral_L2(sys, 0.5, Vector(3.0 * x), 1e-9).value;
  EXPECT_NEAR(three / one, 9.0, 1e-6);
}

TEST(Resolvent, LineIntegralRejectsSingularContour)
{
  Matrix m(1, 1);
  m << -1.0;
  EXPECT_THROW(line_integral_L2(build_matrix(m), 1.0, ones(1), 1e-6), ResolventUndefined);
}

TEST(Resolvent, Lemma1ScalarConstant)
{
  const std::vector<double> r = {0.1, 1.0, 10.0};
  const std::vector<Vector> x = {ones(1)};
  const auto res = lemma1_constants(scalar(1.0), 1.0, r, x, 1e-8);
  double want = 0.0;
  for (double rv : r)
    want = std::max(want, pi * rv * rv / std::pow(1 + rv, 3));
  EXPECT_NEAR(res.k_obs, want, 1e-6);
  EXPECT_LT(res.k_obs, pi);
  EXPECT_NEAR(res.k_primal, res.k_adjoint, 1e-6);
  EXPECT_TRUE(lemma1_check(scalar(1.0), 1.0, 1.0, r, x, 1e-8).pass);
}

TEST(Resolvent, Lemma1SkewFiniteAndZeroVectorRejected)
{
  std::vector<Complex> eigs;
  for (int k = -2; k <= 2; ++k)
    eigs.emplace_back(0.0, k);
  const auto sys = build_diagonal(eigs);
  const std::vector<double> r = {0.5, 1.0};
  const std::vector<Vector> x = {ones(5)};
  const auto entry = lemma1_check(sys, 1.0, 1.0, r, x, 1e-7);
  EXPECT_TRUE(entry.pass);
  const std::vector<Vector> zero = {Vector::Zero(5)};
  EXPECT_THROW(lemma1_constants(sys, 1.0, r, zero, 1e-6), ConfigError);
}
