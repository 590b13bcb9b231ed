// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kreiss/quadrature.hpp"
#include "kreiss/types.hpp"

using namespace kreiss;

TEST(Quadrature, PolynomialExactForCubics)
{
  const std::vector<double> br = {0.0, 2.0};
  const auto res = quad::adaptive_simpson([](double x) { return x * x * x - x + 1; }, br, 1e-12);
  EXPECT_NEAR(res.value, 4.0 - 2.0 + 2.0, 1e-13);
}

TEST(Quadrature, Lorentzian)
{
  // ∫ dβ / (4 + β²) over [−L, L] = arctan(L/2).
  const double L = 200.0;
  const std::vector<double> br = {-L, 0.0, L};
  const auto res = quad::adaptive_simpson([](double b) { return 1.0 / (4.0 + b * b); }, br, 1e-9);
  EXPECT_NEAR(res.value, std::atan(L / 2.0), 1e-8);
  EXPECT_GT(res.intervals, 2u);
}

TEST(Quadrature, CapAndNonFiniteThrow)
{
  const std::vector<double> br = {0.0, 1.0};
  EXPECT_THROW(quad::adaptive_simpson([](double x) { return std::sin(1.0 / (x + 1e-12)); }, br,
                                      1e-14, 64),
               NumericalFailure);
  EXPECT_THROW(quad::adaptive_simpson([](double) { return std::nan(""); }, br, 1e-6),
               NumericalFailure);
}

TEST(Quadrature, SimpsonWeights)
{
  const double h = 0.25;
  double sum = 0.0;
  for (std::size_t k = 0; k <= 8; ++k)
    sum += quad::simpson_weight(k, 8, h);
  EXPECT_NEAR(sum, 8 * h, 1e-15);
  EXPECT_NEAR(quad::simpson_weight(0, 8, h), h / 3, 1e-16);
  EXPECT_NEAR(quad::simpson_weight(1, 8, h), 4 * h / 3, 1e-16);
  EXPECT_NEAR(quad::simpson_weight(2, 8, h), 2 * h / 3, 1e-16);
}
