// SPDX-License-Identifier: Apache-2.0

#include "kreiss/grid.hpp"

#include <cmath>

#include "kreiss/types.hpp"

namespace kreiss
{

std::vector<double> linspace(double a, double b, std::size_t n)
{
  if (n == 0)
    throw ConfigError("grid needs at least one point");
  if (n == 1)
    return {a};
  std::vector<double> out(n);
  const double step = (b - a) / double(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a + step * double(i);
  out.back() = b;
  return out;
}

std::vector<double> logspace(double a, double b, std::size_t n)
{
  if (!(a > 0.0) || !(b > 0.0))
    throw ConfigError("log-spaced grid needs positive end points");
  std::vector<double> out = linspace(std::log(a), std::log(b), n);
  for (auto &v : out)
    v = std::exp(v);
  out.front() = a;
  if (n > 1)
    out.back() = b;
  return out;
}

std::vector<double> GridSpec::values() const
{
  return spacing == Spacing::Log ? logspace(min, max, count) : linspace(min, max, count);
}

GridSpec default_r_grid()
{
  return {1e-3, 1.0, 60, Spacing::Log};
}

GridSpec default_beta_grid(double norm2)
{
  const double half = 2.0 * norm2 + 5.0;
  return {-half, half, 241, Spacing::Linear};
}

}  // namespace kreiss
