// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace kreiss
{

enum class Spacing
{
  Linear,
  Log,
};

/// count points from min to max inclusive; Log spacing is geometric.
struct GridSpec
{
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

/// r ∈ [1e−3, 1], 60 log-spaced points.
GridSpec default_r_grid();
/// β ∈ [−2‖Ã‖₂ − 5, 2‖Ã‖₂ + 5], 241 linear points.
GridSpec default_beta_grid(double norm2);

}  // namespace kreiss
