// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace kreiss::quad
{

struct AdaptiveResult
{
  double value = 0.0;
  double error_estimate = 0.0;  // sum of local Richardson estimates
  std::size_t intervals = 0;    // accepted leaf intervals
  std::size_t evaluations = 0;
};

inline constexpr std::size_t kMaxIntervals = std::size_t{1} << 20;

/// Adaptive Simpson over consecutive panels [breaks[k], breaks[k+1]].
/// Every panel receives an equal share tol / panels of the absolute error
/// budget and is bisected until the local Richardson estimate |S₂ − S₁|/15
/// is below the share scaled by (interval length / panel length).
/// Throws NumericalFailure when more than kMaxIntervals leaves are needed.
AdaptiveResult adaptive_simpson(const std::function<double(double)> &f,
                                std::span<const double> breaks, double tol,
                                std::size_t max_intervals = kMaxIntervals);

/// Composite Simpson weights for `panels` (even) equal panels of width h:
/// h/3 · (1, 4, 2, 4, ..., 4, 1).
double simpson_weight(std::size_t node, std::size_t panels, double h);

}  // namespace kreiss::quad
