// SPDX-License-Identifier: Apache-2.0

#include "kreiss/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "kreiss/types.hpp"

namespace kreiss::quad
{

namespace
{

struct Interval
{
  double a, b;
  double fa, fm, fb;
  double whole;
  double tol;
};

double simpson(double a, double b, double fa, double fm, double fb)
{
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

AdaptiveResult adaptive_simpson(const std::function<double(double)> &f,
                                std::span<const double> breaks, double tol,
                                std::size_t max_intervals)
{
  if (!(tol > 0.0))
    throw ConfigError("quadrature tolerance must be positive");
  if (breaks.size() < 2)
    throw ConfigError("quadrature needs at least one panel");

  AdaptiveResult result;
  auto eval = [&](double x)
  {
    const double y = f(x);
    ++result.evaluations;
    if (!std::isfinite(y))
      throw NumericalFailure("non-finite integrand at " + std::to_string(x));
    return y;
  };

  const double share = tol / double(breaks.size() - 1);
  std::vector<Interval> stack;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
  {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    if (!(b > a))
      throw ConfigError("quadrature breakpoints must be strictly increasing");
    const double fa = eval(a);
    const double fb = eval(b);
    const double fm = eval(0.5 * (a + b));
    stack.clear();
    stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), share});

    while (!stack.empty())
    {
      const Interval iv = stack.back();
      stack.pop_back();
      const double m = 0.5 * (iv.a + iv.b);
      const double flm = eval(0.5 * (iv.a + m));
      const double frm = eval(0.5 * (m + iv.b));
      const double left = simpson(iv.a, m, iv.fa, flm, iv.fm);
      const double right = simpson(m, iv.b, iv.fm, frm, iv.fb);
      const double delta = left + right - iv.whole;
      const bool tiny = (iv.b - iv.a) <= 1e-13 * std::max(1.0, std::abs(m));
      if (std::abs(delta) <= 15.0 * iv.tol || tiny)
      {
        result.value += left + right + delta / 15.0;
        result.error_estimate += std::abs(delta) / 15.0;
        ++result.intervals;
        continue;
      }
      if (result.intervals + stack.size() + 2 > max_intervals)
        throw NumericalFailure("adaptive Simpson exceeded " + std::to_string(max_intervals) +
                               " intervals");
      // Right half first so the left half is processed next (ascending order).
      stack.push_back({m, iv.b, iv.fm, frm, iv.fb, right, 0.5 * iv.tol});
      stack.push_back({iv.a, m, iv.fa, flm, iv.fm, left, 0.5 * iv.tol});
    }
  }
  return result;
}

double simpson_weight(std::size_t node, std::size_t panels, double h)
{
  if (node == 0 || node == panels)
    return h / 3.0;
  return (node % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
}

}  // namespace kreiss::quad
