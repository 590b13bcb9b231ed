// SPDX-License-Identifier: Apache-2.0

#include "kreiss/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kreiss
{

CheckEntry &CheckEntry::detail(std::string key, DetailValue value)
{
  details.emplace_back(std::move(key), std::move(value));
  return *this;
}

CheckEntry make_check(std::string check, std::string inequality, std::vector<double> left,
                      std::vector<double> right, double slack)
{
  CheckEntry entry;
  entry.check = std::move(check);
  entry.inequality = std::move(inequality);
  entry.slack = slack;
  const double inf = std::numeric_limits<double>::infinity();
  if (left.empty() || left.size() != right.size())
    entry.worst_margin = inf;
  else
  {
    entry.worst_margin = -inf;
    for (std::size_t i = 0; i < left.size(); ++i)
    {
      const double ratio = left[i] / right[i];
      entry.worst_margin = std::isfinite(ratio) ? std::max(entry.worst_margin, ratio) : inf;
      if (!std::isfinite(ratio))
        break;
    }
  }
  entry.left = std::move(left);
  entry.right = std::move(right);
  entry.pass = entry.worst_margin <= entry.slack;
  return entry;
}

CheckEntry failed_check(std::string check, std::string inequality, const std::string &error)
{
  CheckEntry entry;
  entry.check = std::move(check);
  entry.inequality = std::move(inequality);
  entry.worst_margin = std::numeric_limits<double>::infinity();
  entry.pass = false;
  entry.detail("error", error);
  return entry;
}

bool VerificationReport::all_pass() const
{
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry &c) { return c.pass; });
}

}  // namespace kreiss
