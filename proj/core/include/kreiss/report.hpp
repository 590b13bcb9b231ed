// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kreiss
{

using DetailValue = std::variant<bool, double, std::string, std::vector<double>>;

/// One named inequality. worst_margin = max_i left_i / right_i and the check
/// passes iff worst_margin ≤ slack.
struct CheckEntry
{
  std::string check;
  std::string inequality;
  std::vector<double> left;
  std::vector<double> right;
  double worst_margin = 0.0;
  double slack = 1.0;
  bool pass = false;
  std::vector<std::pair<std::string, DetailValue>> details;

  CheckEntry &detail(std::string key, DetailValue value);
};

/// Builds an entry from paired left/right values. A non-finite ratio or an
/// empty list yields margin +inf and a failing entry.
CheckEntry make_check(std::string check, std::string inequality, std::vector<double> left,
                      std::vector<double> right, double slack);

/// Entry recording that a stage threw instead of producing values.
CheckEntry failed_check(std::string check, std::string inequality, const std::string &error);

struct VerificationReport
{
  std::vector<CheckEntry> checks;

  void add(CheckEntry entry) { checks.push_back(std::move(entry)); }
  bool all_pass() const;
};

}  // namespace kreiss
