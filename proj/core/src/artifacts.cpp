// SPDX-License-Identifier: Apache-2.0

#include "kreiss/artifacts.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "json.hpp"

namespace kreiss::artifacts
{

namespace
{

using Json = nlohmann::ordered_json;

Json number(double v)
{
  if (std::isfinite(v))
    return v;
  if (std::isnan(v))
    return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json numbers(const std::vector<double> &values)
{
  Json arr = Json::array();
  for (double v : values)
    arr.push_back(number(v));
  return arr;
}

std::ofstream open_for_write(const std::filesystem::path &path)
{
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
  auto out = open_for_write(path);
  out << text;
  if (!out)
    throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double value)
{
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc())
    throw Error("number formatting failed");
  return std::string(buf, res.ptr);
}

void write_resolvent_csv(const std::filesystem::path &path,
                         std::span<const ResolventSample> samples)
{
  std::string text = "re,im,sigma_min,norm\n";
  for (const auto &s : samples)
    text += format_double(s.lambda.real()) + ',' + format_double(s.lambda.imag()) + ',' +
            format_double(s.sigma_min) + ',' + format_double(s.norm) + '\n';
  write_text(path, text);
}

void write_trajectory_csv(const std::filesystem::path &path,
                          std::span<const TrajectorySample> samples)
{
  std::string text = "t,op_norm\n";
  for (const auto &s : samples)
    text += format_double(s.t) + ',' + format_double(s.op_norm) + '\n';
  write_text(path, text);
}

void write_cesaro_csv(const std::filesystem::path &path, const CesaroEstimate &estimate)
{
  std::string text = "t,lambda_max,C_primal_t,C_adjoint_t\n";
  for (const auto &row : estimate.rows)
    text += format_double(row.t) + ',' + format_double(row.lambda_max) + ',' +
            format_double(row.c_primal_t) + ',' + format_double(row.c_adjoint_t) + '\n';
  write_text(path, text);
}

std::string report_json(const VerificationReport &report)
{
  Json arr = Json::array();
  for (const auto &c : report.checks)
  {
    Json details = Json::object();
    details["left"] = numbers(c.left);
    details["right"] = numbers(c.right);
    for (const auto &[key, value] : c.details)
    {
      std::visit(
          [&](const auto &v)
          {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              details[key] = number(v);
            else if constexpr (std::is_same_v<T, std::vector<double>>)
              details[key] = numbers(v);
            else
              details[key] = v;
          },
          value);
    }
    Json entry = Json::object();
    entry["check"] = c.check;
    entry["inequality"] = c.inequality;
    entry["worst_margin"] = number(c.worst_margin);
    entry["slack"] = number(c.slack);
    entry["pass"] = c.pass;
    entry["details"] = std::move(details);
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

void write_report_json(const std::filesystem::path &path, const VerificationReport &report)
{
  write_text(path, report_json(report));
}

std::string fit_json(std::span<const LabelledFit> fits)
{
  Json arr = Json::array();
  for (const auto &[label, fit] : fits)
  {
    Json entry = Json::object();
    entry["label"] = label;
    entry["model"] = to_string(fit.model);
    entry["c"] = number(fit.c);
    entry["a"] = number(fit.a);
    entry["omega"] = fit.omega ? number(*fit.omega) : Json(nullptr);
    entry["rms_residual"] = number(fit.rms_residual);
    entry["t_min"] = number(fit.t_min);
    entry["t_max"] = number(fit.t_max);
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

void write_fit_json(const std::filesystem::path &path, std::span<const LabelledFit> fits)
{
  write_text(path, fit_json(fits));
}

}  // namespace kreiss::artifacts
