// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "kreiss/bounds.hpp"
#include "kreiss/propagator.hpp"
#include "kreiss/report.hpp"
#include "kreiss/resolvent.hpp"

namespace kreiss::artifacts
{

/// Shortest decimal that parses back to the same double; "inf", "-inf" and
/// "nan" for non-finite values.
std::string format_double(double value);

/// re,im,sigma_min,norm
void write_resolvent_csv(const std::filesystem::path &path,
                         std::span<const ResolventSample> samples);
/// t,op_norm
void write_trajectory_csv(const std::filesystem::path &path,
                          std::span<const TrajectorySample> samples);
/// t,lambda_max,C_primal_t,C_adjoint_t
void write_cesaro_csv(const std::filesystem::path &path, const CesaroEstimate &estimate);

/// Array of {check, inequality, worst_margin, slack, pass, details}.
std::string report_json(const VerificationReport &report);
void write_report_json(const std::filesystem::path &path, const VerificationReport &report);

/// Array of {label, model, c, a, omega, rms_residual, t_min, t_max}.
struct LabelledFit
{
  std::string label;
  GrowthFitResult fit;
};
std::string fit_json(std::span<const LabelledFit> fits);
void write_fit_json(const std::filesystem::path &path, std::span<const LabelledFit> fits);

}  // namespace kreiss::artifacts
