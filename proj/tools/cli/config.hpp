// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kreiss/bounds.hpp"
#include "kreiss/operators.hpp"

namespace kreiss::cli
{

enum class Stage
{
  ResolventSweep,
  Kreiss,
  Cesaro,
  VerifyTheorem,
  VerifyIdentities,
  FitGrowth,
  WaveDemo,
};

const char *to_string(Stage stage);

struct OperatorSpec
{
  std::string kind;  // diagonal | jordan | wave | matrix
  std::vector<Complex> eigenvalues;
  Complex eigenvalue = 0.0;
  Index size = 0;
  WaveTruncationParams wave;
  Matrix matrix;
  RealVector weight;
  double shift = 0.0;
  bool reverse = false;
  std::string label;
};

/// Builds the system: the base builder, then reversal, then the shift.
OperatorSystem build_operator(const OperatorSpec &spec);

struct WaveDemoSpec
{
  double t_max = 30.0;
  std::vector<double> strip_r;
  std::vector<double> strip_beta;
  std::vector<double> theorem_t;
  std::vector<double> fit_t;
};

struct ExperimentConfig
{
  OperatorSpec op;
  double alpha = 1.0;
  std::optional<std::vector<double>> r_grid;
  std::optional<std::vector<double>> beta_grid;
  std::vector<double> t_grid;
  std::vector<double> identity_r = {1.0};
  double quadrature_tol = 1e-6;
  double gram_tol = 1e-6;
  std::vector<Vector> probes;  // H coordinates; empty means default_probes
  std::optional<double> kreiss_constant;
  GrowthModel fit_model = GrowthModel::Power;
  std::optional<double> fit_omega;
  WaveDemoSpec wave_demo;
  std::filesystem::path output_dir = ".";
  unsigned workers = 0;
  std::vector<Stage> stages;  // dependency order, unique

  bool has(Stage stage) const;
};

/// Parses and validates a config document. Every precondition of the enabled
/// stages is checked here; errors are ConfigError with the offending field
/// path in the message.
ExperimentConfig parse_config(const std::string &json_text);
ExperimentConfig load_config(const std::filesystem::path &path);

}  // namespace kreiss::cli
