// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kreiss/operators.hpp"
#include "kreiss/propagator.hpp"
#include "kreiss/report.hpp"
#include "kreiss/resolvent.hpp"

namespace kreiss
{

/// L = ⌊log₂ t⌋.
int dyadic_count(double t);

/// Windows [t − 2^{l+1}, t − 2^l] for l = 0, ..., L − 1.
std::vector<std::pair<double, double>> dyadic_windows(double t);

/// {2, 4, ..., 2^⌈log₂ t_max⌉} merged with the extra points, sorted, unique.
std::vector<double> dyadic_cesaro_grid(double t_max, std::span<const double> extra = {});

/// Deterministic trial vectors: all ones, the first basis vector and a vector
/// of unit-modulus entries with linearly increasing phase.
std::vector<Vector> default_probes(Index dim);

/// ∫_ℝ ‖R(−r + iβ, A)x‖² dβ against 2π ∫₀^∞ e^{−2rs} ‖T_s x‖² ds.
struct PlancherelResult
{
  double resolvent_side = 0.0;
  double time_side = 0.0;
  double relative_mismatch = 0.0;
  double resolvent_budget = 0.0;
  double time_budget = 0.0;
  double horizon = 0.0;  // S
};

PlancherelResult plancherel_sides(const OperatorSystem &sys, double r, const Vector &x,
                                  double tol);

/// Passes iff the relative mismatch is at most 10·tol.
CheckEntry plancherel_check(const OperatorSystem &sys, double r, const Vector &x, double tol);

struct CheckOptions
{
  GramOptions gram = {};
  double line_tol = 1e-6;
  unsigned workers = 0;
};

/// ∫₀ᵗ ‖T_s x‖² ds ≤ (e²/2π) ∫‖R(−1/t + iβ, A)x‖² dβ for each t > 1 and probe,
/// plus C′ ≤ 4e² K_obs with K_obs observed at r = 1/t. Slack 1.02.
CheckEntry resolvent_to_cesaro_check(const OperatorSystem &sys, double alpha,
                                     std::span<const double> t_values,
                                     std::span<const Vector> probes, CheckOptions opts = {});

struct BoundCheck
{
  CheckEntry entry;
  CesaroEstimate cesaro;
  std::vector<double> norms;  // ‖T_t‖ per requested t
};

/// ‖T_t‖ ≤ 2 C_max t^α / √⌊log₂ t⌋ for α ∈ (0, 1], all t > 2. Slack 1.05.
BoundCheck theorem_bound_check(const OperatorSystem &sys, double alpha,
                               std::span<const double> t_values, CheckOptions opts = {});

/// ‖T_t‖ ≤ 2^α √(C_adjoint C_primal) t^α for α > 1, all t > 3. Slack 1.05.
BoundCheck remark_alpha_check(const OperatorSystem &sys, double alpha,
                              std::span<const double> t_values, CheckOptions opts = {});

struct StripCheck
{
  CheckEntry entry;
  KreissFit fit;
  std::vector<ResolventSample> samples;
};

/// Kreiss constant restricted to Re λ ∈ (−1, 0); passes iff finite.
StripCheck strip_kreiss_check(const OperatorSystem &sys, double alpha,
                              std::span<const double> r_values,
                              std::span<const double> beta_values, ResolventOptions opts = {});

enum class GrowthModel
{
  Power,     // c t^a
  PowerLog,  // c t^a / √(log t)
  Shifted,   // c t^a e^{ωt} / √(log t)
};

const char *to_string(GrowthModel model);
GrowthModel growth_model_from_string(const std::string &name);

struct GrowthFitResult
{
  GrowthModel model = GrowthModel::Power;
  double c = 0.0;
  double a = 0.0;
  std::optional<double> omega;
  double rms_residual = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t samples = 0;
};

/// Least squares of log y − ωt + ½ log log t (log-corrected models) against
/// (1, log t). Needs ≥ 3 samples with t ≥ 2 and positive norms; Shifted
/// requires ω.
GrowthFitResult growth_fit(std::span<const TrajectorySample> samples, GrowthModel model,
                           std::optional<double> omega = std::nullopt);

struct WaveDemoOptions
{
  double t_max = 30.0;
  std::vector<double> strip_r;      // default logspace(1e−2, 0.99, 20)
  std::vector<double> strip_beta;   // default default_beta_grid(‖Ã‖₂)
  std::vector<double> theorem_t;    // default dyadic points in (2, t_max) ∪ {t_max}
  std::vector<double> fit_t;        // default [2, t_max] in steps of ½
  CheckOptions check = {};
  ResolventOptions resolvent = {};
};

struct WaveDirection
{
  std::string name;
  OperatorSystem sys;
  std::vector<ResolventSample> samples;
  std::optional<KreissFit> strip;
  std::optional<CesaroEstimate> cesaro;
  std::vector<TrajectorySample> trajectory;
  std::vector<GrowthFitResult> fits;  // power, power-log
};

struct WaveDemoResult
{
  VerificationReport report;
  std::vector<WaveDirection> directions;  // forward (A + ½), backward (−A + ½)
};

/// Strip Kreiss constants, the dyadic bound and growth fits for both time directions of
/// the shifted wave group. Stage failures become failing report entries.
WaveDemoResult wave_proposition_demo(const WaveTruncationParams &params,
                                     const WaveDemoOptions &opts = {});

}  // namespace kreiss
