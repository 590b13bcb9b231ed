// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kreiss/operators.hpp"

namespace kreiss
{

/// exp(−tÃ) evaluated block by block on the splitting of Ã.
class Propagator
{
public:
  explicit Propagator(const OperatorSystem &sys);

  /// Per-block exp(−tÃ_b); t must be ≥ 0.
  std::vector<Matrix> euclidean_blocks(double t) const;
  /// exp(−tÃ) as a full matrix.
  Matrix euclidean(double t) const;
  /// ‖T_t‖_H = σ_max(exp(−tÃ)).
  double norm(double t) const;

  const BlockForm &form() const noexcept { return form_; }
  const OperatorSystem &system() const noexcept { return sys_; }

private:
  OperatorSystem sys_;
  BlockForm form_;
};

/// T_t = exp(−tA) in H coordinates. Throws ConfigError for t < 0; the
/// backward direction of a group is reversed(sys).
Matrix expm_semigroup(const OperatorSystem &sys, double t);

/// ‖T_t‖_H = σ_max(D exp(−tA) D⁻¹).
double semigroup_norm(const OperatorSystem &sys, double t);

struct TrajectorySample
{
  double t = 0.0;
  double op_norm = 0.0;
  std::vector<double> probe_norms;  // ‖T_t x_j‖_H
};

inline constexpr std::size_t kReexponentiatePeriod = 25;

/// Norms along an increasing grid by stepping T_{k+1} = exp(−Δt A) T_k, with a
/// fresh exponential every kReexponentiatePeriod steps. Probes are in H
/// coordinates.
std::vector<TrajectorySample> trajectory(const OperatorSystem &sys,
                                         std::span<const double> t_grid,
                                         std::span<const Vector> probes = {},
                                         unsigned workers = 0);

struct GramOptions
{
  double rel_tol = 1e-6;
  int max_halvings = 12;
  unsigned workers = 0;
};

/// G(t) = ∫₀ᵗ T̃_sᴴ T̃_s ds and its adjoint counterpart ∫₀ᵗ T̃_s T̃_sᴴ ds at every
/// point of an increasing grid, by composite Simpson with step ≤ h. The step
/// is halved until every λ_max changes by less than rel_tol relative.
struct GramSeries
{
  std::vector<double> t;
  std::vector<std::vector<Matrix>> primal;   // [t][block]
  std::vector<std::vector<Matrix>> adjoint;  // [t][block]
  std::vector<double> lambda_max_primal;
  std::vector<double> lambda_max_adjoint;
  BlockForm form;
  double h = 0.0;           // step of the accepted level
  int halvings = 0;
  double rel_change = 0.0;  // between the last two levels

  /// x̃ᴴ G(t_i) x̃ for x̃ in Euclidean coordinates.
  double quadratic_form(std::size_t i, const Vector &x_euclid) const;
  /// x̃ᴴ G*(t_i) x̃ for the adjoint semigroup.
  double quadratic_form_adjoint(std::size_t i, const Vector &x_euclid) const;
};

GramSeries gram_series(const OperatorSystem &sys, std::span<const double> t_grid, double h,
                       GramOptions opts = {});

struct GramCesaro
{
  double lambda_max = 0.0;  // sup_{‖x‖=1} ∫₀ᵗ ‖T_s x‖² ds
  double c = 0.0;           // lambda_max / t^{2α}
  double h = 0.0;
  int halvings = 0;
};

/// Requires t > 0 and h ≤ t/4.
GramCesaro gram_cesaro(const OperatorSystem &sys, double t, double alpha, double h,
                       GramOptions opts = {});

struct CesaroRow
{
  double t = 0.0;
  double lambda_max = 0.0;          // primal
  double lambda_max_adjoint = 0.0;
  double c_primal_t = 0.0;
  double c_adjoint_t = 0.0;
};

struct CesaroEstimate
{
  double alpha = 1.0;
  double c_primal = 0.0;
  double c_adjoint = 0.0;
  std::vector<CesaroRow> rows;
  double h = 0.0;
  double rel_change = 0.0;  // quadrature budget: last halving change

  double c_max() const noexcept { return c_primal > c_adjoint ? c_primal : c_adjoint; }
};

/// Default initial Simpson step: min(t_min/4, 1/(4 max(1, ‖Ã‖₂))).
double default_gram_step(double t_min, double norm2);

/// Grid must be increasing with every t > 1.
CesaroEstimate cesaro_constants(const OperatorSystem &sys, double alpha,
                                std::span<const double> t_grid, GramOptions opts = {});
CesaroEstimate cesaro_from_series(const GramSeries &series, double alpha);

}  // namespace kreiss
