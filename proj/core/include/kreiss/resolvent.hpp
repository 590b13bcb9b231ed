// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kreiss/linalg.hpp"
#include "kreiss/operators.hpp"
#include "kreiss/report.hpp"

namespace kreiss
{

/// σ_min(λI − Ã) and ‖R(λ, A)‖_H = 1/σ_min. An undefined point (λ on the
/// spectrum) carries sigma_min = 0 and norm = +inf.
struct ResolventSample
{
  Complex lambda;
  double sigma_min = 0.0;
  double norm = 0.0;

  bool defined() const noexcept;
};

struct ResolventOptions
{
  linalg::SigmaMinMethod method = linalg::SigmaMinMethod::Auto;
  linalg::InverseIterationOptions inverse_iteration = {};
  unsigned workers = 0;
};

/// Reusable evaluator for one system: holds the block splitting of Ã and, for
/// blocks solved by inverse iteration, their complex Schur factors.
class ResolventEvaluator
{
public:
  explicit ResolventEvaluator(const OperatorSystem &sys, ResolventOptions opts = {});

  /// Throws ResolventUndefined when λI − Ã is numerically singular.
  ResolventSample sample(Complex lambda) const;

  /// (λI − Ã)⁻¹ y for a Euclidean-coordinate vector y.
  Vector solve(Complex lambda, const Vector &y) const;

  /// Minimum over eigenvalues μ of Ã of |Re μ + r|; zero means the vertical
  /// line Re λ = −r passes through the spectrum.
  double contour_gap(double r) const;

  /// Eigenvalue on the line Re λ = −r, if any (distance ≤ tolerance).
  bool contour_hits_spectrum(double r, Complex *hit = nullptr) const;

  const BlockForm &form() const noexcept { return form_; }
  double norm2() const noexcept { return form_.norm2; }
  const OperatorSystem &system() const noexcept { return sys_; }

private:
  struct BlockCache
  {
    bool use_schur = false;
    Matrix schur_t;
    Matrix schur_u;
    Vector eigenvalues;
  };

  OperatorSystem sys_;
  ResolventOptions opts_;
  BlockForm form_;
  std::vector<BlockCache> cache_;
};

ResolventSample resolvent_norm(const OperatorSystem &sys, Complex lambda,
                               ResolventOptions opts = {});

/// One sample per (r, β) at λ = −r + iβ, r outer and β inner. Singular
/// points are flagged (norm = +inf) rather than aborting the sweep.
std::vector<ResolventSample> sweep(const OperatorSystem &sys, std::span<const double> r_values,
                                   std::span<const double> beta_values,
                                   ResolventOptions opts = {});

struct KreissFit
{
  double alpha = 1.0;
  double c_est = 0.0;
  Complex argmax_lambda;
  std::size_t argmax_index = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  std::size_t samples = 0;
};

/// C_est = max (−Re λ)^α ‖R(λ)‖ over the samples; ties go to the earliest
/// sample. Throws FitError on empty input, undefined samples or Re λ ≥ 0.
KreissFit kreiss_fit(std::span<const ResolventSample> samples, double alpha);

struct LineIntegral
{
  double value = 0.0;
  double quadrature_error = 0.0;  // requested absolute tolerance on [−B, B]
  double tail_bound = 0.0;        // 2‖x‖²/(B − ‖Ã‖₂ − r)
  double cutoff = 0.0;            // B
  std::size_t evaluations = 0;

  double error_budget() const noexcept { return quadrature_error + tail_bound; }
};

/// ∫_ℝ ‖R(−r + iβ, A) x‖²_H dβ with x in H coordinates.
LineIntegral line_integral_L2(const ResolventEvaluator &eval, double r, const Vector &x,
                              double tol);
LineIntegral line_integral_L2(const OperatorSystem &sys, double r, const Vector &x, double tol);

/// Observed constant K in ∫‖R(−r + i·, A)x‖² ≤ K (1 + r^α)² / r^{2α} ‖x‖²,
/// taken over r_values × vectors for both the system and its adjoint.
struct Lemma1Term
{
  bool adjoint = false;
  double r = 0.0;
  double x_norm2 = 0.0;  // ‖x‖²_H
  double integral = 0.0;
  double integral_refined = 0.0;
  double error_budget = 0.0;
};

struct Lemma1Result
{
  std::vector<Lemma1Term> terms;
  double k_obs = 0.0;          // at tol
  double k_obs_refined = 0.0;  // at tol / 2
  double k_primal = 0.0;
  double k_adjoint = 0.0;
  double max_error_budget = 0.0;
};

Lemma1Result lemma1_constants(const OperatorSystem &sys, double alpha,
                              std::span<const double> r_values, std::span<const Vector> vectors,
                              double tol, unsigned workers = 0);

/// Passes when K_obs is finite and changes by less than a factor 2 when the
/// quadrature tolerance is halved.
CheckEntry lemma1_check(const OperatorSystem &sys, double alpha, double c_kreiss,
                        std::span<const double> r_values, std::span<const Vector> vectors,
                        double tol = 1e-6, unsigned workers = 0);

}  // namespace kreiss
