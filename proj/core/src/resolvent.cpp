// SPDX-License-Identifier: Apache-2.0

#include "kreiss/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kreiss/parallel.hpp"
#include "kreiss/quadrature.hpp"

namespace kreiss
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest number of equal panels laid over the central part of the contour.
constexpr std::size_t kMaxCorePanels = std::size_t{1} << 16;

}  // namespace

bool ResolventSample::defined() const noexcept
{
  return std::isfinite(norm);
}

ResolventEvaluator::ResolventEvaluator(const OperatorSystem &sys, ResolventOptions opts)
  : sys_(sys), opts_(opts), form_(block_form(sys))
{
  cache_.resize(form_.blocks.size());
  for (std::size_t b = 0; b < form_.blocks.size(); ++b)
  {
    const Matrix &op = form_.blocks[b].op;
    auto &c = cache_[b];
    const Index n = op.rows();
    c.use_schur = opts_.method == linalg::SigmaMinMethod::InverseIteration ||
                  (opts_.method == linalg::SigmaMinMethod::Auto && n > linalg::kSvdMaxDim);
    if (n == 1)
    {
      c.schur_t = op;
      c.schur_u = Matrix::Identity(1, 1);
    }
    else
    {
      Eigen::ComplexSchur<Matrix> schur(op);
      if (schur.info() != Eigen::Success)
        throw NumericalFailure("complex Schur decomposition did not converge");
      c.schur_t = schur.matrixT().triangularView<Eigen::Upper>();
      c.schur_u = schur.matrixU();
    }
    c.eigenvalues = c.schur_t.diagonal();
  }
}

ResolventSample ResolventEvaluator::sample(Complex lambda) const
{
  double smin = kInf;
  for (std::size_t b = 0; b < form_.blocks.size(); ++b)
  {
    const auto &c = cache_[b];
    double s;
    if (c.use_schur)
    {
      Matrix shifted = -c.schur_t;
      shifted.diagonal().array() += lambda;
      s = linalg::sigma_min_triangular(shifted, opts_.inverse_iteration);
    }
    else
    {
      Matrix shifted = -form_.blocks[b].op;
      shifted.diagonal().array() += lambda;
      s = linalg::sigma_min_svd(shifted);
    }
    smin = std::min(smin, s);
  }
  const double scale = std::abs(lambda) + form_.norm2;
  if (!(smin > linalg::singular_threshold(form_.dim, scale)))
    throw ResolventUndefined(lambda);
  return {lambda, smin, 1.0 / smin};
}

Vector ResolventEvaluator::solve(Complex lambda, const Vector &y) const
{
  if (y.size() != form_.dim)
    throw ConfigError("vector length does not match system dimension");
  Vector out(form_.dim);
  for (std::size_t b = 0; b < form_.blocks.size(); ++b)
  {
    const auto &c = cache_[b];
    const auto &idx = form_.blocks[b].indices;
    Matrix shifted = -c.schur_t;
    shifted.diagonal().array() += lambda;
    const Vector rhs = c.schur_u.adjoint() * form_.restrict(y, b);
    const Vector z = c.schur_u * shifted.triangularView<Eigen::Upper>().solve(rhs);
    for (std::size_t k = 0; k < idx.size(); ++k)
      out[idx[k]] = z[static_cast<Index>(k)];
  }
  if (!out.allFinite())
    throw ResolventUndefined(lambda);
  return out;
}

double ResolventEvaluator::contour_gap(double r) const
{
  double gap = kInf;
  for (const auto &c : cache_)
    for (Index i = 0; i < c.eigenvalues.size(); ++i)
      gap = std::min(gap, std::abs(c.eigenvalues[i].real() + r));
  return gap;
}

bool ResolventEvaluator::contour_hits_spectrum(double r, Complex *hit) const
{
  const double tol = 1e-10 * (1.0 + form_.norm2);
  for (const auto &c : cache_)
    for (Index i = 0; i < c.eigenvalues.size(); ++i)
      if (std::abs(c.eigenvalues[i].real() + r) <= tol)
      {
        if (hit)
          *hit = Complex(-r, c.eigenvalues[i].imag());
        return true;
      }
  return false;
}

ResolventSample resolvent_norm(const OperatorSystem &sys, Complex lambda, ResolventOptions opts)
{
  return ResolventEvaluator(sys, opts).sample(lambda);
}

std::vector<ResolventSample> sweep(const OperatorSystem &sys, std::span<const double> r_values,
                                   std::span<const double> beta_values, ResolventOptions opts)
{
  if (r_values.empty() || beta_values.empty())
    throw ConfigError("sweep needs nonempty r and beta grids");
  for (double r : r_values)
    if (!(r > 0.0) || !std::isfinite(r))
      throw ConfigError("sweep r values must be positive and finite");
  const ResolventEvaluator eval(sys, opts);
  const std::size_t nb = beta_values.size();
  std::vector<ResolventSample> out(r_values.size() * nb);
  parallel_for(out.size(), opts.workers,
               [&](std::size_t k)
               {
                 const Complex lambda(-r_values[k / nb], beta_values[k % nb]);
                 try
                 {
                   out[k] = eval.sample(lambda);
                 }
                 catch (const ResolventUndefined &)
                 {
                   out[k] = {lambda, 0.0, kInf};
                 }
               });
  return out;
}

KreissFit kreiss_fit(std::span<const ResolventSample> samples, double alpha)
{
  if (!(alpha > 0.0))
    throw ConfigError("alpha must be positive");
  if (samples.empty())
    throw FitError("kreiss fit needs at least one sample");
  KreissFit fit;
  fit.alpha = alpha;
  fit.samples = samples.size();
  fit.c_est = -kInf;
  fit.r_min = fit.beta_min = kInf;
  fit.r_max = fit.beta_max = -kInf;
  for (std::size_t k = 0; k < samples.size(); ++k)
  {
    const auto &s = samples[k];
    if (!s.defined())
      throw FitError("kreiss fit input contains an undefined resolvent sample");
    const double r = -s.lambda.real();
    if (!(r > 0.0))
      throw FitError("kreiss fit needs samples with Re(lambda) < 0");
    const double value = std::pow(r, alpha) * s.norm;
    if (value > fit.c_est)
    {
      fit.c_est = value;
      fit.argmax_lambda = s.lambda;
      fit.argmax_index = k;
    }
    fit.r_min = std::min(fit.r_min, r);
    fit.r_max = std::max(fit.r_max, r);
    fit.beta_min = std::min(fit.beta_min, s.lambda.imag());
    fit.beta_max = std::max(fit.beta_max, s.lambda.imag());
  }
  return fit;
}

LineIntegral line_integral_L2(const ResolventEvaluator &eval, double r, const Vector &x,
                              double tol)
{
  if (!(tol > 0.0))
    throw ConfigError("line integral tolerance must be positive");
  if (!(r > 0.0) || !std::isfinite(r))
    throw ConfigError("line integral needs r > 0");
  const Vector xe = eval.system().to_euclidean(x);
  const double xn2 = xe.squaredNorm();
  if (!(xn2 > 0.0))
    throw ConfigError("line integral needs a nonzero vector");
  Complex hit;
  if (eval.contour_hits_spectrum(r, &hit))
    throw ResolventUndefined(hit, "contour Re(lambda) = -r meets the spectrum");

  const double norm2 = eval.norm2();
  LineIntegral out;
  out.cutoff = norm2 + r + std::max(10.0, 2.0 * xn2 / tol);
  out.tail_bound = 2.0 * xn2 / (out.cutoff - norm2 - r);
  out.quadrature_error = tol;

  // Equal panels of width ≤ r/2 where the spectrum lives (the integrand
  // varies on the scale of the distance to the spectrum, which is ≥ r),
  // geometric panels out to the cutoff where it decays like 1/β².
  const double core = std::min(out.cutoff, norm2 + r + 1.0);
  const double width = 0.5 * std::min(r, 1.0);
  std::size_t half_panels = static_cast<std::size_t>(std::ceil(core / width));
  half_panels = std::clamp<std::size_t>(half_panels, 2, kMaxCorePanels / 2);

  std::vector<double> positive;
  for (std::size_t k = 1; k <= half_panels; ++k)
    positive.push_back(core * double(k) / double(half_panels));
  for (double edge = 2.0 * core; edge < out.cutoff; edge *= 2.0)
    positive.push_back(edge);
  if (positive.back() < out.cutoff)
    positive.push_back(out.cutoff);

  std::vector<double> breaks;
  breaks.reserve(2 * positive.size() + 1);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it)
    breaks.push_back(-*it);
  breaks.push_back(0.0);
  breaks.insert(breaks.end(), positive.begin(), positive.end());

  const auto integrand = [&](double beta)
  { return eval.solve(Complex(-r, beta), xe).squaredNorm(); };
  const auto res = quad::adaptive_simpson(integrand, breaks, tol);
  out.value = res.value;
  out.evaluations = res.evaluations;
  return out;
}

LineIntegral line_integral_L2(const OperatorSystem &sys, double r, const Vector &x, double tol)
{
  return line_integral_L2(ResolventEvaluator(sys), r, x, tol);
}

Lemma1Result lemma1_constants(const OperatorSystem &sys, double alpha,
                              std::span<const double> r_values, std::span<const Vector> vectors,
                              double tol, unsigned workers)
{
  if (!(alpha > 0.0))
    throw ConfigError("alpha must be positive");
  if (r_values.empty() || vectors.empty())
    throw ConfigError("lemma1_check needs r values and trial vectors");
  for (const auto &x : vectors)
    if (x.size() != sys.dim() || !(sys.norm_h(x) > 0.0))
      throw ConfigError("lemma1 trial vectors must be nonzero and match the dimension");

  const ResolventEvaluator primal(sys);
  const ResolventEvaluator dual(adjoint(sys));

  Lemma1Result out;
  for (int side = 0; side < 2; ++side)
    for (double r : r_values)
      for (const auto &x : vectors)
        out.terms.push_back({side == 1, r, sys.norm_h(x) * sys.norm_h(x), 0.0, 0.0, 0.0});

  parallel_for(out.terms.size(), workers,
               [&](std::size_t k)
               {
                 auto &term = out.terms[k];
                 const auto &eval = term.adjoint ? dual : primal;
                 const auto &x = vectors[k % vectors.size()];
                 const auto coarse = line_integral_L2(eval, term.r, x, tol);
                 const auto fine = line_integral_L2(eval, term.r, x, 0.5 * tol);
                 term.integral = coarse.value;
                 term.integral_refined = fine.value;
                 term.error_budget = coarse.error_budget();
               });

  for (const auto &term : out.terms)
  {
    const double scale =
        std::pow(term.r, 2.0 * alpha) / (std::pow(1.0 + std::pow(term.r, alpha), 2) * term.x_norm2);
    const double k = term.integral * scale;
    out.k_obs = std::max(out.k_obs, k);
    out.k_obs_refined = std::max(out.k_obs_refined, term.integral_refined * scale);
    (term.adjoint ? out.k_adjoint : out.k_primal) =
        std::max(term.adjoint ? out.k_adjoint : out.k_primal, k);
    out.max_error_budget = std::max(out.max_error_budget, term.error_budget);
  }
  return out;
}

CheckEntry lemma1_check(const OperatorSystem &sys, double alpha, double c_kreiss,
                        std::span<const double> r_values, std::span<const Vector> vectors,
                        double tol, unsigned workers)
{
  if (!(c_kreiss > 0.0))
    throw ConfigError("lemma1_check needs a positive Kreiss constant");
  const auto res = lemma1_constants(sys, alpha, r_values, vectors, tol, workers);

  // Stability: K_obs may not move by a factor 2 when the tolerance is halved.
  const double hi = std::max(res.k_obs, res.k_obs_refined);
  const double lo = std::min(res.k_obs, res.k_obs_refined);
  const double variation = lo > 0.0 ? hi / lo : kInf;
  auto entry = make_check("lemma1_l2_resolvent",
                          "int |R(-r+ib,A)x|^2 db <= K (1+r^a)^2 / r^(2a) |x|^2, same for A*; "
                          "K_obs finite and stable under tol/2",
                          {std::isfinite(res.k_obs) ? variation : kInf}, {2.0}, 1.0);

  // The same integrals against (1 + C/r^α)², the Kreiss-form bound.
  double kreiss_form = 0.0;
  for (const auto &term : res.terms)
  {
    const double bound = std::pow(1.0 + c_kreiss / std::pow(term.r, alpha), 2) * term.x_norm2;
    kreiss_form = std::max(kreiss_form, term.integral / bound);
  }
  entry.detail("alpha", alpha)
      .detail("K_obs", res.k_obs)
      .detail("K_obs_refined", res.k_obs_refined)
      .detail("K_primal", res.k_primal)
      .detail("K_adjoint", res.k_adjoint)
      .detail("C_kreiss", c_kreiss)
      .detail("K_kreiss_form", kreiss_form)
      .detail("tol", tol)
      .detail("error_budget", res.max_error_budget);
  return entry;
}

}  // namespace kreiss
