// SPDX-License-Identifier: Apache-2.0

#include "kreiss/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kreiss/expm.hpp"
#include "kreiss/linalg.hpp"
#include "kreiss/parallel.hpp"
#include "kreiss/quadrature.hpp"

namespace kreiss
{

namespace
{

void require_increasing(std::span<const double> grid, double lower, bool strict_lower,
                        const char *what)
{
  if (grid.empty())
    throw ConfigError(std::string(what) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    if (!std::isfinite(grid[i]))
      throw ConfigError(std::string(what) + " grid contains a non-finite value");
    if (strict_lower ? !(grid[i] > lower) : !(grid[i] >= lower))
      throw ConfigError(std::string(what) + " grid value " + std::to_string(grid[i]) +
                        (strict_lower ? " must exceed " : " must be at least ") +
                        std::to_string(lower));
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ConfigError(std::string(what) + " grid must be strictly increasing");
  }
}

// Simpson sums of TᴴT and TTᴴ for one block at two resolutions. The fine rule
// uses 2N panels per segment, the coarse rule N panels on the even nodes.
struct BlockGram
{
  std::vector<Matrix> primal_fine, adjoint_fine;
  std::vector<Matrix> primal_coarse, adjoint_coarse;
};

BlockGram integrate_block(const Matrix &op, std::span<const double> t_grid,
                          std::span<const std::size_t> coarse_panels)
{
  const Index m = op.rows();
  BlockGram out;
  Matrix gp_fine = Matrix::Zero(m, m), ga_fine = Matrix::Zero(m, m);
  Matrix gp_coarse = Matrix::Zero(m, m), ga_coarse = Matrix::Zero(m, m);
  Matrix prod_p(m, m), prod_a(m, m);

  double start = 0.0;
  for (std::size_t j = 0; j < t_grid.size(); ++j)
  {
    const double len = t_grid[j] - start;
    const std::size_t coarse_n = coarse_panels[j];
    const std::size_t fine_n = 2 * coarse_n;
    const double h = len / double(fine_n);
    const Matrix step = expm(-h * op);
    Matrix t_s = expm(-start * op);
    for (std::size_t k = 0; k <= fine_n; ++k)
    {
      if (k > 0)
        t_s = (k % kReexponentiatePeriod == 0) ? expm(-(start + double(k) * h) * op)
                                               : Matrix(step * t_s);
      prod_p.noalias() = t_s.adjoint() * t_s;
      prod_a.noalias() = t_s * t_s.adjoint();
      const double wf = quad::simpson_weight(k, fine_n, h);
      gp_fine += wf * prod_p;
      ga_fine += wf * prod_a;
      if (k % 2 == 0)
      {
        const double wc = quad::simpson_weight(k / 2, coarse_n, 2.0 * h);
        gp_coarse += wc * prod_p;
        ga_coarse += wc * prod_a;
      }
    }
    out.primal_fine.push_back(gp_fine);
    out.adjoint_fine.push_back(ga_fine);
    out.primal_coarse.push_back(gp_coarse);
    out.adjoint_coarse.push_back(ga_coarse);
    start = t_grid[j];
  }
  return out;
}

double block_lambda_max(const std::vector<Matrix> &blocks)
{
  double best = 0.0;
  for (const auto &g : blocks)
    best = std::max(best, linalg::lambda_max_hermitian(g));
  return best;
}

double block_quadratic(const BlockForm &form, const std::vector<Matrix> &blocks,
                       const Vector &x)
{
  if (x.size() != form.dim)
    throw ConfigError("vector length does not match system dimension");
  double sum = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b)
  {
    const Vector xb = form.restrict(x, b);
    sum += xb.dot(blocks[b] * xb).real();
  }
  return sum;
}

}  // namespace

Propagator::Propagator(const OperatorSystem &sys) : sys_(sys), form_(block_form(sys))
{
}

std::vector<Matrix> Propagator::euclidean_blocks(double t) const
{
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ConfigError("semigroup time must be finite and nonnegative; use reversed() for t < 0");
  std::vector<Matrix> out;
  out.reserve(form_.blocks.size());
  for (const auto &block : form_.blocks)
    out.push_back(expm(-t * block.op));
  return out;
}

Matrix Propagator::euclidean(double t) const
{
  const auto blocks = euclidean_blocks(t);
  return form_.assemble(blocks);
}

double Propagator::norm(double t) const
{
  double best = 0.0;
  for (const auto &e : euclidean_blocks(t))
    best = std::max(best, linalg::sigma_max(e));
  return best;
}

Matrix expm_semigroup(const OperatorSystem &sys, double t)
{
  Matrix e = Propagator(sys).euclidean(t);
  const RealVector d = sys.weight().array().sqrt();
  for (Index j = 0; j < e.cols(); ++j)
    for (Index i = 0; i < e.rows(); ++i)
      e(i, j) *= d[j] / d[i];
  return e;
}

double semigroup_norm(const OperatorSystem &sys, double t)
{
  return Propagator(sys).norm(t);
}

std::vector<TrajectorySample> trajectory(const OperatorSystem &sys,
                                         std::span<const double> t_grid,
                                         std::span<const Vector> probes, unsigned workers)
{
  require_increasing(t_grid, 0.0, false, "trajectory");
  std::vector<Vector> probes_e;
  for (const auto &x : probes)
    probes_e.push_back(sys.to_euclidean(x));

  const BlockForm form = block_form(sys);
  const std::size_t nt = t_grid.size();
  const std::size_t np = probes_e.size();
  // [block][t] operator norms and [block][t][probe] squared probe norms.
  std::vector<std::vector<double>> norms(form.blocks.size());
  std::vector<std::vector<double>> probe_sq(form.blocks.size());

  parallel_for(form.blocks.size(), workers,
               [&](std::size_t b)
               {
                 const Matrix &op = form.blocks[b].op;
                 std::vector<Vector> xb;
                 for (const auto &x : probes_e)
                   xb.push_back(form.restrict(x, b));
                 norms[b].resize(nt);
                 probe_sq[b].resize(nt * np);
                 Matrix t_s = expm(-t_grid[0] * op);
                 Matrix step;
                 double last_dt = -1.0;
                 for (std::size_t k = 0; k < nt; ++k)
                 {
                   if (k > 0)
                   {
                     if (k % kReexponentiatePeriod == 0)
                       t_s = expm(-t_grid[k] * op);
                     else
                     {
                       const double dt = t_grid[k] - t_grid[k - 1];
                       if (dt != last_dt)
                       {
                         step = expm(-dt * op);
                         last_dt = dt;
                       }
                       t_s = step * t_s;
                     }
                   }
                   norms[b][k] = linalg::sigma_max(t_s);
                   for (std::size_t p = 0; p < np; ++p)
                     probe_sq[b][k * np + p] = (t_s * xb[p]).squaredNorm();
                 }
               });

  std::vector<TrajectorySample> out(nt);
  for (std::size_t k = 0; k < nt; ++k)
  {
    out[k].t = t_grid[k];
    out[k].probe_norms.assign(np, 0.0);
    for (std::size_t b = 0; b < form.blocks.size(); ++b)
    {
      out[k].op_norm = std::max(out[k].op_norm, norms[b][k]);
      for (std::size_t p = 0; p < np; ++p)
        out[k].probe_norms[p] += probe_sq[b][k * np + p];
    }
    for (auto &v : out[k].probe_norms)
      v = std::sqrt(v);
  }
  return out;
}

double GramSeries::quadratic_form(std::size_t i, const Vector &x_euclid) const
{
  return block_quadratic(form, primal.at(i), x_euclid);
}

double GramSeries::quadratic_form_adjoint(std::size_t i, const Vector &x_euclid) const
{
  return block_quadratic(form, adjoint.at(i), x_euclid);
}

GramSeries gram_series(const OperatorSystem &sys, std::span<const double> t_grid, double h,
                       GramOptions opts)
{
  require_increasing(t_grid, 0.0, true, "gram");
  if (!(h > 0.0) || !std::isfinite(h))
    throw ConfigError("gram step must be positive");

  GramSeries series;
  series.form = block_form(sys);
  series.t.assign(t_grid.begin(), t_grid.end());
  const std::size_t nt = t_grid.size();
  const std::size_t nb = series.form.blocks.size();

  // Panels per segment at the initial step h; level ℓ uses 2^ℓ times as many.
  std::vector<std::size_t> base_panels(nt);
  double start = 0.0;
  for (std::size_t j = 0; j < nt; ++j)
  {
    const double len = t_grid[j] - start;
    base_panels[j] = 2 * std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / (2.0 * h))));
    start = t_grid[j];
  }

  std::vector<double> prev_p, prev_a;
  double rel_change = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= opts.max_halvings; ++level)
  {
    std::vector<std::size_t> coarse(nt);
    for (std::size_t j = 0; j < nt; ++j)
      coarse[j] = base_panels[j] << (level - 1);

    std::vector<BlockGram> blocks(nb);
    parallel_for(nb, opts.workers,
                 [&](std::size_t b)
                 { blocks[b] = integrate_block(series.form.blocks[b].op, t_grid, coarse); });

    std::vector<double> fine_p(nt), fine_a(nt), coarse_p(nt), coarse_a(nt);
    series.primal.assign(nt, std::vector<Matrix>(nb));
    series.adjoint.assign(nt, std::vector<Matrix>(nb));
    for (std::size_t j = 0; j < nt; ++j)
    {
      std::vector<Matrix> cp(nb), ca(nb);
      for (std::size_t b = 0; b < nb; ++b)
      {
        series.primal[j][b] = std::move(blocks[b].primal_fine[j]);
        series.adjoint[j][b] = std::move(blocks[b].adjoint_fine[j]);
        cp[b] = std::move(blocks[b].primal_coarse[j]);
        ca[b] = std::move(blocks[b].adjoint_coarse[j]);
      }
      fine_p[j] = block_lambda_max(series.primal[j]);
      fine_a[j] = block_lambda_max(series.adjoint[j]);
      coarse_p[j] = block_lambda_max(cp);
      coarse_a[j] = block_lambda_max(ca);
    }

    rel_change = 0.0;
    for (std::size_t j = 0; j < nt; ++j)
    {
      const auto rel = [](double a, double b)
      {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
      };
      rel_change = std::max({rel_change, rel(fine_p[j], coarse_p[j]), rel(fine_a[j], coarse_a[j])});
    }
    series.lambda_max_primal = std::move(fine_p);
    series.lambda_max_adjoint = std::move(fine_a);
    series.h = h * std::ldexp(1.0, -level);
    series.halvings = level;
    series.rel_change = rel_change;
    if (rel_change < opts.rel_tol)
      return series;
  }

  std::ostringstream msg;
  msg << "gram quadrature did not reach relative change " << opts.rel_tol << " within "
      << opts.max_halvings << " halvings (last change " << rel_change << ", step "
      << series.h << ", t_max " << t_grid.back() << ")";
  throw NumericalFailure(msg.str());
}

GramCesaro gram_cesaro(const OperatorSystem &sys, double t, double alpha, double h,
                       GramOptions opts)
{
  if (!(t > 0.0))
    throw ConfigError("gram_cesaro needs t > 0");
  if (!(alpha > 0.0))
    throw ConfigError("alpha must be positive");
  if (!(h > 0.0) || h > t / 4.0)
    throw ConfigError("gram_cesaro needs 0 < h <= t/4");
  const double grid[] = {t};
  const auto series = gram_series(sys, grid, h, opts);
  GramCesaro out;
  out.lambda_max = series.lambda_max_primal[0];
  out.c = out.lambda_max / std::pow(t, 2.0 * alpha);
  out.h = series.h;
  out.halvings = series.halvings;
  return out;
}

double default_gram_step(double t_min, double norm2)
{
  return std::min(t_min / 4.0, 1.0 / (4.0 * std::max(1.0, norm2)));
}

CesaroEstimate cesaro_from_series(const GramSeries &series, double alpha)
{
  CesaroEstimate est;
  est.alpha = alpha;
  est.h = series.h;
  est.rel_change = series.rel_change;
  for (std::size_t j = 0; j < series.t.size(); ++j)
  {
    CesaroRow row;
    row.t = series.t[j];
    row.lambda_max = series.lambda_max_primal[j];
    row.lambda_max_adjoint = series.lambda_max_adjoint[j];
    const double scale = std::pow(row.t, 2.0 * alpha);
    row.c_primal_t = row.lambda_max / scale;
    row.c_adjoint_t = row.lambda_max_adjoint / scale;
    est.c_primal = std::max(est.c_primal, row.c_primal_t);
    est.c_adjoint = std::max(est.c_adjoint, row.c_adjoint_t);
    est.rows.push_back(row);
  }
  return est;
}

CesaroEstimate cesaro_constants(const OperatorSystem &sys, double alpha,
                                std::span<const double> t_grid, GramOptions opts)
{
  if (!(alpha > 0.0))
    throw ConfigError("alpha must be positive");
  require_increasing(t_grid, 1.0, true, "cesaro");
  const BlockForm form = block_form(sys);
  const double h = default_gram_step(t_grid.front(), form.norm2);
  return cesaro_from_series(gram_series(sys, t_grid, h, opts), alpha);
}

}  // namespace kreiss
