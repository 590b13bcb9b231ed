// SPDX-License-Identifier: Apache-2.0

#include "kreiss/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kreiss/expm.hpp"
#include "kreiss/grid.hpp"
#include "kreiss/linalg.hpp"
#include "kreiss/parallel.hpp"
#include "kreiss/quadrature.hpp"

namespace kreiss
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCesaroSlack = 1.02;
constexpr double kBoundSlack = 1.05;
constexpr double kExponentCeiling = 1.1;
constexpr std::size_t kMaxTimePanels = std::size_t{1} << 22;

std::vector<double> sorted_unique(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> checked_times(std::span<const double> t_values, double lower,
                                  const char *what)
{
  if (t_values.empty())
    throw ConfigError(std::string(what) + " needs at least one t value");
  for (double t : t_values)
    if (!(t > lower) || !std::isfinite(t))
      throw ConfigError(std::string(what) + " needs every t > " + std::to_string(lower) +
                        " (got " + std::to_string(t) + ")");
  return sorted_unique({t_values.begin(), t_values.end()});
}

// ∫₀^S e^{−2rs} ‖T_s x‖² ds by composite Simpson with panel doubling.
struct TimeIntegral
{
  double value = 0.0;
  double change = 0.0;
  std::size_t panels = 0;
};

TimeIntegral weighted_time_integral(const BlockForm &form, const Vector &xe, double r,
                                    double horizon, double tol)
{
  std::size_t panels = std::max<std::size_t>(
      64, 2 * static_cast<std::size_t>(std::ceil(2.0 * horizon * (form.norm2 + 2.0 * r))));
  double previous = std::numeric_limits<double>::quiet_NaN();
  while (panels <= kMaxTimePanels)
  {
    const double h = horizon / double(panels);
    double fine = 0.0;
    double coarse = 0.0;
    for (std::size_t b = 0; b < form.blocks.size(); ++b)
    {
      const Matrix &op = form.blocks[b].op;
      const Vector x0 = form.restrict(xe, b);
      const Matrix step = expm(-h * op);
      Vector v = x0;
      for (std::size_t k = 0; k <= panels; ++k)
      {
        if (k > 0)
          v = (k % kReexponentiatePeriod == 0) ? Vector(expm(-double(k) * h * op) * x0)
                                               : Vector(step * v);
        const double f = std::exp(-2.0 * r * double(k) * h) * v.squaredNorm();
        fine += quad::simpson_weight(k, panels, h) * f;
        if (k % 2 == 0)
          coarse += quad::simpson_weight(k / 2, panels / 2, 2.0 * h) * f;
      }
    }
    const double change = std::abs(fine - coarse);
    if (change <= 0.1 * tol * std::abs(fine) || (std::isfinite(previous) && fine == previous))
      return {fine, change, panels};
    previous = fine;
    panels *= 2;
  }
  throw NumericalFailure("time-side Simpson rule exceeded its panel cap");
}

double sup_norm_squared(const Propagator &prop, double horizon)
{
  double best = 1.0;
  for (double s : linspace(0.0, horizon, 65))
    best = std::max(best, std::pow(prop.norm(s), 2));
  return best;
}

std::string direction_suffix(const std::string &check, const std::string &name)
{
  return check + "[" + name + "]";
}

}  // namespace

int dyadic_count(double t)
{
  if (!(t >= 1.0) || !std::isfinite(t))
    throw ConfigError("dyadic count needs t >= 1");
  int l = static_cast<int>(std::floor(std::log2(t)));
  while (std::ldexp(1.0, l + 1) <= t)
    ++l;
  while (std::ldexp(1.0, l) > t)
    --l;
  return l;
}

std::vector<std::pair<double, double>> dyadic_windows(double t)
{
  std::vector<std::pair<double, double>> out;
  const int levels = dyadic_count(t);
  for (int l = 0; l < levels; ++l)
    out.emplace_back(t - std::ldexp(1.0, l + 1), t - std::ldexp(1.0, l));
  return out;
}

std::vector<double> dyadic_cesaro_grid(double t_max, std::span<const double> extra)
{
  if (!(t_max > 1.0))
    throw ConfigError("cesaro grid needs t_max > 1");
  std::vector<double> grid;
  const int top = std::max(1, static_cast<int>(std::ceil(std::log2(t_max))));
  for (int k = 1; k <= top; ++k)
    grid.push_back(std::ldexp(1.0, k));
  grid.push_back(t_max);
  grid.insert(grid.end(), extra.begin(), extra.end());
  return sorted_unique(std::move(grid));
}

std::vector<Vector> default_probes(Index dim)
{
  std::vector<Vector> out;
  out.push_back(Vector::Ones(dim));
  out.push_back(Vector::Unit(dim, 0));
  Vector phase(dim);
  for (Index i = 0; i < dim; ++i)
    phase[i] = std::polar(1.0, 2.0 * std::numbers::pi * double(i) / double(dim + 1));
  out.push_back(phase);
  if (dim == 1)
    out.resize(1);
  return out;
}

PlancherelResult plancherel_sides(const OperatorSystem &sys, double r, const Vector &x,
                                  double tol)
{
  if (!(tol > 0.0) || !(tol < 1.0))
    throw ConfigError("plancherel tolerance must lie in (0, 1)");
  const ResolventEvaluator eval(sys);
  const auto line = line_integral_L2(eval, r, x, tol);

  const Propagator prop(sys);
  const Vector xe = sys.to_euclidean(x);
  const double log_inv_tol = std::log(1.0 / tol);
  // Horizon from a first guess, then refined once with the observed growth.
  const double s0 = log_inv_tol / (2.0 * r);
  const double s1 = (log_inv_tol + std::log(1.0 + sup_norm_squared(prop, s0))) / (2.0 * r);
  const double sup = sup_norm_squared(prop, s1);
  const double horizon = (log_inv_tol + std::log(1.0 + sup)) / (2.0 * r);

  const auto time = weighted_time_integral(prop.form(), xe, r, horizon, tol);

  PlancherelResult out;
  out.resolvent_side = line.value;
  out.time_side = kTwoPi * time.value;
  out.horizon = horizon;
  out.resolvent_budget = line.error_budget();
  // Tail e^{−2rS}·sup‖T̃‖²·‖x‖²/(2r) with e^{−2rS} = tol/(1 + sup).
  out.time_budget =
      kTwoPi * (time.change + tol * sup / (1.0 + sup) * xe.squaredNorm() / (2.0 * r));
  const double scale = std::max(std::abs(out.resolvent_side), std::abs(out.time_side));
  out.relative_mismatch =
      scale > 0.0 ? std::abs(out.resolvent_side - out.time_side) / scale : 0.0;
  return out;
}

CheckEntry plancherel_check(const OperatorSystem &sys, double r, const Vector &x, double tol)
{
  const auto res = plancherel_sides(sys, r, x, tol);
  auto entry = make_check("plancherel",
                          "|int |R(-r+ib,A)x|^2 db - 2 pi int_0^inf e^(-2rs) |T_s x|^2 ds| "
                          "<= 10 tol (relative)",
                          {res.relative_mismatch}, {10.0 * tol}, 1.0);
  entry.detail("r", r)
      .detail("tol", tol)
      .detail("resolvent_side", res.resolvent_side)
      .detail("time_side", res.time_side)
      .detail("resolvent_budget", res.resolvent_budget)
      .detail("time_budget", res.time_budget)
      .detail("horizon", res.horizon);
  return entry;
}

CheckEntry resolvent_to_cesaro_check(const OperatorSystem &sys, double alpha,
                                     std::span<const double> t_values,
                                     std::span<const Vector> probes, CheckOptions opts)
{
  if (!(alpha > 0.0))
    throw ConfigError("alpha must be positive");
  const auto times = checked_times(t_values, 1.0, "resolvent_to_cesaro_check");
  std::vector<Vector> vectors(probes.begin(), probes.end());
  if (vectors.empty())
    vectors = default_probes(sys.dim());
  for (const auto &x : vectors)
    if (x.size() != sys.dim() || !(sys.norm_h(x) > 0.0))
      throw ConfigError("trial vectors must be nonzero and match the dimension");

  const ResolventEvaluator eval(sys);
  const double h = default_gram_step(times.front(), eval.norm2());
  const auto gram = gram_series(sys, times, h, opts.gram);

  const std::size_t nx = vectors.size();
  std::vector<double> integrals(times.size() * nx);
  parallel_for(integrals.size(), opts.workers,
               [&](std::size_t k)
               {
                 integrals[k] =
                     line_integral_L2(eval, 1.0 / times[k / nx], vectors[k % nx], opts.line_tol)
                         .value;
               });

  const double factor = std::exp(2.0) / kTwoPi;
  std::vector<double> left, right;
  double c_prime = 0.0;
  double k_obs = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j)
  {
    const double t = times[j];
    const double r = 1.0 / t;
    for (std::size_t i = 0; i < nx; ++i)
    {
      const Vector xe = sys.to_euclidean(vectors[i]);
      const double xn2 = xe.squaredNorm();
      const double cesaro = gram.quadratic_form(j, xe);
      const double integral = integrals[j * nx + i];
      left.push_back(cesaro);
      right.push_back(factor * integral);
      c_prime = std::max(c_prime, cesaro / (std::pow(t, 2.0 * alpha) * xn2));
      k_obs = std::max(k_obs, integral * std::pow(r, 2.0 * alpha) /
                                  (std::pow(1.0 + std::pow(r, alpha), 2) * xn2));
    }
  }
  left.push_back(c_prime);
  right.push_back(4.0 * std::exp(2.0) * k_obs);

  auto entry = make_check("resolvent_to_cesaro",
                          "int_0^t |T_s x|^2 ds <= (e^2/2pi) int |R(-1/t+ib,A)x|^2 db; "
                          "C' <= 4 e^2 K_obs",
                          std::move(left), std::move(right), kCesaroSlack);
  entry.detail("alpha", alpha)
      .detail("t_values", times)
      .detail("C_prime", c_prime)
      .detail("K_obs", k_obs)
      .detail("line_tol", opts.line_tol)
      .detail("gram_step", gram.h)
      .detail("gram_rel_change", gram.rel_change);
  return entry;
}

BoundCheck theorem_bound_check(const OperatorSystem &sys, double alpha,
                               std::span<const double> t_values, CheckOptions opts)
{
  if (alpha > 1.0)
    throw ConfigError("theorem_bound_check covers alpha in (0, 1]; use remark_alpha_check");
  if (!(alpha > 0.0))
    throw ConfigError("alpha must be positive");
  const auto times = checked_times(t_values, 2.0, "theorem_bound_check");
  const auto grid = dyadic_cesaro_grid(times.back(), times);

  BoundCheck out;
  out.cesaro = cesaro_constants(sys, alpha, grid, opts.gram);
  const double c_max = out.cesaro.c_max();
  const Propagator prop(sys);

  std::vector<double> bounds;
  std::vector<double> levels;
  for (double t : times)
  {
    const int l = dyadic_count(t);
    out.norms.push_back(prop.norm(t));
    bounds.push_back(2.0 * c_max * std::pow(t, alpha) / std::sqrt(double(l)));
    levels.push_back(double(l));
  }
  out.entry = make_check("theorem_bound", "|T_t| <= 2 C_max t^a / sqrt(floor(log2 t))",
                         out.norms, std::move(bounds), kBoundSlack);
  out.entry.detail("system", sys.label())
      .detail("alpha", alpha)
      .detail("t_values", times)
      .detail("dyadic_levels", levels)
      .detail("C_primal", out.cesaro.c_primal)
      .detail("C_adjoint", out.cesaro.c_adjoint)
      .detail("C_max", c_max)
      .detail("cesaro_grid", grid)
      .detail("gram_step", out.cesaro.h)
      .detail("gram_rel_change", out.cesaro.rel_change);
  return out;
}

BoundCheck remark_alpha_check(const OperatorSystem &sys, double alpha,
                              std::span<const double> t_values, CheckOptions opts)
{
  if (!(alpha > 1.0))
    throw ConfigError("remark_alpha_check covers alpha > 1; use theorem_bound_check");
  const auto times = checked_times(t_values, 3.0, "remark_alpha_check");
  const auto grid = dyadic_cesaro_grid(times.back(), times);

  BoundCheck out;
  out.cesaro = cesaro_constants(sys, alpha, grid, opts.gram);
  const double c_geo = std::sqrt(out.cesaro.c_adjoint * out.cesaro.c_primal);
  const Propagator prop(sys);

  std::vector<double> bounds;
  for (double t : times)
  {
    out.norms.push_back(prop.norm(t));
    bounds.push_back(std::pow(2.0, alpha) * c_geo * std::pow(t, alpha));
  }
  out.entry = make_check("remark_alpha", "|T_t| <= 2^a sqrt(C_adjoint C_primal) t^a",
                         out.norms, std::move(bounds), kBoundSlack);
  out.entry.detail("system", sys.label())
      .detail("alpha", alpha)
      .detail("t_values", times)
      .detail("C_primal", out.cesaro.c_primal)
      .detail("C_adjoint", out.cesaro.c_adjoint)
      .detail("cesaro_grid", grid)
      .detail("gram_step", out.cesaro.h)
      .detail("gram_rel_change", out.cesaro.rel_change);
  return out;
}

StripCheck strip_kreiss_check(const OperatorSystem &sys, double alpha,
                              std::span<const double> r_values,
                              std::span<const double> beta_values, ResolventOptions opts)
{
  if (!(alpha > 0.0))
    throw ConfigError("alpha must be positive");
  if (r_values.empty())
    throw ConfigError("strip check needs r values");
  for (double r : r_values)
    if (!(r > 0.0 && r < 1.0))
      throw ConfigError("strip check needs every r in (0, 1) (got " + std::to_string(r) + ")");

  StripCheck out;
  out.samples = sweep(sys, r_values, beta_values, opts);
  const std::string inequality = "sup_{-1 < Re l < 0} (-Re l)^a |R(l,A)| < inf";
  const bool all_defined = std::all_of(out.samples.begin(), out.samples.end(),
                                       [](const ResolventSample &s) { return s.defined(); });
  if (!all_defined)
  {
    out.entry = make_check("strip_kreiss", inequality, {kInf}, {kInf}, 1.0);
    out.entry.detail("alpha", alpha).detail("error", std::string("resolvent undefined on grid"));
    return out;
  }
  out.fit = kreiss_fit(out.samples, alpha);
  out.entry = make_check("strip_kreiss", inequality, {out.fit.c_est}, {kInf}, 1.0);
  out.entry.detail("system", sys.label())
      .detail("alpha", alpha)
      .detail("C_strip", out.fit.c_est)
      .detail("argmax_re", out.fit.argmax_lambda.real())
      .detail("argmax_im", out.fit.argmax_lambda.imag())
      .detail("r_min", out.fit.r_min)
      .detail("r_max", out.fit.r_max)
      .detail("beta_min", out.fit.beta_min)
      .detail("beta_max", out.fit.beta_max)
      .detail("samples", double(out.fit.samples))
      .detail("full_plane_condition_used", false);
  return out;
}

const char *to_string(GrowthModel model)
{
  switch (model)
  {
    case GrowthModel::Power:
      return "power";
    case GrowthModel::PowerLog:
      return "power-log";
    case GrowthModel::Shifted:
      return "shifted";
  }
  return "unknown";
}

GrowthModel growth_model_from_string(const std::string &name)
{
  if (name == "power")
    return GrowthModel::Power;
  if (name == "power-log")
    return GrowthModel::PowerLog;
  if (name == "shifted")
    return GrowthModel::Shifted;
  throw ConfigError("unknown growth model '" + name + "'");
}

GrowthFitResult growth_fit(std::span<const TrajectorySample> samples, GrowthModel model,
                           std::optional<double> omega)
{
  if (model == GrowthModel::Shifted && !omega)
    throw ConfigError("the shifted growth model needs a fixed omega");

  std::vector<double> u, y;
  double t_lo = std::numeric_limits<double>::infinity(), t_hi = 0.0;
  for (const auto &s : samples)
  {
    if (s.t < 2.0)
      continue;
    t_lo = std::min(t_lo, s.t);
    t_hi = std::max(t_hi, s.t);
    if (!(s.op_norm > 0.0) || !std::isfinite(s.op_norm))
      throw FitError("growth fit needs positive finite norms");
    double v = std::log(s.op_norm);
    if (omega)
      v -= *omega * s.t;
    if (model != GrowthModel::Power)
      v += 0.5 * std::log(std::log(s.t));
    u.push_back(std::log(s.t));
    y.push_back(v);
  }
  if (u.size() < 3)
    throw FitError("growth fit needs at least 3 samples with t >= 2");

  const double n = double(u.size());
  double u_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
  {
    u_mean += u[i];
    y_mean += y[i];
  }
  u_mean /= n;
  y_mean /= n;
  double suu = 0.0, suy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
  {
    suu += (u[i] - u_mean) * (u[i] - u_mean);
    suy += (u[i] - u_mean) * (y[i] - y_mean);
  }
  if (!(suu > 1e-14 * std::max(1.0, u_mean * u_mean)))
    throw FitError("growth fit design matrix is degenerate (all t equal)");

  GrowthFitResult fit;
  fit.model = model;
  fit.omega = omega;
  fit.a = suy / suu;
  const double log_c = y_mean - fit.a * u_mean;
  fit.c = std::exp(log_c);
  double ss = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
  {
    const double res = y[i] - (log_c + fit.a * u[i]);
    ss += res * res;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.t_min = t_lo;
  fit.t_max = t_hi;
  fit.samples = u.size();
  return fit;
}

WaveDemoResult wave_proposition_demo(const WaveTruncationParams &params,
                                     const WaveDemoOptions &opts)
{
  if (!(opts.t_max >= 8.0) || !std::isfinite(opts.t_max))
    throw ConfigError("wave demo needs t_max >= 8");
  const OperatorSystem base = build_wave(params);
  constexpr double kShift = 0.5;

  std::vector<double> strip_r = opts.strip_r;
  if (strip_r.empty())
    strip_r = logspace(1e-2, 0.99, 20);
  std::vector<double> theorem_t = opts.theorem_t;
  if (theorem_t.empty())
  {
    for (double t = 4.0; t < opts.t_max; t *= 2.0)
      theorem_t.push_back(t);
    theorem_t.push_back(opts.t_max);
  }
  std::vector<double> fit_t = opts.fit_t;
  if (fit_t.empty())
  {
    for (double t = 2.0; t <= opts.t_max; t += 0.5)
      fit_t.push_back(t);
    if (fit_t.back() < opts.t_max)
      fit_t.push_back(opts.t_max);
  }

  WaveDemoResult out;
  out.directions.push_back({"forward", shifted(base, kShift), {}, {}, {}, {}, {}});
  out.directions.push_back({"backward", shifted(reversed(base), kShift), {}, {}, {}, {}, {}});

  for (auto &dir : out.directions)
  {
    try
    {
      std::vector<double> beta = opts.strip_beta;
      if (beta.empty())
        beta = default_beta_grid(block_form(dir.sys).norm2).values();
      auto strip = strip_kreiss_check(dir.sys, 1.0, strip_r, beta, opts.resolvent);
      strip.entry.check = direction_suffix(strip.entry.check, dir.name);
      out.report.add(std::move(strip.entry));
      dir.samples = std::move(strip.samples);
      if (strip.fit.samples > 0)
        dir.strip = strip.fit;
    }
    catch (const Error &e)
    {
      out.report.add(failed_check(direction_suffix("strip_kreiss", dir.name), "strip Kreiss", e.what()));
    }

    try
    {
      auto bound = theorem_bound_check(dir.sys, 1.0, theorem_t, opts.check);
      bound.entry.check = direction_suffix(bound.entry.check, dir.name);
      out.report.add(std::move(bound.entry));
      dir.cesaro = std::move(bound.cesaro);
    }
    catch (const Error &e)
    {
      out.report.add(failed_check(direction_suffix("theorem_bound", dir.name), "theorem bound", e.what()));
    }

    try
    {
      dir.trajectory = trajectory(dir.sys, fit_t, {}, opts.check.workers);
      const auto power = growth_fit(dir.trajectory, GrowthModel::Power);
      const auto power_log = growth_fit(dir.trajectory, GrowthModel::PowerLog);
      dir.fits = {power, power_log};
      auto entry = make_check(direction_suffix("growth_exponent", dir.name),
                              "power-model exponent of e^(-t/2)|T_(+-t)| over [2, t_max] <= 1.1",
                              {power.a}, {kExponentCeiling}, 1.0);
      entry.detail("power_c", power.c)
          .detail("power_a", power.a)
          .detail("power_rms", power.rms_residual)
          .detail("power_log_c", power_log.c)
          .detail("power_log_a", power_log.a)
          .detail("power_log_rms", power_log.rms_residual)
          .detail("power_log_residual_lower", power_log.rms_residual < power.rms_residual)
          .detail("t_min", power.t_min)
          .detail("t_max", power.t_max);
      out.report.add(std::move(entry));
    }
    catch (const Error &e)
    {
      out.report.add(failed_check(direction_suffix("growth_exponent", dir.name), "growth fit", e.what()));
    }
  }
  return out;
}

}  // namespace kreiss
