// SPDX-License-Identifier: Apache-2.0

#include "cli/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "cli/config.hpp"
#include "kreiss/artifacts.hpp"
#include "kreiss/bounds.hpp"
#include "kreiss/grid.hpp"

namespace kreiss::cli
{

namespace fs = std::filesystem;

namespace
{

fs::path resolve_output_dir(const ExperimentConfig &cfg, const std::optional<fs::path> &over)
{
  if (over)
    return *over;
  if (const char *env = std::getenv(kOutputDirEnv); env && *env)
    return env;
  return cfg.output_dir;
}

void ensure_writable(const fs::path &dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ConfigError("output directory '" + dir.string() + "' cannot be created: " + ec.message());
  const fs::path probe = dir / ".kreiss-write-probe";
  {
    std::ofstream f(probe, std::ios::binary);
    if (!f)
      throw ConfigError("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

std::vector<double> r_values(const ExperimentConfig &cfg)
{
  return cfg.r_grid ? *cfg.r_grid : default_r_grid().values();
}

std::vector<double> beta_values(const ExperimentConfig &cfg, double norm2)
{
  return cfg.beta_grid ? *cfg.beta_grid : default_beta_grid(norm2).values();
}

std::string fmt(double v)
{
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

void print_entry(std::ostream &out, const CheckEntry &e)
{
  out << (e.pass ? "PASS " : "FAIL ") << e.check << "  margin=" << fmt(e.worst_margin)
      << " slack=" << fmt(e.slack) << "  " << e.inequality << '\n';
}

class Run
{
public:
  Run(const ExperimentConfig &cfg, fs::path dir, std::ostream &out)
      : cfg_(cfg), dir_(std::move(dir)), out_(out), sys_(build_operator(cfg.op))
  {
    probes_ = cfg.probes.empty() ? default_probes(sys_.dim()) : cfg.probes;
    ropts_.workers = cfg.workers;
    copts_.gram.rel_tol = cfg.gram_tol;
    copts_.gram.workers = cfg.workers;
    copts_.line_tol = cfg.quadrature_tol;
    copts_.workers = cfg.workers;
  }

  void execute()
  {
    for (Stage stage : cfg_.stages)
    {
      switch (stage)
      {
        case Stage::ResolventSweep:
          resolvent_sweep();
          break;
        case Stage::Kreiss:
          kreiss();
          break;
        case Stage::Cesaro:
          cesaro();
          break;
        case Stage::VerifyTheorem:
          verify_theorem();
          break;
        case Stage::VerifyIdentities:
          verify_identities();
          break;
        case Stage::FitGrowth:
          fit_growth();
          break;
        case Stage::WaveDemo:
          wave_demo();
          break;
      }
    }
  }

  void finish()
  {
    if (!fits_.empty())
      artifacts::write_fit_json(dir_ / "fit.json", fits_);
    artifacts::write_report_json(dir_ / "report.json", report_);
  }

  void add(CheckEntry entry)
  {
    print_entry(out_, entry);
    report_.add(std::move(entry));
  }

  const VerificationReport &report() const { return report_; }

private:
  const std::vector<ResolventSample> &samples()
  {
    if (samples_.empty())
    {
      const auto r = r_values(cfg_);
      const auto beta = beta_values(cfg_, block_form(sys_).norm2);
      samples_ = sweep(sys_, r, beta, ropts_);
    }
    return samples_;
  }

  void resolvent_sweep()
  {
    artifacts::write_resolvent_csv(dir_ / "resolvent.csv", samples());
    out_ << "wrote resolvent.csv (" << samples_.size() << " samples)\n";
  }

  void kreiss()
  {
    const KreissFit fit = kreiss_fit(samples(), cfg_.alpha);
    kreiss_c_ = fit.c_est;
    const double claim = cfg_.kreiss_constant.value_or(std::numeric_limits<double>::infinity());
    CheckEntry e = make_check("kreiss_constant", "sup (-Re l)^alpha ||R(l,A)|| <= C", {fit.c_est},
                              {claim}, 1.0);
    e.detail("alpha", cfg_.alpha)
        .detail("C_est", fit.c_est)
        .detail("argmax_re", fit.argmax_lambda.real())
        .detail("argmax_im", fit.argmax_lambda.imag())
        .detail("r_min", fit.r_min)
        .detail("r_max", fit.r_max)
        .detail("beta_min", fit.beta_min)
        .detail("beta_max", fit.beta_max)
        .detail("claimed", cfg_.kreiss_constant.has_value());
    add(std::move(e));
  }

  void cesaro()
  {
    const CesaroEstimate est = cesaro_constants(sys_, cfg_.alpha, cfg_.t_grid, copts_.gram);
    artifacts::write_cesaro_csv(dir_ / "cesaro.csv", est);
    cesaro_written_ = true;
    CheckEntry e = make_check("cesaro_constant", "sup_t t^(-2 alpha) lambda_max G(t) < inf",
                              {est.c_max()}, {std::numeric_limits<double>::infinity()}, 1.0);
    e.detail("C_primal", est.c_primal)
        .detail("C_adjoint", est.c_adjoint)
        .detail("h", est.h)
        .detail("quadrature_rel_change", est.rel_change);
    add(std::move(e));
  }

  void verify_theorem()
  {
    BoundCheck bc = cfg_.alpha <= 1.0
                        ? theorem_bound_check(sys_, cfg_.alpha, cfg_.t_grid, copts_)
                        : remark_alpha_check(sys_, cfg_.alpha, cfg_.t_grid, copts_);
    if (!cesaro_written_)
      artifacts::write_cesaro_csv(dir_ / "cesaro.csv", bc.cesaro);
    add(std::move(bc.entry));
  }

  double kreiss_constant_for_identities()
  {
    if (cfg_.kreiss_constant)
      return *cfg_.kreiss_constant;
    if (!kreiss_c_)
      kreiss_c_ = kreiss_fit(samples(), cfg_.alpha).c_est;
    return *kreiss_c_;
  }

  void verify_identities()
  {
    for (std::size_t i = 0; i < cfg_.identity_r.size(); ++i)
      for (std::size_t j = 0; j < probes_.size(); ++j)
      {
        CheckEntry e = plancherel_check(sys_, cfg_.identity_r[i], probes_[j], cfg_.quadrature_tol);
        e.check += "[r=" + artifacts::format_double(cfg_.identity_r[i]) +
                   ",probe=" + std::to_string(j) + "]";
        add(std::move(e));
      }
    add(lemma1_check(sys_, cfg_.alpha, kreiss_constant_for_identities(), cfg_.identity_r,
                     probes_, cfg_.quadrature_tol, cfg_.workers));
    add(resolvent_to_cesaro_check(sys_, cfg_.alpha, cfg_.t_grid, probes_, copts_));
  }

  void fit_growth()
  {
    const auto traj = trajectory(sys_, cfg_.t_grid, probes_, cfg_.workers);
    artifacts::write_trajectory_csv(dir_ / "trajectory.csv", traj);
    const GrowthFitResult fit = growth_fit(traj, cfg_.fit_model, cfg_.fit_omega);
    out_ << "fit " << to_string(fit.model) << ": c=" << fmt(fit.c) << " a=" << fmt(fit.a)
         << " rms=" << fmt(fit.rms_residual) << '\n';
    fits_.push_back({sys_.label(), fit});
  }

  void wave_demo()
  {
    WaveDemoOptions opts;
    opts.t_max = cfg_.wave_demo.t_max;
    opts.strip_r = cfg_.wave_demo.strip_r;
    opts.strip_beta = cfg_.wave_demo.strip_beta;
    opts.theorem_t = cfg_.wave_demo.theorem_t;
    opts.fit_t = cfg_.wave_demo.fit_t;
    opts.check = copts_;
    opts.resolvent = ropts_;
    WaveDemoResult res = wave_proposition_demo(cfg_.op.wave, opts);

    for (const WaveDirection &d : res.directions)
    {
      const std::string suffix = d.name == "forward" ? "" : "_" + d.name;
      if (!d.samples.empty())
        artifacts::write_resolvent_csv(dir_ / ("resolvent" + suffix + ".csv"), d.samples);
      if (d.cesaro)
        artifacts::write_cesaro_csv(dir_ / ("cesaro" + suffix + ".csv"), *d.cesaro);
      if (!d.trajectory.empty())
        artifacts::write_trajectory_csv(dir_ / ("trajectory" + suffix + ".csv"), d.trajectory);
      for (const GrowthFitResult &f : d.fits)
        fits_.push_back({d.name, f});
    }
    for (CheckEntry &e : res.report.checks)
      add(std::move(e));
  }

  const ExperimentConfig &cfg_;
  fs::path dir_;
  std::ostream &out_;
  OperatorSystem sys_;
  std::vector<Vector> probes_;
  ResolventOptions ropts_;
  CheckOptions copts_;
  std::vector<ResolventSample> samples_;
  std::optional<double> kreiss_c_;
  bool cesaro_written_ = false;
  std::vector<artifacts::LabelledFit> fits_;
  VerificationReport report_;
};

double cube_sum(const BlockForm &form)
{
  double s = 0.0;
  for (const auto &b : form.blocks)
  {
    const double n = static_cast<double>(b.indices.size());
    s += n * n * n;
  }
  return s;
}

std::string sci(double v)
{
  std::ostringstream s;
  s << std::scientific << std::setprecision(1) << v;
  return s.str();
}

}  // namespace

int run(const fs::path &config_path, const std::optional<fs::path> &out_override,
        std::ostream &out, std::ostream &err)
{
  ExperimentConfig cfg;
  fs::path dir;
  try
  {
    cfg = load_config(config_path);
    dir = resolve_output_dir(cfg, out_override);
    ensure_writable(dir);
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  std::optional<Run> job;
  try
  {
    job.emplace(cfg, dir, out);
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  int code = kExitPass;
  try
  {
    job->execute();
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  catch (const Error &e)
  {
    err << "numerical failure: " << e.what() << '\n';
    job->add(failed_check("numerical_failure", "stage completed", e.what()));
    code = kExitNumericalFailure;
  }
  job->finish();
  if (code == kExitPass && !job->report().all_pass())
    code = kExitVerificationFailed;
  out << "report: " << (dir / "report.json").string() << "  exit " << code << '\n';
  return code;
}

int describe(const fs::path &config_path, std::ostream &out, std::ostream &err)
{
  try
  {
    const ExperimentConfig cfg = load_config(config_path);
    const OperatorSystem sys = build_operator(cfg.op);
    const BlockForm form = block_form(sys);
    const double n3 = cube_sum(form);

    out << "operator: " << cfg.op.kind << " (" << sys.label() << ")\n";
    out << "dimension: " << sys.dim() << '\n';
    out << "blocks: " << form.blocks.size() << '\n';
    out << "norm2: " << fmt(form.norm2) << '\n';
    out << "alpha: " << fmt(cfg.alpha) << '\n';
    out << "stages:";
    for (Stage s : cfg.stages)
      out << ' ' << to_string(s);
    out << '\n';

    const std::size_t n_r = r_values(cfg).size();
    const std::size_t n_beta = beta_values(cfg, form.norm2).size();
    const double t_max = cfg.t_grid.empty() ? 0.0 : cfg.t_grid.back();
    const double gram_steps =
        cfg.t_grid.empty() ? 0.0 : t_max / default_gram_step(cfg.t_grid.front(), form.norm2);
    for (Stage s : cfg.stages)
    {
      out << "  " << to_string(s) << ": ";
      switch (s)
      {
        case Stage::ResolventSweep:
        case Stage::Kreiss:
          out << n_r << " x " << n_beta << " grid, ~" << sci(22.0 * n3 * double(n_r * n_beta))
              << " flops";
          break;
        case Stage::Cesaro:
        case Stage::VerifyTheorem:
          out << cfg.t_grid.size() << " t values, ~" << sci(gram_steps) << " steps/pass, ~"
              << sci(48.0 * n3 * gram_steps) << " flops/pass";
          break;
        case Stage::VerifyIdentities:
          out << cfg.identity_r.size() << " contours, " << cfg.t_grid.size() << " t values, "
              << (cfg.probes.empty() ? default_probes(sys.dim()).size() : cfg.probes.size())
              << " probes, Schur ~" << sci(25.0 * n3) << " flops";
          break;
        case Stage::FitGrowth:
          out << cfg.t_grid.size() << " t values, model " << to_string(cfg.fit_model) << ", ~"
              << sci(8.0 * n3 * double(cfg.t_grid.size())) << " flops";
          break;
        case Stage::WaveDemo:
        {
          const double steps = cfg.wave_demo.t_max / default_gram_step(2.0, form.norm2);
          out << "t_max " << fmt(cfg.wave_demo.t_max) << ", 2 directions, ~"
              << sci(2.0 * 48.0 * n3 * steps) << " flops per Gram pass";
          break;
        }
      }
      out << '\n';
    }
    return kExitPass;
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace kreiss::cli
