// SPDX-License-Identifier: Apache-2.0

#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kreiss/grid.hpp"

namespace kreiss::cli
{

namespace
{

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &what)
{
  throw ConfigError("config field '" + path + "': " + what);
}

const Json &require(const Json &obj, const std::string &key, const std::string &path)
{
  const std::string full = path.empty() ? key : path + "." + key;
  if (!obj.is_object() || !obj.contains(key))
    fail(full, "missing required field");
  return obj.at(key);
}

double as_number(const Json &v, const std::string &path)
{
  if (!v.is_number())
    fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    fail(path, "expected a finite number");
  return d;
}

int as_int(const Json &v, const std::string &path)
{
  if (!v.is_number_integer())
    fail(path, "expected an integer");
  return v.get<int>();
}

Complex as_complex(const Json &v, const std::string &path)
{
  if (v.is_number())
    return {as_number(v, path), 0.0};
  if (v.is_array() && v.size() == 2)
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
  fail(path, "expected a number or a [re, im] pair");
}

std::vector<double> as_grid(const Json &v, const std::string &path)
{
  if (v.is_array())
  {
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    if (out.empty())
      fail(path, "grid is empty");
    return out;
  }
  if (v.is_object())
  {
    GridSpec spec;
    spec.min = as_number(require(v, "min", path), path + ".min");
    spec.max = as_number(require(v, "max", path), path + ".max");
    const int count = as_int(require(v, "count", path), path + ".count");
    if (count < 1)
      fail(path + ".count", "must be at least 1");
    spec.count = static_cast<std::size_t>(count);
    const std::string spacing = v.value("spacing", std::string("linear"));
    if (spacing == "log")
      spec.spacing = Spacing::Log;
    else if (spacing != "linear")
      fail(path + ".spacing", "expected 'linear' or 'log'");
    try
    {
      return spec.values();
    }
    catch (const ConfigError &e)
    {
      fail(path, e.what());
    }
  }
  fail(path, "expected an array of numbers or {min, max, count, spacing}");
}

void check_all(const std::vector<double> &grid, const std::string &path, double lower,
               bool strict, const std::string &why)
{
  for (double v : grid)
    if (strict ? !(v > lower) : !(v >= lower))
      fail(path, "every value must be " + std::string(strict ? "> " : ">= ") +
                     std::to_string(lower) + " (" + why + "), got " + std::to_string(v));
}

void check_increasing(const std::vector<double> &grid, const std::string &path)
{
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      fail(path, "values must be strictly increasing");
}

Stage parse_stage(const Json &v, const std::string &path)
{
  if (!v.is_string())
    fail(path, "expected a stage name");
  const std::string s = v.get<std::string>();
  static const std::pair<const char *, Stage> names[] = {
      {"resolvent-sweep", Stage::ResolventSweep}, {"kreiss", Stage::Kreiss},
      {"cesaro", Stage::Cesaro},                  {"verify-theorem", Stage::VerifyTheorem},
      {"verify-identities", Stage::VerifyIdentities}, {"fit-growth", Stage::FitGrowth},
      {"wave-demo", Stage::WaveDemo}};
  for (const auto &[name, stage] : names)
    if (s == name)
      return stage;
  fail(path, "unknown stage '" + s + "'");
}

OperatorSpec parse_operator(const Json &v)
{
  const std::string path = "operator";
  if (!v.is_object())
    fail(path, "expected an object");
  OperatorSpec spec;
  const Json &kind = require(v, "kind", path);
  if (!kind.is_string())
    fail(path + ".kind", "expected a string");
  spec.kind = kind.get<std::string>();

  if (spec.kind == "diagonal")
  {
    const Json &eigs = require(v, "eigenvalues", path);
    if (!eigs.is_array() || eigs.empty())
      fail(path + ".eigenvalues", "expected a nonempty array");
    for (std::size_t i = 0; i < eigs.size(); ++i)
      spec.eigenvalues.push_back(
          as_complex(eigs[i], path + ".eigenvalues[" + std::to_string(i) + "]"));
  }
  else if (spec.kind == "jordan")
  {
    spec.eigenvalue = as_complex(require(v, "eigenvalue", path), path + ".eigenvalue");
    spec.size = as_int(require(v, "size", path), path + ".size");
    if (spec.size < 1)
      fail(path + ".size", "must be at least 1");
  }
  else if (spec.kind == "wave")
  {
    spec.wave.nx = as_int(require(v, "Nx", path), path + ".Nx");
    spec.wave.ny = as_int(require(v, "Ny", path), path + ".Ny");
    if (spec.wave.nx < 1 || spec.wave.ny < 1)
      fail(path, "Nx and Ny must be at least 1");
  }
  else if (spec.kind == "matrix")
  {
    const Json &rows = require(v, "matrix", path);
    if (!rows.is_array() || rows.empty())
      fail(path + ".matrix", "expected a nonempty array of rows");
    const Index n = static_cast<Index>(rows.size());
    spec.matrix.resize(n, n);
    for (Index i = 0; i < n; ++i)
    {
      const std::string rp = path + ".matrix[" + std::to_string(i) + "]";
      if (!rows[i].is_array() || static_cast<Index>(rows[i].size()) != n)
        fail(rp, "expected a row of length " + std::to_string(n));
      for (Index j = 0; j < n; ++j)
        spec.matrix(i, j) = as_complex(rows[i][j], rp + "[" + std::to_string(j) + "]");
    }
    if (v.contains("weight"))
    {
      const Json &w = v.at("weight");
      if (!w.is_array() || static_cast<Index>(w.size()) != n)
        fail(path + ".weight", "expected an array of length " + std::to_string(n));
      spec.weight.resize(n);
      for (Index i = 0; i < n; ++i)
        spec.weight[i] = as_number(w[i], path + ".weight[" + std::to_string(i) + "]");
    }
  }
  else
    fail(path + ".kind", "expected one of diagonal, jordan, wave, matrix");

  if (v.contains("shift"))
    spec.shift = as_number(v.at("shift"), path + ".shift");
  if (v.contains("reverse"))
  {
    if (!v.at("reverse").is_boolean())
      fail(path + ".reverse", "expected a boolean");
    spec.reverse = v.at("reverse").get<bool>();
  }
  if (v.contains("label"))
  {
    if (!v.at("label").is_string())
      fail(path + ".label", "expected a string");
    spec.label = v.at("label").get<std::string>();
  }
  return spec;
}

}  // namespace

const char *to_string(Stage stage)
{
  switch (stage)
  {
    case Stage::ResolventSweep:
      return "resolvent-sweep";
    case Stage::Kreiss:
      return "kreiss";
    case Stage::Cesaro:
      return "cesaro";
    case Stage::VerifyTheorem:
      return "verify-theorem";
    case Stage::VerifyIdentities:
      return "verify-identities";
    case Stage::FitGrowth:
      return "fit-growth";
    case Stage::WaveDemo:
      return "wave-demo";
  }
  return "unknown";
}

OperatorSystem build_operator(const OperatorSpec &spec)
{
  OperatorSystem sys = [&]
  {
    if (spec.kind == "diagonal")
      return build_diagonal(spec.eigenvalues);
    if (spec.kind == "jordan")
      return build_jordan(spec.eigenvalue, spec.size);
    if (spec.kind == "wave")
      return build_wave(spec.wave);
    if (spec.kind == "matrix")
      return build_matrix(spec.matrix, spec.weight);
    throw ConfigError("unknown operator kind '" + spec.kind + "'");
  }();
  if (spec.reverse)
    sys = reversed(sys);
  sys = shifted(sys, spec.shift);
  if (!spec.label.empty())
    sys = OperatorSystem(sys.gen(), sys.weight(), spec.label, sys.shift());
  return sys;
}

bool ExperimentConfig::has(Stage stage) const
{
  return std::find(stages.begin(), stages.end(), stage) != stages.end();
}

ExperimentConfig parse_config(const std::string &json_text)
{
  Json doc;
  try
  {
    doc = Json::parse(json_text);
  }
  catch (const Json::parse_error &e)
  {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("config root must be a JSON object");

  ExperimentConfig cfg;
  cfg.op = parse_operator(require(doc, "operator", ""));

  if (doc.contains("alpha"))
    cfg.alpha = as_number(doc.at("alpha"), "alpha");
  if (!(cfg.alpha > 0.0))
    fail("alpha", "must be positive");

  const Json &stages = require(doc, "stages", "");
  if (!stages.is_array() || stages.empty())
    fail("stages", "expected a nonempty array");
  for (std::size_t i = 0; i < stages.size(); ++i)
    cfg.stages.push_back(parse_stage(stages[i], "stages[" + std::to_string(i) + "]"));
  std::sort(cfg.stages.begin(), cfg.stages.end());
  cfg.stages.erase(std::unique(cfg.stages.begin(), cfg.stages.end()), cfg.stages.end());

  if (doc.contains("grids"))
  {
    const Json &g = doc.at("grids");
    if (!g.is_object())
      fail("grids", "expected an object");
    if (g.contains("r"))
      cfg.r_grid = as_grid(g.at("r"), "grids.r");
    if (g.contains("beta"))
      cfg.beta_grid = as_grid(g.at("beta"), "grids.beta");
    if (g.contains("t"))
      cfg.t_grid = as_grid(g.at("t"), "grids.t");
  }
  if (doc.contains("tolerances"))
  {
    const Json &t = doc.at("tolerances");
    if (!t.is_object())
      fail("tolerances", "expected an object");
    if (t.contains("quadrature"))
      cfg.quadrature_tol = as_number(t.at("quadrature"), "tolerances.quadrature");
    if (t.contains("gram"))
      cfg.gram_tol = as_number(t.at("gram"), "tolerances.gram");
    if (!(cfg.quadrature_tol > 0.0 && cfg.quadrature_tol < 1.0))
      fail("tolerances.quadrature", "must lie in (0, 1)");
    if (!(cfg.gram_tol > 0.0 && cfg.gram_tol < 1.0))
      fail("tolerances.gram", "must lie in (0, 1)");
  }
  if (doc.contains("identities"))
  {
    const Json &id = doc.at("identities");
    if (!id.is_object())
      fail("identities", "expected an object");
    if (id.contains("r"))
      cfg.identity_r = as_grid(id.at("r"), "identities.r");
  }
  if (doc.contains("kreiss_constant"))
  {
    cfg.kreiss_constant = as_number(doc.at("kreiss_constant"), "kreiss_constant");
    if (!(*cfg.kreiss_constant > 0.0))
      fail("kreiss_constant", "must be positive");
  }
  if (doc.contains("fit"))
  {
    const Json &f = doc.at("fit");
    if (!f.is_object())
      fail("fit", "expected an object");
    if (f.contains("model"))
    {
      if (!f.at("model").is_string())
        fail("fit.model", "expected a string");
      try
      {
        cfg.fit_model = growth_model_from_string(f.at("model").get<std::string>());
      }
      catch (const ConfigError &e)
      {
        fail("fit.model", e.what());
      }
    }
    if (f.contains("omega") && !f.at("omega").is_null())
      cfg.fit_omega = as_number(f.at("omega"), "fit.omega");
    if (cfg.fit_model == GrowthModel::Shifted && !cfg.fit_omega)
      fail("fit.omega", "required by the shifted model");
  }
  if (doc.contains("wave_demo"))
  {
    const Json &w = doc.at("wave_demo");
    if (!w.is_object())
      fail("wave_demo", "expected an object");
    if (w.contains("t_max"))
      cfg.wave_demo.t_max = as_number(w.at("t_max"), "wave_demo.t_max");
    if (w.contains("strip_r"))
      cfg.wave_demo.strip_r = as_grid(w.at("strip_r"), "wave_demo.strip_r");
    if (w.contains("strip_beta"))
      cfg.wave_demo.strip_beta = as_grid(w.at("strip_beta"), "wave_demo.strip_beta");
    if (w.contains("theorem_t"))
      cfg.wave_demo.theorem_t = as_grid(w.at("theorem_t"), "wave_demo.theorem_t");
    if (w.contains("fit_t"))
      cfg.wave_demo.fit_t = as_grid(w.at("fit_t"), "wave_demo.fit_t");
  }
  if (doc.contains("output_dir"))
  {
    if (!doc.at("output_dir").is_string())
      fail("output_dir", "expected a string");
    cfg.output_dir = doc.at("output_dir").get<std::string>();
  }
  if (doc.contains("workers"))
  {
    const int w = as_int(doc.at("workers"), "workers");
    if (w < 0)
      fail("workers", "must be >= 0");
    cfg.workers = static_cast<unsigned>(w);
  }

  // The operator must build; its dimension sizes the probes.
  const OperatorSystem sys = [&]
  {
    try
    {
      return build_operator(cfg.op);
    }
    catch (const ConfigError &e)
    {
      fail("operator", e.what());
    }
  }();

  if (doc.contains("probes"))
  {
    const Json &p = doc.at("probes");
    if (!p.is_array())
      fail("probes", "expected an array of vectors");
    for (std::size_t k = 0; k < p.size(); ++k)
    {
      const std::string pp = "probes[" + std::to_string(k) + "]";
      if (!p[k].is_array() || static_cast<Index>(p[k].size()) != sys.dim())
        fail(pp, "expected a vector of length " + std::to_string(sys.dim()));
      Vector x(sys.dim());
      for (Index i = 0; i < sys.dim(); ++i)
        x[i] = as_complex(p[k][i], pp + "[" + std::to_string(i) + "]");
      if (!(x.norm() > 0.0))
        fail(pp, "probe vectors must be nonzero");
      cfg.probes.push_back(std::move(x));
    }
  }

  // Stage preconditions.
  if (cfg.r_grid && (cfg.has(Stage::ResolventSweep) || cfg.has(Stage::Kreiss)))
    check_all(*cfg.r_grid, "grids.r", 0.0, true, "points -r + i beta lie left of the axis");
  const bool uses_t = cfg.has(Stage::Cesaro) || cfg.has(Stage::VerifyTheorem) ||
                      cfg.has(Stage::VerifyIdentities) || cfg.has(Stage::FitGrowth);
  if (uses_t)
  {
    if (cfg.t_grid.empty())
      fail("grids.t", "required by the enabled stages");
    check_increasing(cfg.t_grid, "grids.t");
  }
  if (cfg.has(Stage::Cesaro) || cfg.has(Stage::VerifyIdentities))
    check_all(cfg.t_grid, "grids.t", 1.0, true, "Cesaro bounds need t > 1");
  if (cfg.has(Stage::VerifyTheorem))
  {
    if (cfg.alpha <= 1.0)
      check_all(cfg.t_grid, "grids.t", 2.0, true, "the dyadic bound needs t > 2");
    else
      check_all(cfg.t_grid, "grids.t", 3.0, true, "the alpha > 1 bound needs t > 3");
  }
  if (cfg.has(Stage::VerifyIdentities))
    check_all(cfg.identity_r, "identities.r", 0.0, true, "contours lie left of the axis");
  if (cfg.has(Stage::FitGrowth))
  {
    check_all(cfg.t_grid, "grids.t", 0.0, false, "semigroup times are nonnegative");
    const auto usable = std::count_if(cfg.t_grid.begin(), cfg.t_grid.end(),
                                      [](double t) { return t >= 2.0; });
    if (usable < 3)
      fail("grids.t", "growth fits need at least 3 points with t >= 2");
  }
  if (cfg.has(Stage::WaveDemo))
  {
    if (cfg.stages.size() != 1)
      fail("stages", "wave-demo writes its own artifact set and must run alone");
    if (cfg.op.kind != "wave")
      fail("operator.kind", "the wave-demo stage needs a wave operator");
    if (cfg.op.shift != 0.0 || cfg.op.reverse)
      fail("operator", "the wave-demo stage applies its own shift and reversal");
    if (!(cfg.wave_demo.t_max >= 8.0))
      fail("wave_demo.t_max", "must be at least 8");
    check_all(cfg.wave_demo.strip_r, "wave_demo.strip_r", 0.0, true, "strip is -1 < Re < 0");
    for (double r : cfg.wave_demo.strip_r)
      if (!(r < 1.0))
        fail("wave_demo.strip_r", "every value must be < 1 (strip is -1 < Re < 0)");
    check_all(cfg.wave_demo.theorem_t, "wave_demo.theorem_t", 2.0, true,
              "the dyadic bound needs t > 2");
    check_increasing(cfg.wave_demo.fit_t, "wave_demo.fit_t");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace kreiss::cli
