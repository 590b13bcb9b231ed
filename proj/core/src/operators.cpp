// SPDX-License-Identifier: Apache-2.0

#include "kreiss/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kreiss/linalg.hpp"

namespace kreiss
{

namespace
{

std::string format_lambda(Complex lambda)
{
  std::ostringstream os;
  os.precision(17);
  os << "resolvent undefined at lambda = " << lambda.real() << (lambda.imag() < 0 ? " - " : " + ")
     << std::abs(lambda.imag()) << "i";
  return os.str();
}

// Disjoint-set forest over state indices.
class Components
{
public:
  explicit Components(Index n) : parent_(static_cast<std::size_t>(n))
  {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index i)
  {
    while (parent_[i] != i)
    {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(Index a, Index b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    // Smaller root wins so that block order follows the first index.
    if (b < a)
      std::swap(a, b);
    parent_[b] = a;
  }

private:
  std::vector<Index> parent_;
};

}  // namespace

ResolventUndefined::ResolventUndefined(Complex lambda)
  : Error(format_lambda(lambda)), lambda_(lambda)
{
}

ResolventUndefined::ResolventUndefined(Complex lambda, const std::string &what)
  : Error(format_lambda(lambda) + ": " + what), lambda_(lambda)
{
}

OperatorSystem::OperatorSystem(Matrix gen, RealVector weight, std::string label, double shift)
  : gen_(std::move(gen)), weight_(std::move(weight)), label_(std::move(label)), shift_(shift)
{
  if (gen_.rows() == 0 || gen_.rows() != gen_.cols())
    throw ConfigError("generator must be a nonempty square matrix");
  if (weight_.size() != gen_.rows())
    throw ConfigError("weight length " + std::to_string(weight_.size()) +
                      " does not match dimension " + std::to_string(gen_.rows()));
  for (Index i = 0; i < weight_.size(); ++i)
    if (!std::isfinite(weight_[i]) || !(weight_[i] > 0.0))
      throw ConfigError("weight entry " + std::to_string(i) + " is not a positive finite number");
  for (Index j = 0; j < gen_.cols(); ++j)
    for (Index i = 0; i < gen_.rows(); ++i)
      if (!std::isfinite(gen_(i, j).real()) || !std::isfinite(gen_(i, j).imag()))
        throw ConfigError("generator entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is not finite");
  if (!std::isfinite(shift_))
    throw ConfigError("shift must be finite");
}

bool OperatorSystem::unit_weight() const noexcept
{
  return (weight_.array() == 1.0).all();
}

Vector OperatorSystem::to_euclidean(const Vector &x) const
{
  if (x.size() != dim())
    throw ConfigError("vector length does not match system dimension");
  return (weight_.array().sqrt().cast<Complex>() * x.array()).matrix();
}

Vector OperatorSystem::from_euclidean(const Vector &y) const
{
  if (y.size() != dim())
    throw ConfigError("vector length does not match system dimension");
  return (y.array() / weight_.array().sqrt().cast<Complex>()).matrix();
}

double OperatorSystem::norm_h(const Vector &x) const
{
  return to_euclidean(x).norm();
}

Complex OperatorSystem::inner_h(const Vector &x, const Vector &y) const
{
  if (x.size() != dim() || y.size() != dim())
    throw ConfigError("vector length does not match system dimension");
  Complex sum = 0.0;
  for (Index i = 0; i < dim(); ++i)
    sum += weight_[i] * x[i] * std::conj(y[i]);
  return sum;
}

Index WaveTruncationParams::index(int component, int m, int n) const
{
  if (component < 1 || component > 2 || std::abs(m) > nx || std::abs(n) > ny)
    throw ConfigError("wave index out of range");
  return Index(component - 1) * modes() + Index(m + nx) * (2 * ny + 1) + (n + ny);
}

WaveTruncationParams::Mode WaveTruncationParams::mode(Index idx) const
{
  if (idx < 0 || idx >= dim())
    throw ConfigError("wave index out of range");
  const int component = static_cast<int>(idx / modes()) + 1;
  const Index rest = idx % modes();
  const int m = static_cast<int>(rest / (2 * ny + 1)) - nx;
  const int n = static_cast<int>(rest % (2 * ny + 1)) - ny;
  return {component, m, n};
}

OperatorSystem build_diagonal(std::span<const Complex> eigs)
{
  if (eigs.empty())
    throw ConfigError("diagonal operator needs at least one eigenvalue");
  const Index n = static_cast<Index>(eigs.size());
  Matrix gen = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
  {
    if (eigs[i].real() < 0.0)
      throw ConfigError("eigenvalue " + std::to_string(i) +
                        " has negative real part; the spectrum must lie in Re >= 0");
    gen(i, i) = eigs[i];
  }
  return OperatorSystem(std::move(gen), RealVector::Ones(n), "diagonal(" + std::to_string(n) + ")");
}

OperatorSystem build_jordan(Complex eig, Index size)
{
  if (size < 1)
    throw ConfigError("jordan block size must be at least 1");
  if (eig.real() < 0.0)
    throw ConfigError("jordan eigenvalue has negative real part; the spectrum must lie in Re >= 0");
  Matrix gen = Matrix::Zero(size, size);
  gen.diagonal().setConstant(eig);
  for (Index i = 0; i + 1 < size; ++i)
    gen(i, i + 1) = 1.0;
  return OperatorSystem(std::move(gen), RealVector::Ones(size),
                        "jordan(" + std::to_string(size) + ")");
}

OperatorSystem build_wave(const WaveTruncationParams &params)
{
  if (params.nx < 1 || params.ny < 1)
    throw ConfigError("wave truncation needs Nx, Ny >= 1");
  const Index n = params.dim();
  Matrix gen = Matrix::Zero(n, n);
  RealVector weight = RealVector::Ones(n);
  for (int m = -params.nx; m <= params.nx; ++m)
  {
    for (int k = -params.ny; k <= params.ny; ++k)
    {
      const Index u1 = params.index(1, m, k);
      const Index u2 = params.index(2, m, k);
      gen(u1, u2) = -1.0;
      // −Δ is diagonal with symbol m² + k².
      gen(u2, u1) = double(m * m + k * k);
      // −M ∂/∂x: ∂/∂x gives i m, multiplication by e^{iy} moves mode k−1 to k.
      // The edge mode k = Ny has no image inside the truncation.
      if (k - 1 >= -params.ny)
        gen(u2, params.index(1, m, k - 1)) = Complex(0.0, -double(m));
      weight[u1] = 1.0 + double(m * m + k * k);
    }
  }
  return OperatorSystem(std::move(gen), std::move(weight),
                        "wave(Nx=" + std::to_string(params.nx) + ",Ny=" +
                            std::to_string(params.ny) + ")");
}

OperatorSystem build_matrix(Matrix gen, RealVector weight, std::string label)
{
  if (weight.size() == 0)
    weight = RealVector::Ones(gen.rows());
  return OperatorSystem(std::move(gen), std::move(weight), std::move(label));
}

Matrix euclidean_form(const OperatorSystem &sys)
{
  const RealVector d = sys.weight().array().sqrt();
  Matrix out = sys.gen();
  for (Index j = 0; j < out.cols(); ++j)
    for (Index i = 0; i < out.rows(); ++i)
      out(i, j) *= d[i] / d[j];
  return out;
}

OperatorSystem adjoint(const OperatorSystem &sys)
{
  const RealVector &w = sys.weight();
  Matrix gen = sys.gen().adjoint();
  for (Index j = 0; j < gen.cols(); ++j)
    for (Index i = 0; i < gen.rows(); ++i)
      gen(i, j) *= w[j] / w[i];
  return OperatorSystem(std::move(gen), w, "adjoint(" + sys.label() + ")", sys.shift());
}

OperatorSystem shifted(const OperatorSystem &sys, double omega)
{
  if (omega == 0.0)
    return sys;
  Matrix gen = sys.gen();
  gen.diagonal().array() += omega;
  std::ostringstream label;
  label << sys.label() << (omega < 0 ? "-" : "+") << std::abs(omega);
  return OperatorSystem(std::move(gen), sys.weight(), label.str(), sys.shift() + omega);
}

OperatorSystem reversed(const OperatorSystem &sys)
{
  return OperatorSystem(-sys.gen(), sys.weight(), "-(" + sys.label() + ")", -sys.shift());
}

Vector BlockForm::restrict(const Vector &x, std::size_t block) const
{
  const auto &idx = blocks.at(block).indices;
  Vector out(static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k)
    out[static_cast<Index>(k)] = x[idx[k]];
  return out;
}

Matrix BlockForm::assemble(std::span<const Matrix> per_block) const
{
  if (per_block.size() != blocks.size())
    throw ConfigError("block count mismatch");
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t b = 0; b < blocks.size(); ++b)
  {
    const auto &idx = blocks[b].indices;
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < idx.size(); ++i)
        out(idx[i], idx[j]) = per_block[b](static_cast<Index>(i), static_cast<Index>(j));
  }
  return out;
}

BlockForm block_form(const OperatorSystem &sys)
{
  const Matrix full = euclidean_form(sys);
  const Index n = full.rows();
  Components comps(n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (i != j && full(i, j) != Complex(0.0))
        comps.unite(i, j);

  BlockForm form;
  form.dim = n;
  std::vector<Index> block_of(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i)
  {
    const Index root = comps.find(i);
    if (block_of[root] < 0)
    {
      block_of[root] = static_cast<Index>(form.blocks.size());
      form.blocks.emplace_back();
    }
    form.blocks[block_of[root]].indices.push_back(i);
  }
  for (auto &block : form.blocks)
  {
    const Index m = static_cast<Index>(block.indices.size());
    block.op.resize(m, m);
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i)
        block.op(i, j) = full(block.indices[i], block.indices[j]);
    form.norm2 = std::max(form.norm2, linalg::sigma_max(block.op));
  }
  return form;
}

}  // namespace kreiss
