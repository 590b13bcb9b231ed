// SPDX-License-Identifier: Apache-2.0

#include "kreiss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace kreiss::linalg
{

namespace
{

Vector random_unit(std::mt19937_64 &rng, Index n)
{
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

}  // namespace

double sigma_max(const Matrix &m)
{
  if (m.size() == 0)
    return 0.0;
  if (m.rows() == 1 && m.cols() == 1)
    return std::abs(m(0, 0));
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double sigma_min_svd(const Matrix &m)
{
  if (m.rows() == 1 && m.cols() == 1)
    return std::abs(m(0, 0));
  Eigen::BDCSVD<Matrix> svd(m);
  const auto &s = svd.singularValues();
  return s(s.size() - 1);
}

double sigma_min_triangular(const Matrix &upper, const InverseIterationOptions &opts)
{
  const Index n = upper.rows();
  if (n == 1)
    return std::abs(upper(0, 0));
  for (Index i = 0; i < n; ++i)
    if (upper(i, i) == Complex(0.0))
      return 0.0;

  std::mt19937_64 rng(opts.seed);
  const Index k = std::min<Index>(n, opts.block_size);
  Matrix v(n, k);
  for (Index j = 0; j < k; ++j)
    v.col(j) = random_unit(rng, n);
  v = Eigen::HouseholderQR<Matrix>(v).householderQ() * Matrix::Identity(n, k);
  const auto tri = upper.triangularView<Eigen::Upper>();

  // Subspace iteration on (TᴴT)⁻¹ with Rayleigh–Ritz. Stop once the Ritz value
  // settles and its residual certifies it.
  double sigma = std::numeric_limits<double>::infinity();
  double previous = sigma;
  const int max_iterations = opts.iterations_per_round * opts.max_rounds;
  for (int it = 0; it < max_iterations; ++it)
  {
    const Matrix w = tri.adjoint().solve(v);
    if (!w.allFinite())
      return 0.0;
    const Matrix z = tri.solve(w);
    if (!z.allFinite())
      return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> ritz(w.adjoint() * w);
    const double theta = ritz.eigenvalues()(k - 1);
    if (!(theta > 0.0))
      return 0.0;
    sigma = 1.0 / std::sqrt(theta);
    const Vector u = ritz.eigenvectors().col(k - 1);
    const double residual = (z * u - theta * (v * u)).norm();
    if (std::abs(previous - sigma) <= opts.tol * sigma &&
        residual <= std::sqrt(opts.tol) * theta)
      return sigma;
    previous = sigma;
    v = Eigen::HouseholderQR<Matrix>(z).householderQ() * Matrix::Identity(n, k);
  }
  // Not certified within the budget: pay for the dense answer.
  return sigma_min_svd(upper);
}

double lambda_max_hermitian(const Matrix &h)
{
  if (h.rows() == 1)
    return h(0, 0).real();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

double singular_threshold(Index n, double scale)
{
  return double(n) * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace kreiss::linalg
