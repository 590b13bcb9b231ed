// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "kreiss/types.hpp"

namespace kreiss::linalg
{

enum class SigmaMinMethod
{
  Auto,              // full SVD up to kSvdMaxDim, inverse iteration above
  Svd,
  InverseIteration,
};

inline constexpr Index kSvdMaxDim = 400;

struct InverseIterationOptions
{
  int iterations_per_round = 20;
  int max_rounds = 10;
  double tol = 1e-10;
  Index block_size = 8;
  std::uint64_t seed = 0x5eed;
};

/// Largest singular value.
double sigma_max(const Matrix &m);

/// Smallest singular value by a full SVD.
double sigma_min_svd(const Matrix &m);

/// Smallest singular value of an upper-triangular matrix by subspace inverse
/// iteration on TᴴT with a block of block_size vectors, so clustered small
/// singular values still converge. The start block is drawn from a fixed seed.
/// Falls back to a full SVD when the Ritz residual cannot certify the value
/// within the iteration budget. Returns 0 if T has an exactly zero diagonal
/// entry.
double sigma_min_triangular(const Matrix &upper, const InverseIterationOptions &opts = {});

/// Largest eigenvalue of a Hermitian matrix (only the lower triangle is read).
double lambda_max_hermitian(const Matrix &h);

/// Threshold under which a singular value is treated as zero relative to the
/// scale of the matrix.
double singular_threshold(Index n, double scale);

}  // namespace kreiss::linalg
