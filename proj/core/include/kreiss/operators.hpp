// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "kreiss/types.hpp"

namespace kreiss
{

/// A finite generator together with the diagonal inner product of its state
/// space H. The semigroup is T_t = exp(−tA) and ⟨x, y⟩_H = Σ w_i x_i conj(y_i).
///
/// Values are immutable once constructed; every transform returns a new system.
class OperatorSystem
{
public:
  /// Validates finiteness, squareness and strict positivity of the weight.
  OperatorSystem(Matrix gen, RealVector weight, std::string label, double shift = 0.0);

  Index dim() const noexcept { return gen_.rows(); }
  const Matrix &gen() const noexcept { return gen_; }
  const RealVector &weight() const noexcept { return weight_; }
  const std::string &label() const noexcept { return label_; }
  double shift() const noexcept { return shift_; }

  /// True when every weight equals one (H is plain Euclidean space).
  bool unit_weight() const noexcept;

  /// D x with D = diag(√w): maps H coordinates to Euclidean ones.
  Vector to_euclidean(const Vector &x) const;
  /// D⁻¹ y.
  Vector from_euclidean(const Vector &y) const;

  double norm_h(const Vector &x) const;
  Complex inner_h(const Vector &x, const Vector &y) const;

private:
  Matrix gen_;
  RealVector weight_;
  std::string label_;
  double shift_ = 0.0;
};

/// Fourier truncation of the perturbed wave operator on the 2-torus.
/// Modes m ∈ [−nx, nx], n ∈ [−ny, ny]; component c ∈ {1, 2}.
struct WaveTruncationParams
{
  int nx = 1;
  int ny = 1;

  Index modes() const noexcept { return Index(2 * nx + 1) * (2 * ny + 1); }
  Index dim() const noexcept { return 2 * modes(); }

  Index index(int component, int m, int n) const;

  struct Mode
  {
    int component;
    int m;
    int n;
  };
  Mode mode(Index idx) const;
};

OperatorSystem build_diagonal(std::span<const Complex> eigs);
OperatorSystem build_jordan(Complex eig, Index size);
OperatorSystem build_wave(const WaveTruncationParams &params);
/// Arbitrary dense generator. An empty weight means w ≡ 1.
OperatorSystem build_matrix(Matrix gen, RealVector weight = {}, std::string label = "matrix");

/// Ã = D A D⁻¹, D = diag(√w). Operator norms on H are Euclidean norms of Ã.
Matrix euclidean_form(const OperatorSystem &sys);

/// H-adjoint: generator W⁻¹ Aᴴ W with the same weight.
OperatorSystem adjoint(const OperatorSystem &sys);

/// Generator A + ωI; the shift field accumulates ω.
OperatorSystem shifted(const OperatorSystem &sys, double omega);

/// Generator −A, i.e. the backward direction of a group.
OperatorSystem reversed(const OperatorSystem &sys);

/// One diagonal block of Ã after a symmetric permutation.
struct EuclideanBlock
{
  std::vector<Index> indices;  // ascending, into the full state vector
  Matrix op;                   // Ã restricted to indices × indices
};

/// Ã split into decoupled invariant subspaces (connected components of its
/// sparsity graph). Every function of Ã is block diagonal in this splitting,
/// so norms, singular values and Gram eigenvalues reduce to per-block values.
struct BlockForm
{
  Index dim = 0;
  std::vector<EuclideanBlock> blocks;  // ordered by their smallest index
  double norm2 = 0.0;                  // ‖Ã‖₂

  Vector restrict(const Vector &x, std::size_t block) const;
  /// Reassemble a block-diagonal matrix from per-block matrices.
  Matrix assemble(std::span<const Matrix> per_block) const;
};

BlockForm block_form(const OperatorSystem &sys);

}  // namespace kreiss
