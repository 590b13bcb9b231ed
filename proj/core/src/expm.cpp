// SPDX-License-Identifier: Apache-2.0

#include "kreiss/expm.hpp"

#include <array>
#include <cmath>

#include <Eigen/LU>

namespace kreiss
{

namespace
{

// Degree bounds θ_m on ‖A‖₁ for which the [m/m] Padé approximant attains
// unit roundoff in double precision without scaling.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

double norm1(const Matrix &a)
{
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// U (odd part) and V (even part) of the [m/m] approximant for m ≤ 9.
template <std::size_t N>
void pade_low(const Matrix &a, const std::array<double, N> &b, Matrix &u, Matrix &v)
{
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix power = id;  // A^{2k}
  Matrix odd = b[1] * id;
  v = b[0] * id;
  for (std::size_t k = 2; k < N; k += 2)
  {
    power = power * a2;
    v += b[k] * power;
    if (k + 1 < N)
      odd += b[k + 1] * power;
  }
  u = a * odd;
}

void pade13(const Matrix &a, Matrix &u, Matrix &v)
{
  const auto &b = kPade13;
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  u = a * (u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

Matrix expm(const Matrix &a)
{
  const Index n = a.rows();
  if (n == 0)
    return a;
  if (!a.allFinite())
    throw NumericalFailure("expm: non-finite input");
  if (n == 1)
    return Matrix::Constant(1, 1, std::exp(a(0, 0)));
  if (a.isDiagonal(0.0))
  {
    Matrix out = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      out(i, i) = std::exp(a(i, i));
    return out;
  }

  const double a_norm = norm1(a);
  Matrix u, v;
  int squarings = 0;
  if (a_norm <= kTheta[0])
    pade_low(a, kPade3, u, v);
  else if (a_norm <= kTheta[1])
    pade_low(a, kPade5, u, v);
  else if (a_norm <= kTheta[2])
    pade_low(a, kPade7, u, v);
  else if (a_norm <= kTheta[3])
    pade_low(a, kPade9, u, v);
  else
  {
    if (a_norm > kTheta[4])
      squarings = std::max(0, static_cast<int>(std::ceil(std::log2(a_norm / kTheta[4]))));
    pade13(a * std::ldexp(1.0, -squarings), u, v);
  }

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k)
    r = r * r;
  return r;
}

}  // namespace kreiss
