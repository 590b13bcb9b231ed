// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kreiss
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad sizes, out-of-range parameters, violated preconditions.
class ConfigError : public Error
{
public:
  using Error::Error;
};

/// λI − A is singular, i.e. λ lies on the spectrum.
class ResolventUndefined : public Error
{
public:
  explicit ResolventUndefined(Complex lambda);
  ResolventUndefined(Complex lambda, const std::string &what);

  Complex lambda() const noexcept { return lambda_; }

private:
  Complex lambda_;
};

/// An iterative or adaptive procedure exhausted its work cap.
class NumericalFailure : public Error
{
public:
  using Error::Error;
};

/// A least-squares or supremum fit could not be formed from the data.
class FitError : public Error
{
public:
  using Error::Error;
};

}  // namespace kreiss
