#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace gcale {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace defaults {
// Relative rejection threshold for Hermitian projection.
inline constexpr double asym_tol = 1e-10;
// Fixed-point residual stopping threshold.
inline constexpr double solve_tol = 1e-12;
inline constexpr int max_iterations = 1000;
// Loewner slack accepted when verifying the solution enclosure.
inline constexpr double enclosure_slack = 1e-9;
// Condition-number limit above which the pencil diagnostic reports unsupported.
inline constexpr double pencil_cond_limit = 1e12;
// Reciprocal condition estimate below which the direct solver reports a
// singular operator instead of returning garbage.
inline constexpr double oracle_rcond_floor = 1e-14;
// The direct solver works on an N^2 x N^2 system; it refuses larger problems.
inline constexpr int oracle_max_dim = 100;
// The iteration aborts as diverging once E_n exceeds this multiple of E_0.
inline constexpr double divergence_factor = 1e6;
}  // namespace defaults

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class SingularOperatorError : public Error {
 public:
  using Error::Error;
};

class ConditionsNotSatisfiedError : public Error {
 public:
  using Error::Error;
};

// Raised when an eigen- or singular-value decomposition fails to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcale
