#pragma once

#include "gcale/types.hpp"

namespace gcale {

/// Square complex matrix with exact conjugate symmetry.
///
/// The checked constructor rejects inputs whose asymmetry ||m - m*|| exceeds
/// asym_tol * max(1, ||m||) (spectral norms) and otherwise stores the
/// projection (m + m*)/2, which is exactly Hermitian in IEEE arithmetic.
/// Sums, differences and real scalings of Hermitian matrices are exact, so
/// the corresponding operators skip the check.
class HermitianMatrix {
 public:
  /// Empty placeholder (dim 0); useful as a not-yet-assigned report field.
  HermitianMatrix() = default;

  /// Checked construction: rejects non-Hermitian input, then projects.
  explicit HermitianMatrix(const ComplexMatrix& m,
                           double asym_tol = defaults::asym_tol);

  /// Unconditional projection (m + m*)/2, no asymmetry check. For values
  /// that are Hermitian up to round-off by construction.
  static HermitianMatrix project(const ComplexMatrix& m);

  static HermitianMatrix Zero(Index n);
  static HermitianMatrix Identity(Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a,
                                   const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a,
                                   const HermitianMatrix& b);
  friend HermitianMatrix operator*(double c, const HermitianMatrix& h);
  HermitianMatrix operator-() const;

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Checked Hermitian projection; same contract as the HermitianMatrix
/// constructor, provided as a free function.
HermitianMatrix hermitian_project(const ComplexMatrix& m,
                                  double asym_tol = defaults::asym_tol);

/// Smallest eigenvalue, via Hermitian eigendecomposition.
double min_eigenvalue(const HermitianMatrix& h);

/// True iff min_eigenvalue(h) > margin.
bool is_positive_definite(const HermitianMatrix& h, double margin = 0.0);

/// Smallest eigenvalue of (rhs - lhs). Positive means lhs < rhs strictly in
/// the Loewner order; >= -tol means lhs <= rhs numerically.
double loewner_margin(const HermitianMatrix& lhs, const HermitianMatrix& rhs);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Trace norm of S m S where S is a precomputed positive definite weight
/// square root (see sqrt_pd).
double weighted_trace_norm(const ComplexMatrix& m,
                           const HermitianMatrix& qtilde_half);

/// Positive definite square root via eigendecomposition. Requires
/// min_eigenvalue(h) > pd_floor.
HermitianMatrix sqrt_pd(const HermitianMatrix& h, double pd_floor = 0.0);

/// Inverse positive definite square root, same preconditions as sqrt_pd.
HermitianMatrix inv_sqrt_pd(const HermitianMatrix& h, double pd_floor = 0.0);

/// t* h t, projected back onto the Hermitian matrices.
HermitianMatrix congruence(const ComplexMatrix& t, const HermitianMatrix& h);

/// True iff ||m - m*|| <= asym_tol * max(1, ||m||) (spectral norms).
bool is_hermitian(const ComplexMatrix& m, double asym_tol = defaults::asym_tol);

}  // namespace gcale
