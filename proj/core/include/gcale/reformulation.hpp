#pragma once

#include "gcale/matrix_core.hpp"

namespace gcale {

/// The transform matrices of the fixed-point reformulation:
/// u = (a - b + I)/sqrt(2), v = (a + b + I)/sqrt(2), w = b - I,
/// with b retained for the map itself. Computed once per problem.
struct TransformSet {
  ComplexMatrix u;
  ComplexMatrix v;
  ComplexMatrix w;
  ComplexMatrix b;

  Index dim() const noexcept { return u.rows(); }
};

TransformSet compute_transforms(const ComplexMatrix& a, const ComplexMatrix& b);

/// The triple (A, B, Q) of the equation A*XB + B*XA = -Q, with Q Hermitian
/// positive definite. Transforms are cached at construction.
class ProblemInstance {
 public:
  ProblemInstance(ComplexMatrix a, ComplexMatrix b, HermitianMatrix q);

  const ComplexMatrix& a() const noexcept { return a_; }
  const ComplexMatrix& b() const noexcept { return b_; }
  const HermitianMatrix& q() const noexcept { return q_; }
  const TransformSet& transforms() const noexcept { return transforms_; }
  Index dim() const noexcept { return q_.dim(); }

 private:
  ComplexMatrix a_;
  ComplexMatrix b_;
  HermitianMatrix q_;
  TransformSet transforms_;
};

/// The mixed-monotone map F(x, y) = q + (v* x v + w* x w) - (u* y u + b* y b),
/// Hermitian-projected. Its coupled fixed point solves the equation.
HermitianMatrix fixed_point_map(const HermitianMatrix& x,
                                const HermitianMatrix& y,
                                const HermitianMatrix& q,
                                const TransformSet& t);

/// Spectral norm of the equation defect A*XB + B*XA + Q.
double equation_residual(const HermitianMatrix& x, const ProblemInstance& p);

/// Spectral norm of x - F(x, x), the per-iterate convergence measure.
double fixed_point_residual(const HermitianMatrix& x, const HermitianMatrix& q,
                            const TransformSet& t);

}  // namespace gcale
