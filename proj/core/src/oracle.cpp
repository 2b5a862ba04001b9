#include "gcale/oracle.hpp"

#include <sstream>

#include <Eigen/LU>

namespace gcale {

namespace {

ComplexMatrix kron(const ComplexMatrix& p, const ComplexMatrix& q) {
  ComplexMatrix out(p.rows() * q.rows(), p.cols() * q.cols());
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.cols(); ++j) {
      out.block(i * q.rows(), j * q.cols(), q.rows(), q.cols()) = p(i, j) * q;
    }
  }
  return out;
}

}  // namespace

OracleResult solve_direct(const ProblemInstance& p) {
  const Index n = p.dim();
  if (n > defaults::oracle_max_dim) {
    std::ostringstream os;
    os << "solve_direct: N = " << n << " exceeds the direct-solve limit of "
       << defaults::oracle_max_dim;
    throw Error(os.str());
  }

  // vec is column-stacking; with .transpose() meaning transpose without
  // conjugation, vec(A* X B) = (B^T kron A*) vec(X), so the vectorized
  // operator is K = B^T kron A* + A^T kron B*.
  const ComplexMatrix k = kron(p.b().transpose(), p.a().adjoint()) +
                          kron(p.a().transpose(), p.b().adjoint());

  Eigen::PartialPivLU<ComplexMatrix> lu(k);
  const double rcond = lu.rcond();
  if (!(rcond > defaults::oracle_rcond_floor)) {
    std::ostringstream os;
    os << "solve_direct: singular operator (rcond estimate " << rcond
       << "); the equation has no unique solution";
    throw SingularOperatorError(os.str());
  }

  const ComplexVector rhs = -p.q().matrix().reshaped();
  const ComplexVector vec_x = lu.solve(rhs);
  const ComplexMatrix x_raw = vec_x.reshaped(n, n);

  OracleResult result;
  result.hermiticity_defect = spectral_norm(x_raw - x_raw.adjoint());
  result.x = HermitianMatrix::project(x_raw);
  result.residual = equation_residual(result.x, p);
  result.definite = is_positive_definite(result.x);
  return result;
}

double true_error(const HermitianMatrix& x_approx, const ProblemInstance& p,
                  ErrorNorm norm, const HermitianMatrix& qtilde) {
  const OracleResult oracle = solve_direct(p);
  const ComplexMatrix diff = x_approx.matrix() - oracle.x.matrix();
  if (norm == ErrorNorm::spectral) return spectral_norm(diff);
  return weighted_trace_norm(diff, sqrt_pd(qtilde));
}

double true_error(const HermitianMatrix& x_approx, const ProblemInstance& p) {
  return true_error(x_approx, p, ErrorNorm::spectral,
                    HermitianMatrix::Identity(p.dim()));
}

}  // namespace gcale
