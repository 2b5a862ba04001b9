#include "gcale/reformulation.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace gcale {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void require_matching(Index lhs, Index rhs, const char* what) {
  if (lhs != rhs) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << lhs << " vs " << rhs << ")";
    throw DimensionError(os.str());
  }
}

}  // namespace

TransformSet compute_transforms(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw DimensionError("compute_transforms: inputs must be square");
  }
  require_matching(a.rows(), b.rows(), "compute_transforms");
  const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
  TransformSet t;
  t.u = kInvSqrt2 * (a - b + id);
  t.v = kInvSqrt2 * (a + b + id);
  t.w = b - id;
  t.b = b;
  return t;
}

ProblemInstance::ProblemInstance(ComplexMatrix a, ComplexMatrix b,
                                 HermitianMatrix q)
    : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
  if (a_.rows() != a_.cols() || b_.rows() != b_.cols()) {
    throw DimensionError("ProblemInstance: A and B must be square");
  }
  require_matching(a_.rows(), q_.dim(), "ProblemInstance: A vs Q");
  require_matching(b_.rows(), q_.dim(), "ProblemInstance: B vs Q");
  if (!a_.allFinite() || !b_.allFinite()) {
    throw Error("ProblemInstance: A and B must have finite entries");
  }
  if (!is_positive_definite(q_)) {
    throw NotPositiveDefiniteError("ProblemInstance: Q must be positive definite");
  }
  transforms_ = compute_transforms(a_, b_);
}

HermitianMatrix fixed_point_map(const HermitianMatrix& x,
                                const HermitianMatrix& y,
                                const HermitianMatrix& q,
                                const TransformSet& t) {
  require_matching(x.dim(), t.dim(), "fixed_point_map: x");
  require_matching(y.dim(), t.dim(), "fixed_point_map: y");
  require_matching(q.dim(), t.dim(), "fixed_point_map: q");
  const ComplexMatrix& xm = x.matrix();
  const ComplexMatrix& ym = y.matrix();
  ComplexMatrix r = q.matrix();
  r.noalias() += t.v.adjoint() * xm * t.v;
  r.noalias() += t.w.adjoint() * xm * t.w;
  r.noalias() -= t.u.adjoint() * ym * t.u;
  r.noalias() -= t.b.adjoint() * ym * t.b;
  return HermitianMatrix::project(r);
}

double equation_residual(const HermitianMatrix& x, const ProblemInstance& p) {
  require_matching(x.dim(), p.dim(), "equation_residual");
  const ComplexMatrix& xm = x.matrix();
  ComplexMatrix defect = p.a().adjoint() * xm * p.b();
  defect.noalias() += p.b().adjoint() * xm * p.a();
  defect += p.q().matrix();
  return spectral_norm(defect);
}

double fixed_point_residual(const HermitianMatrix& x, const HermitianMatrix& q,
                            const TransformSet& t) {
  return spectral_norm(x.matrix() - fixed_point_map(x, x, q, t).matrix());
}

}  // namespace gcale
