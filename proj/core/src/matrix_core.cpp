#include "gcale/matrix_core.hpp"

#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gcale {

namespace {

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols()
       << ", expected square";
    throw DimensionError(os.str());
  }
  if (!m.allFinite()) {
    throw Error(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim()
       << ")";
    throw DimensionError(os.str());
  }
}

Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(),
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("hermitian eigendecomposition did not converge");
  }
  return es.eigenvalues();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double asym_tol) {
  require_square_finite(m, "HermitianMatrix");
  const double asym = spectral_norm(m - m.adjoint());
  const double scale = std::max(1.0, spectral_norm(m));
  if (asym > asym_tol * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian within tolerance: asymmetry " << asym
       << " exceeds " << asym_tol << " * " << scale;
    throw NotHermitianError(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::project(const ComplexMatrix& m) {
  require_square_finite(m, "HermitianMatrix::project");
  return HermitianMatrix(0.5 * (m + m.adjoint()), Trusted{});
}

HermitianMatrix HermitianMatrix::Zero(Index n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::Identity(Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n), Trusted{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "operator+");
  return HermitianMatrix(a.m_ + b.m_, HermitianMatrix::Trusted{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "operator-");
  return HermitianMatrix(a.m_ - b.m_, HermitianMatrix::Trusted{});
}

HermitianMatrix operator*(double c, const HermitianMatrix& h) {
  return HermitianMatrix(c * h.m_, HermitianMatrix::Trusted{});
}

HermitianMatrix HermitianMatrix::operator-() const {
  return HermitianMatrix(-m_, Trusted{});
}

HermitianMatrix hermitian_project(const ComplexMatrix& m, double asym_tol) {
  return HermitianMatrix(m, asym_tol);
}

double min_eigenvalue(const HermitianMatrix& h) {
  return hermitian_eigenvalues(h)(0);
}

bool is_positive_definite(const HermitianMatrix& h, double margin) {
  return min_eigenvalue(h) > margin;
}

double loewner_margin(const HermitianMatrix& lhs, const HermitianMatrix& rhs) {
  require_same_dim(lhs, rhs, "loewner_margin");
  return min_eigenvalue(rhs - lhs);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double weighted_trace_norm(const ComplexMatrix& m,
                           const HermitianMatrix& qtilde_half) {
  if (m.rows() != qtilde_half.dim() || m.cols() != qtilde_half.dim()) {
    throw DimensionError("weighted_trace_norm: dimension mismatch");
  }
  const ComplexMatrix& s = qtilde_half.matrix();
  return trace_norm(s * m * s);
}

namespace {

HermitianMatrix pd_power_half(const HermitianMatrix& h, double pd_floor,
                              bool inverse) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw NumericalError("hermitian eigendecomposition did not converge");
  }
  const Eigen::VectorXd& lam = es.eigenvalues();
  if (!(lam(0) > pd_floor)) {
    std::ostringstream os;
    os << "matrix is not positive definite: min eigenvalue " << lam(0)
       << " <= " << pd_floor;
    throw NotPositiveDefiniteError(os.str());
  }
  Eigen::VectorXd d = lam.array().sqrt();
  if (inverse) d = d.array().inverse();
  const ComplexMatrix& u = es.eigenvectors();
  return HermitianMatrix::project(u * d.asDiagonal() * u.adjoint());
}

}  // namespace

HermitianMatrix sqrt_pd(const HermitianMatrix& h, double pd_floor) {
  return pd_power_half(h, pd_floor, /*inverse=*/false);
}

HermitianMatrix inv_sqrt_pd(const HermitianMatrix& h, double pd_floor) {
  return pd_power_half(h, pd_floor, /*inverse=*/true);
}

HermitianMatrix congruence(const ComplexMatrix& t, const HermitianMatrix& h) {
  if (t.rows() != h.dim() || t.cols() != h.dim()) {
    throw DimensionError("congruence: dimension mismatch");
  }
  return HermitianMatrix::project(t.adjoint() * h.matrix() * t);
}

bool is_hermitian(const ComplexMatrix& m, double asym_tol) {
  if (m.rows() != m.cols()) return false;
  return spectral_norm(m - m.adjoint()) <=
         asym_tol * std::max(1.0, spectral_norm(m));
}

}  // namespace gcale
