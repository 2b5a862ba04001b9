#include "gcale/conditions.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace gcale {

const char* to_string(CertificatePreset preset) noexcept {
  switch (preset) {
    case CertificatePreset::cr1:
      return "cr1";
    case CertificatePreset::cr2:
      return "cr2";
    case CertificatePreset::custom:
      break;
  }
  return "custom";
}

CertificateConfig::CertificateConfig(HermitianMatrix qtilde,
                                     HermitianMatrix m_cap,
                                     CertificatePreset preset)
    : qtilde_(std::move(qtilde)), m_cap_(std::move(m_cap)), preset_(preset) {
  if (qtilde_.dim() != m_cap_.dim()) {
    throw DimensionError("CertificateConfig: Q~ and M dimensions differ");
  }
  if (!is_positive_definite(qtilde_)) {
    throw NotPositiveDefiniteError("CertificateConfig: Q~ must be positive definite");
  }
  if (!is_positive_definite(m_cap_)) {
    throw NotPositiveDefiniteError("CertificateConfig: M must be positive definite");
  }
}

namespace {

void require_hermitian_ab(const ProblemInstance& p, double asym_tol,
                          const char* preset_name) {
  if (!is_hermitian(p.a(), asym_tol) || !is_hermitian(p.b(), asym_tol)) {
    std::ostringstream os;
    os << "preset " << preset_name << " requires Hermitian A and B";
    throw NotHermitianError(os.str());
  }
}

}  // namespace

CertificateConfig preset_cr1(const ProblemInstance& p, double asym_tol) {
  require_hermitian_ab(p, asym_tol, "cr1");
  return CertificateConfig(p.q(), 2.0 * p.q(), CertificatePreset::cr1);
}

CertificateConfig preset_cr2(const ProblemInstance& p, double asym_tol) {
  require_hermitian_ab(p, asym_tol, "cr2");
  return CertificateConfig(HermitianMatrix::Identity(p.dim()),
                           HermitianMatrix::Identity(p.dim()),
                           CertificatePreset::cr2);
}

double contraction_factor(const TransformSet& t, const HermitianMatrix& qtilde) {
  if (t.dim() != qtilde.dim()) {
    throw DimensionError("contraction_factor: dimension mismatch");
  }
  const HermitianMatrix r = inv_sqrt_pd(qtilde);
  const ComplexMatrix& qt = qtilde.matrix();
  const ComplexMatrix& rm = r.matrix();
  const ComplexMatrix gain =
      t.v * qt * t.v.adjoint() + t.w * qt * t.w.adjoint();
  const ComplexMatrix loss =
      t.u * qt * t.u.adjoint() + t.b * qt * t.b.adjoint();
  return 2.0 * std::max(spectral_norm(rm * gain * rm),
                        spectral_norm(rm * loss * rm));
}

ConditionReport check_conditions(const ProblemInstance& p,
                                 const CertificateConfig& c,
                                 double strict_tol) {
  if (p.dim() != c.dim()) {
    throw DimensionError("check_conditions: problem and certificate dimensions differ");
  }
  const TransformSet& t = p.transforms();
  const HermitianMatrix& qt = c.qtilde();
  const HermitianMatrix& m = c.m_cap();
  const ComplexMatrix& qtm = qt.matrix();
  const ComplexMatrix& mm = m.matrix();

  // (a), (b) sandwich the witnesses from the outside: T Q~ T*.
  const HermitianMatrix gain_a = HermitianMatrix::project(
      t.u * qtm * t.u.adjoint() + t.b * qtm * t.b.adjoint());
  const HermitianMatrix gain_b = HermitianMatrix::project(
      t.v * qtm * t.v.adjoint() + t.w * qtm * t.w.adjoint());
  // (c), (d) use the congruences T* M T appearing in the map itself.
  const HermitianMatrix pull_uv = HermitianMatrix::project(
      t.u.adjoint() * mm * t.u + t.b.adjoint() * mm * t.b);
  const HermitianMatrix pull_vw = HermitianMatrix::project(
      t.v.adjoint() * mm * t.v + t.w.adjoint() * mm * t.w);

  ConditionReport report;
  report.margin_a = min_eigenvalue(qt - 2.0 * gain_a);
  report.margin_b = min_eigenvalue(qt - 2.0 * gain_b);
  report.margin_c = min_eigenvalue(m - pull_vw - pull_uv);
  report.margin_d_lower = min_eigenvalue(p.q() - pull_uv);
  report.margin_d_upper = min_eigenvalue(m - pull_vw - p.q());
  report.delta = contraction_factor(t, qt);
  report.hermitian_ab = is_hermitian(p.a()) && is_hermitian(p.b());
  report.all_satisfied = report.margin_a > strict_tol &&
                         report.margin_b > strict_tol &&
                         report.margin_c > strict_tol &&
                         report.margin_d_lower > strict_tol &&
                         report.margin_d_upper > strict_tol &&
                         report.delta < 1.0;
  return report;
}

PencilStability pencil_stability(const ComplexMatrix& a, const ComplexMatrix& b,
                                 double cond_limit) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("pencil_stability: inputs must be square and equal size");
  }
  PencilStability result;
  if (a.size() == 0) return result;

  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(a.rows() - 1);
  if (!(smin > 0.0) || smax / smin > cond_limit) {
    return result;  // unsupported: A singular or too ill-conditioned
  }

  const ComplexMatrix pencil = a.partialPivLu().solve(b);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(pencil,
                                              /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("pencil eigenvalue computation did not converge");
  }
  result.eigenvalues.assign(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
            [](const Complex& x, const Complex& y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  result.stable = std::all_of(result.eigenvalues.begin(),
                              result.eigenvalues.end(),
                              [](const Complex& z) { return z.real() < 0.0; });
  result.supported = true;
  return result;
}

}  // namespace gcale
