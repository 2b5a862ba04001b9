#pragma once

#include <vector>

#include "gcale/reformulation.hpp"

namespace gcale {

enum class CertificatePreset { custom, cr1, cr2 };

const char* to_string(CertificatePreset preset) noexcept;

/// Positive definite witness pair (Q~, M). Preset cr1 is (Q, 2Q), preset cr2
/// is (I, I); both require Hermitian A and B.
class CertificateConfig {
 public:
  CertificateConfig(HermitianMatrix qtilde, HermitianMatrix m_cap,
                    CertificatePreset preset = CertificatePreset::custom);

  const HermitianMatrix& qtilde() const noexcept { return qtilde_; }
  const HermitianMatrix& m_cap() const noexcept { return m_cap_; }
  CertificatePreset preset() const noexcept { return preset_; }
  Index dim() const noexcept { return qtilde_.dim(); }

 private:
  HermitianMatrix qtilde_;
  HermitianMatrix m_cap_;
  CertificatePreset preset_;
};

CertificateConfig preset_cr1(const ProblemInstance& p,
                             double asym_tol = defaults::asym_tol);
CertificateConfig preset_cr2(const ProblemInstance& p,
                             double asym_tol = defaults::asym_tol);

/// Smallest eigenvalues of the strict-inequality gaps, the contraction
/// factor, and the combined verdict. A positive margin means the respective
/// strict inequality holds with that much room.
struct ConditionReport {
  double margin_a = 0.0;        // min eig(Q~ - 2(U Q~ U* + B Q~ B*))
  double margin_b = 0.0;        // min eig(Q~ - 2(V Q~ V* + W Q~ W*))
  double margin_c = 0.0;        // min eig(M - (V*MV + W*MW) - (U*MU + B*MB))
  double margin_d_lower = 0.0;  // min eig(Q - (U*MU + B*MB))
  double margin_d_upper = 0.0;  // min eig(M - (V*MV + W*MW) - Q)
  double delta = 0.0;           // contraction factor
  bool all_satisfied = false;   // every margin > strict_tol and delta < 1
  bool hermitian_ab = false;    // whether A and B are Hermitian
};

/// delta = 2 max{ ||Q~^{-1/2}(V Q~ V* + W Q~ W*)Q~^{-1/2}||,
///                ||Q~^{-1/2}(U Q~ U* + B Q~ B*)Q~^{-1/2}|| }.
/// The iteration contracts in ||.||_{1,Q~} with this factor when the margins
/// hold; it is invariant under positive scaling of Q~.
double contraction_factor(const TransformSet& t, const HermitianMatrix& qtilde);

ConditionReport check_conditions(const ProblemInstance& p,
                                 const CertificateConfig& c,
                                 double strict_tol = 0.0);

/// Solvability diagnostic from the pencil lambda*A - B. Supported only when
/// A is invertible with a moderate condition estimate; the eigenvalues are
/// then those of A^{-1}B, and stability means all real parts are negative.
struct PencilStability {
  std::vector<Complex> eigenvalues;
  bool stable = false;
  bool supported = false;
};

PencilStability pencil_stability(const ComplexMatrix& a, const ComplexMatrix& b,
                                 double cond_limit = defaults::pencil_cond_limit);

}  // namespace gcale
