#pragma once

#include <random>
#include <utility>

#include "gcale/gcale.hpp"

// Shared test generators: random complex/Hermitian/PSD matrices and the
// near-scalar instance family on which the certificate conditions can always
// be made to hold by shrinking the perturbations.

namespace testutil {

inline gcale::ComplexMatrix random_complex(std::mt19937& rng, gcale::Index n,
                                           double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  gcale::ComplexMatrix m(n, n);
  for (gcale::Index i = 0; i < n; ++i) {
    for (gcale::Index j = 0; j < n; ++j) {
      m(i, j) = scale * gcale::Complex(g(rng), g(rng));
    }
  }
  return m;
}

inline gcale::HermitianMatrix random_hermitian(std::mt19937& rng,
                                               gcale::Index n,
                                               double scale = 1.0) {
  return gcale::HermitianMatrix::project(random_complex(rng, n, scale));
}

inline gcale::HermitianMatrix random_psd(std::mt19937& rng, gcale::Index n,
                                         double scale = 1.0) {
  const gcale::ComplexMatrix g = random_complex(rng, n);
  return gcale::HermitianMatrix::project(scale * (g.adjoint() * g));
}

struct ConditionedInstance {
  gcale::ProblemInstance problem;
  gcale::CertificateConfig certificate;
};

// A = -(1+eps) I + s P_A, B = beta I + s P_B with Hermitian perturbations,
// s halved until check_conditions passes. For the cr2 preset Q is placed
// near the midpoint of the admissible interval; for cr1 it is a perturbed
// multiple of the identity.
inline ConditionedInstance random_conditioned_instance(
    std::mt19937& rng, gcale::Index n,
    gcale::CertificatePreset preset = gcale::CertificatePreset::cr1) {
  using namespace gcale;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double eps = -0.08 + 0.16 * u01(rng);
    const double beta = 0.40 + 0.15 * u01(rng);
    const double q0 = 0.5 + 1.5 * u01(rng);
    const HermitianMatrix pa = random_hermitian(rng, n);
    const HermitianMatrix pb = random_hermitian(rng, n);
    const HermitianMatrix pq = random_hermitian(rng, n);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    double s = 0.2;
    for (int halving = 0; halving < 60; ++halving, s *= 0.5) {
      const ComplexMatrix a = -(1.0 + eps) * id + s * pa.matrix();
      const ComplexMatrix b = beta * id + s * pb.matrix();

      ComplexMatrix q_raw;
      if (preset == CertificatePreset::cr2) {
        const TransformSet t = compute_transforms(a, b);
        const ComplexMatrix lo = t.u.adjoint() * t.u + t.b.adjoint() * t.b;
        const ComplexMatrix hi = id - (t.v.adjoint() * t.v + t.w.adjoint() * t.w);
        q_raw = 0.5 * (lo + hi) + (0.1 * s) * pq.matrix();
      } else {
        q_raw = q0 * (id + s * pq.matrix());
      }
      const HermitianMatrix q = HermitianMatrix::project(q_raw);
      if (!is_positive_definite(q)) continue;

      ProblemInstance p(a, b, q);
      CertificateConfig c = preset == CertificatePreset::cr2 ? preset_cr2(p)
                                                             : preset_cr1(p);
      if (check_conditions(p, c).all_satisfied) {
        return ConditionedInstance{std::move(p), std::move(c)};
      }
    }
  }
  throw gcale::Error("random_conditioned_instance: no instance found");
}

}  // namespace testutil
