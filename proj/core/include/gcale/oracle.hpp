#pragma once

#include "gcale/reformulation.hpp"

namespace gcale {

struct OracleResult {
  HermitianMatrix x;
  double residual = 0.0;            // equation residual of the projected solution
  double hermiticity_defect = 0.0;  // ||X_raw - X_raw*|| before projection
  bool definite = false;            // min eigenvalue > 0
};

/// Direct solution of A*XB + B*XA = -Q by Kronecker vectorization and dense
/// LU. Independent of the fixed-point path; intended as a cross-check, so it
/// refuses N > 100 (the linear system is N^2 x N^2).
OracleResult solve_direct(const ProblemInstance& p);

enum class ErrorNorm { spectral, weighted_trace };

/// Distance from x_approx to the directly computed solution, in the chosen
/// norm; weighted_trace uses qtilde as the weight.
double true_error(const HermitianMatrix& x_approx, const ProblemInstance& p,
                  ErrorNorm norm, const HermitianMatrix& qtilde);

double true_error(const HermitianMatrix& x_approx, const ProblemInstance& p);

}  // namespace gcale
