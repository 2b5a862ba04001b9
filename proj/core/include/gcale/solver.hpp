#pragma once

#include <optional>
#include <vector>

#include "gcale/conditions.hpp"

namespace gcale {

/// Order of the two updates within one iteration step.
///
/// sequential   X_{n+1} = F(X_n, Y_n), then Y_{n+1} = F(Y_n, X_{n+1}).
///              Uses the freshly computed X and converges markedly faster;
///              this is the order that reproduces the reference residuals.
/// simultaneous X_{n+1} = F(X_n, Y_n), Y_{n+1} = F(Y_n, X_n); both updates
///              read only step-n values, so they may run in parallel.
enum class UpdateOrder { sequential, simultaneous };

struct SolverSettings {
  double tol = defaults::solve_tol;  // stop once E_n = max{E_n(X), E_n(Y)} <= tol
  int max_iter = defaults::max_iterations;
  bool record_history = true;    // keep per-iterate residual triples
  bool record_iterates = false;  // additionally keep every (X_n, Y_n) pair
  std::optional<int> fixed_iterations;  // run exactly this many steps
  UpdateOrder order = UpdateOrder::sequential;
  bool force = false;  // run even if the certificate conditions fail
  double enclosure_slack = defaults::enclosure_slack;
};

/// Fixed-point defect norms at one iterate: E_i(X), E_i(Y) and their max.
struct ResidualSample {
  double ex = 0.0;
  double ey = 0.0;
  double e = 0.0;
};

struct SolveReport {
  HermitianMatrix x_hat;    // accepted approximation, the final X_n
  HermitianMatrix y_final;  // final Y_n
  int iterations = 0;
  // Index i holds the residuals of iterate i; entry 0 is the seed pair, so
  // the length is iterations + 1 when history is recorded.
  std::vector<ResidualSample> residual_history;
  std::vector<std::pair<HermitianMatrix, HermitianMatrix>> iterate_history;
  double delta = 0.0;
  // d0 = max{||X_1 - X_0||, ||Y_1 - Y_0||}; the contraction estimate is
  // proven in the weighted trace norm, the spectral value is for display.
  double initial_step_weighted = 0.0;
  double initial_step_spectral = 0.0;
  double a_priori_bound_final = 0.0;  // delta^n/(1-delta) * d0; +inf if delta >= 1
  bool enclosure_ok = false;
  bool converged = false;
  bool diverged = false;
  double equation_residual_final = 0.0;
  ConditionReport conditions;
};

/// Runs the coupled iteration from X_0 = 0, Y_0 = M.
///
/// The certificate conditions are checked first; failure raises
/// ConditionsNotSatisfiedError unless settings.force is set. Stops when
/// E_n <= tol, after fixed_iterations steps when given, at max_iter, or as
/// soon as E_n exceeds 1e6 * E_0 (divergence guard, reported not thrown).
SolveReport solve_coupled(const ProblemInstance& p, const CertificateConfig& c,
                          const SolverSettings& settings = {});

/// Geometric error estimate delta^n/(1-delta) * d0. Requires delta in (0,1),
/// d0 >= 0, n >= 0; d0 is measured in the weighted trace norm ||.||_{1,Q~}.
double a_priori_bound(int n, double delta, double d0);

/// True iff x_hat lies in the certified Loewner interval
/// [Q - (U*MU + B*MB), Q + (V*MV + W*MW)] up to the given slack.
bool verify_enclosure(const HermitianMatrix& x_hat, const ProblemInstance& p,
                      const CertificateConfig& c, const TransformSet& t,
                      double slack = defaults::enclosure_slack);

}  // namespace gcale
