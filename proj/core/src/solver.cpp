#include "gcale/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gcale {

namespace {

void validate_settings(const SolverSettings& s) {
  if (!(s.tol > 0.0)) throw Error("SolverSettings: tol must be positive");
  if (s.max_iter < 1) throw Error("SolverSettings: max_iter must be >= 1");
  if (s.fixed_iterations && *s.fixed_iterations < 1) {
    throw Error("SolverSettings: fixed_iterations must be >= 1");
  }
}

ResidualSample measure(const HermitianMatrix& x, const HermitianMatrix& y,
                       const HermitianMatrix& q, const TransformSet& t) {
  ResidualSample s;
  s.ex = fixed_point_residual(x, q, t);
  s.ey = fixed_point_residual(y, q, t);
  s.e = std::max(s.ex, s.ey);
  return s;
}

}  // namespace

SolveReport solve_coupled(const ProblemInstance& p, const CertificateConfig& c,
                          const SolverSettings& settings) {
  validate_settings(settings);
  if (p.dim() != c.dim()) {
    throw DimensionError("solve_coupled: problem and certificate dimensions differ");
  }

  SolveReport report;
  report.conditions = check_conditions(p, c);
  if (!report.conditions.all_satisfied && !settings.force) {
    std::ostringstream os;
    os << "certificate conditions not satisfied (margins " << report.conditions.margin_a
       << ", " << report.conditions.margin_b << ", " << report.conditions.margin_c
       << ", " << report.conditions.margin_d_lower << ", "
       << report.conditions.margin_d_upper << "; delta " << report.conditions.delta
       << "); pass force to iterate anyway";
    throw ConditionsNotSatisfiedError(os.str());
  }
  report.delta = report.conditions.delta;

  const TransformSet& t = p.transforms();
  const HermitianMatrix& q = p.q();
  const HermitianMatrix qtilde_half = sqrt_pd(c.qtilde());

  HermitianMatrix x = HermitianMatrix::Zero(p.dim());
  HermitianMatrix y = c.m_cap();

  ResidualSample sample = measure(x, y, q, t);
  const double e0 = sample.e;
  if (settings.record_history) report.residual_history.push_back(sample);
  if (settings.record_iterates) report.iterate_history.emplace_back(x, y);

  const int target = settings.fixed_iterations.value_or(settings.max_iter);
  while (report.iterations < target) {
    HermitianMatrix x_next = fixed_point_map(x, y, q, t);
    HermitianMatrix y_next = settings.order == UpdateOrder::sequential
                                 ? fixed_point_map(y, x_next, q, t)
                                 : fixed_point_map(y, x, q, t);
    if (report.iterations == 0) {
      report.initial_step_weighted =
          std::max(weighted_trace_norm((x_next - x).matrix(), qtilde_half),
                   weighted_trace_norm((y_next - y).matrix(), qtilde_half));
      report.initial_step_spectral =
          std::max(spectral_norm((x_next - x).matrix()),
                   spectral_norm((y_next - y).matrix()));
    }
    x = std::move(x_next);
    y = std::move(y_next);
    ++report.iterations;

    sample = measure(x, y, q, t);
    if (settings.record_history) report.residual_history.push_back(sample);
    if (settings.record_iterates) report.iterate_history.emplace_back(x, y);

    if (sample.e > defaults::divergence_factor * e0) {
      report.diverged = true;
      break;
    }
    if (!settings.fixed_iterations && sample.e <= settings.tol) break;
  }
  report.converged = !report.diverged && sample.e <= settings.tol;

  report.x_hat = x;
  report.y_final = y;
  report.a_priori_bound_final =
      (report.delta > 0.0 && report.delta < 1.0)
          ? a_priori_bound(report.iterations, report.delta,
                           report.initial_step_weighted)
          : std::numeric_limits<double>::infinity();
  report.enclosure_ok = verify_enclosure(x, p, c, t, settings.enclosure_slack);
  report.equation_residual_final = equation_residual(x, p);
  return report;
}

double a_priori_bound(int n, double delta, double d0) {
  if (!(delta > 0.0 && delta < 1.0)) {
    std::ostringstream os;
    os << "a_priori_bound: delta out of range (0,1): " << delta;
    throw Error(os.str());
  }
  if (n < 0) throw Error("a_priori_bound: n must be >= 0");
  if (d0 < 0.0) throw Error("a_priori_bound: d0 must be >= 0");
  return std::pow(delta, n) / (1.0 - delta) * d0;
}

bool verify_enclosure(const HermitianMatrix& x_hat, const ProblemInstance& p,
                      const CertificateConfig& c, const TransformSet& t,
                      double slack) {
  const ComplexMatrix& m = c.m_cap().matrix();
  const HermitianMatrix pull_uv = HermitianMatrix::project(
      t.u.adjoint() * m * t.u + t.b.adjoint() * m * t.b);
  const HermitianMatrix pull_vw = HermitianMatrix::project(
      t.v.adjoint() * m * t.v + t.w.adjoint() * m * t.w);
  const HermitianMatrix lower = p.q() - pull_uv;
  const HermitianMatrix upper = p.q() + pull_vw;
  return loewner_margin(lower, x_hat) >= -slack &&
         loewner_margin(x_hat, upper) >= -slack;
}

}  // namespace gcale
