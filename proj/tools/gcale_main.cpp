// Command-line front end: check / solve / oracle / compare.
//
// Exit codes: 0 success, 1 input error, 2 conditions failed,
// 3 non-convergence or divergence, 4 singular direct operator,
// 5 a-priori bound violated (compare only).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gcale/gcale.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_conditions = 2;
constexpr int exit_noconv = 3;
constexpr int exit_singular = 4;
constexpr int exit_bound = 5;

struct CommandExit {
  int code;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", x);
  return buf;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

void print_matrix(std::ostream& os, const gcale::ComplexMatrix& m) {
  const bool real_only = m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0;
  char buf[96];
  for (gcale::Index i = 0; i < m.rows(); ++i) {
    os << " ";
    for (gcale::Index j = 0; j < m.cols(); ++j) {
      if (real_only) {
        std::snprintf(buf, sizeof(buf), " % .10e", m(i, j).real());
      } else {
        std::snprintf(buf, sizeof(buf), " % .10e%+.10ei", m(i, j).real(),
                      m(i, j).imag());
      }
      os << buf;
    }
    os << '\n';
  }
}

void print_conditions(const gcale::ConditionReport& r,
                      gcale::CertificatePreset preset, gcale::Index n) {
  std::cout << "n               = " << n << '\n'
            << "preset          = " << gcale::to_string(preset) << '\n'
            << "margin_a        = " << fmt(r.margin_a) << '\n'
            << "margin_b        = " << fmt(r.margin_b) << '\n'
            << "margin_c        = " << fmt(r.margin_c) << '\n'
            << "margin_d_lower  = " << fmt(r.margin_d_lower) << '\n'
            << "margin_d_upper  = " << fmt(r.margin_d_upper) << '\n'
            << "delta           = " << fmt(r.delta) << '\n'
            << "hermitian_ab    = " << yesno(r.hermitian_ab) << '\n'
            << "all_satisfied   = " << yesno(r.all_satisfied) << '\n';
}

void print_solve_summary(const gcale::SolveReport& r) {
  std::cout << "iterations      = " << r.iterations << '\n'
            << "converged       = " << yesno(r.converged) << '\n'
            << "diverged        = " << yesno(r.diverged) << '\n';
  if (!r.residual_history.empty()) {
    const gcale::ResidualSample& last = r.residual_history.back();
    std::cout << "E_final         = " << fmt(last.e) << '\n'
              << "E_final_X       = " << fmt(last.ex) << '\n'
              << "E_final_Y       = " << fmt(last.ey) << '\n';
  }
  std::cout << "equation_resid  = " << fmt(r.equation_residual_final) << '\n'
            << "d0_weighted     = " << fmt(r.initial_step_weighted) << '\n'
            << "d0_spectral     = " << fmt(r.initial_step_spectral) << '\n'
            << "a_priori_bound  = "
            << (std::isfinite(r.a_priori_bound_final)
                    ? fmt(r.a_priori_bound_final)
                    : std::string("inf"))
            << '\n'
            << "enclosure_ok    = " << yesno(r.enclosure_ok) << '\n';
  if (r.x_hat.dim() > 0 && r.x_hat.dim() <= 12) {
    std::cout << "x_hat =\n";
    print_matrix(std::cout, r.x_hat.matrix());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    throw CommandExit{exit_input};
  }
  out << text;
}

struct CertFlags {
  std::string preset = "cr1";
  std::string qtilde_path;
  std::string m_path;
};

void add_certificate_flags(CLI::App* cmd, CertFlags& f) {
  cmd->add_option("--preset", f.preset,
                  "Certificate preset: cr1 (Q~=Q, M=2Q) or cr2 (Q~=M=I); "
                  "both require Hermitian A and B")
      ->check(CLI::IsMember({"cr1", "cr2"}));
  auto* qt = cmd->add_option("--qtilde", f.qtilde_path,
                             "Custom Q~ witness (gcale-matrix file)");
  auto* m = cmd->add_option("--m", f.m_path,
                            "Custom M witness (gcale-matrix file)");
  qt->needs(m);
  m->needs(qt);
}

gcale::ProblemInstance load_problem_or_exit(const std::string& path,
                                            double asym_tol) {
  try {
    return gcale::load_problem(path, asym_tol);
  } catch (const gcale::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    throw CommandExit{exit_input};
  }
}

gcale::CertificateConfig certificate_or_exit(const gcale::ProblemInstance& p,
                                             const CertFlags& f,
                                             double asym_tol) {
  try {
    if (!f.qtilde_path.empty()) {
      return gcale::CertificateConfig(
          gcale::load_hermitian(f.qtilde_path, asym_tol),
          gcale::load_hermitian(f.m_path, asym_tol));
    }
    if (f.preset == "cr2") return gcale::preset_cr2(p, asym_tol);
    return gcale::preset_cr1(p, asym_tol);
  } catch (const gcale::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    throw CommandExit{exit_input};
  } catch (const gcale::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    throw CommandExit{exit_conditions};
  }
}

struct SolveFlags {
  CertFlags cert;
  double tol = gcale::defaults::solve_tol;
  int max_iter = gcale::defaults::max_iterations;
  std::optional<int> fixed_iters;
  std::string order = "sequential";
  bool force = false;
  double asym_tol = gcale::defaults::asym_tol;
  double strict_tol = 0.0;
  double enclosure_slack = gcale::defaults::enclosure_slack;
  std::string history_path;
  std::string report_path;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  add_certificate_flags(cmd, f.cert);
  cmd->add_option("--tol", f.tol, "Stopping threshold on E_n")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fixed-iters", f.fixed_iters,
                  "Run exactly this many iterations (ignores --tol)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--order", f.order,
                  "Update order within a step: sequential (default) or "
                  "simultaneous")
      ->check(CLI::IsMember({"sequential", "simultaneous"}));
  cmd->add_flag("--force", f.force,
                "Iterate even if the certificate conditions fail");
  cmd->add_option("--asym-tol", f.asym_tol,
                  "Relative Hermitian rejection threshold");
  cmd->add_option("--strict-tol", f.strict_tol,
                  "Margin that each strict inequality must exceed");
  cmd->add_option("--enclosure-slack", f.enclosure_slack,
                  "Loewner slack accepted when verifying the enclosure");
  cmd->add_option("--history", f.history_path, "Write residual history CSV");
  cmd->add_option("--report", f.report_path, "Write JSON run report");
}

gcale::SolverSettings settings_from_flags(const SolveFlags& f,
                                          bool record_iterates) {
  gcale::SolverSettings s;
  s.tol = f.tol;
  s.max_iter = f.max_iter;
  s.fixed_iterations = f.fixed_iters;
  s.order = f.order == "simultaneous" ? gcale::UpdateOrder::simultaneous
                                      : gcale::UpdateOrder::sequential;
  s.record_history = true;
  s.record_iterates = record_iterates;
  s.enclosure_slack = f.enclosure_slack;
  // Conditions are checked (and reported) before solve_coupled runs, so the
  // exit-2 decision is made here in the tool; the solver then proceeds.
  s.force = true;
  return s;
}

int run_check(const std::string& input, const CertFlags& cert,
              double strict_tol, double asym_tol, bool with_pencil,
              const std::string& report_path) {
  const gcale::ProblemInstance p = load_problem_or_exit(input, asym_tol);
  const gcale::CertificateConfig c = certificate_or_exit(p, cert, asym_tol);
  const gcale::ConditionReport report =
      gcale::check_conditions(p, c, strict_tol);
  print_conditions(report, c.preset(), p.dim());

  std::optional<gcale::PencilStability> pencil;
  if (with_pencil) {
    pencil = gcale::pencil_stability(p.a(), p.b());
    std::cout << "pencil_supported = " << yesno(pencil->supported) << '\n';
    if (pencil->supported) {
      std::cout << "pencil_stable    = " << yesno(pencil->stable) << '\n';
      for (const gcale::Complex& z : pencil->eigenvalues) {
        std::cout << "pencil_eig       = " << fmt(z.real()) << " "
                  << fmt(z.imag()) << "i\n";
      }
    }
  }
  if (!report_path.empty()) {
    write_text_file(report_path,
                    gcale::serialize_check_report(report, c.preset(), pencil));
  }
  return report.all_satisfied ? exit_ok : exit_conditions;
}

// Shared by solve and compare: conditions gate, iteration, history/report.
struct SolveOutcome {
  gcale::SolveReport report;
  gcale::CertificateConfig certificate;
  double check_seconds = 0.0;
  double solve_seconds = 0.0;
};

SolveOutcome run_iteration(const gcale::ProblemInstance& p,
                           const SolveFlags& flags, bool record_iterates) {
  const auto t_check = Clock::now();
  gcale::CertificateConfig c = certificate_or_exit(p, flags.cert, flags.asym_tol);
  const gcale::ConditionReport conditions =
      gcale::check_conditions(p, c, flags.strict_tol);
  const double check_seconds = seconds_since(t_check);

  print_conditions(conditions, c.preset(), p.dim());
  if (!conditions.all_satisfied && !flags.force) {
    std::cerr << "error: certificate conditions not satisfied; "
                 "pass --force to iterate anyway\n";
    throw CommandExit{exit_conditions};
  }

  const auto t_solve = Clock::now();
  gcale::SolveReport report =
      gcale::solve_coupled(p, c, settings_from_flags(flags, record_iterates));
  const double solve_seconds = seconds_since(t_solve);
  return SolveOutcome{std::move(report), std::move(c), check_seconds,
                      solve_seconds};
}

int run_solve(const std::string& input, const SolveFlags& flags) {
  const auto t_total = Clock::now();
  const gcale::ProblemInstance p = load_problem_or_exit(input, flags.asym_tol);
  SolveOutcome outcome = run_iteration(p, flags, /*record_iterates=*/false);
  print_solve_summary(outcome.report);

  if (!flags.history_path.empty()) {
    std::ofstream os(flags.history_path, std::ios::binary);
    if (!os) {
      std::cerr << "error: cannot write " << flags.history_path << '\n';
      return exit_input;
    }
    gcale::write_history_csv(os, outcome.report);
  }
  if (!flags.report_path.empty()) {
    gcale::RunReport rr = gcale::make_run_report(
        outcome.report, outcome.certificate.preset(), /*include_solution=*/true);
    rr.timings.check_seconds = outcome.check_seconds;
    rr.timings.solve_seconds = outcome.solve_seconds;
    rr.timings.total_seconds = seconds_since(t_total);
    write_text_file(flags.report_path, gcale::serialize_report(rr));
  }
  return outcome.report.converged ? exit_ok : exit_noconv;
}

int run_oracle(const std::string& input, double asym_tol,
               const std::string& report_path) {
  const gcale::ProblemInstance p = load_problem_or_exit(input, asym_tol);
  gcale::OracleResult result;
  try {
    result = gcale::solve_direct(p);
  } catch (const gcale::SingularOperatorError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_singular;
  } catch (const gcale::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  std::cout << "n               = " << p.dim() << '\n'
            << "definite        = " << yesno(result.definite) << '\n'
            << "residual        = " << fmt(result.residual) << '\n'
            << "herm_defect     = " << fmt(result.hermiticity_defect) << '\n';
  if (p.dim() <= 12) {
    std::cout << "x =\n";
    print_matrix(std::cout, result.x.matrix());
  }
  if (!report_path.empty()) {
    write_text_file(report_path, gcale::serialize_oracle_result(result));
  }
  return exit_ok;
}

int run_compare(const std::string& input, const SolveFlags& flags) {
  const auto t_total = Clock::now();
  const gcale::ProblemInstance p = load_problem_or_exit(input, flags.asym_tol);
  SolveOutcome outcome = run_iteration(p, flags, /*record_iterates=*/true);
  const gcale::SolveReport& sr = outcome.report;
  print_solve_summary(sr);

  const auto t_oracle = Clock::now();
  gcale::OracleResult oracle;
  try {
    oracle = gcale::solve_direct(p);
  } catch (const gcale::SingularOperatorError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_singular;
  } catch (const gcale::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  const double oracle_seconds = seconds_since(t_oracle);

  const gcale::HermitianMatrix qtilde_half =
      gcale::sqrt_pd(outcome.certificate.qtilde());
  gcale::OracleComparison cmp;
  cmp.true_error_spectral =
      gcale::spectral_norm(sr.x_hat.matrix() - oracle.x.matrix());
  cmp.true_error_weighted = gcale::weighted_trace_norm(
      sr.x_hat.matrix() - oracle.x.matrix(), qtilde_half);
  cmp.oracle_residual = oracle.residual;

  // Per-iterate distances to the direct solution, for the CSV and the
  // error-bound verdict.
  std::vector<std::array<double, 2>> true_errors;
  true_errors.reserve(sr.iterate_history.size());
  for (const auto& [xn, yn] : sr.iterate_history) {
    true_errors.push_back(
        {gcale::weighted_trace_norm(xn.matrix() - oracle.x.matrix(), qtilde_half),
         gcale::weighted_trace_norm(yn.matrix() - oracle.x.matrix(),
                                    qtilde_half)});
  }

  gcale::BoundCheck bound;
  const bool bound_applicable = sr.delta > 0.0 && sr.delta < 1.0;
  if (bound_applicable) {
    bound.ok = true;
    const double slack =
        1e-9 * sr.initial_step_weighted / (1.0 - sr.delta);
    for (std::size_t i = 0; i < true_errors.size(); ++i) {
      const double lhs = std::max(true_errors[i][0], true_errors[i][1]);
      const double rhs = gcale::a_priori_bound(static_cast<int>(i), sr.delta,
                                               sr.initial_step_weighted);
      if (lhs > rhs + slack) {
        bound.ok = false;
        break;
      }
    }
  } else {
    bound.skipped_reason = "delta >= 1";
  }

  std::cout << "oracle_residual      = " << fmt(cmp.oracle_residual) << '\n'
            << "true_error_spectral  = " << fmt(cmp.true_error_spectral) << '\n'
            << "true_error_weighted  = " << fmt(cmp.true_error_weighted) << '\n';
  if (bound_applicable) {
    std::cout << "bound_ok             = " << yesno(bound.ok) << '\n';
  } else {
    std::cout << "bound_skipped        = " << bound.skipped_reason << '\n';
  }

  if (!flags.history_path.empty()) {
    std::ofstream os(flags.history_path, std::ios::binary);
    if (!os) {
      std::cerr << "error: cannot write " << flags.history_path << '\n';
      return exit_input;
    }
    gcale::write_history_csv(os, sr, true_errors);
  }
  if (!flags.report_path.empty()) {
    gcale::RunReport rr = gcale::make_run_report(
        sr, outcome.certificate.preset(), /*include_solution=*/true);
    rr.oracle_comparison = cmp;
    rr.bound_check = bound;
    rr.timings.check_seconds = outcome.check_seconds;
    rr.timings.solve_seconds = outcome.solve_seconds;
    rr.timings.oracle_seconds = oracle_seconds;
    rr.timings.total_seconds = seconds_since(t_total);
    write_text_file(flags.report_path, gcale::serialize_report(rr));
  }

  if (!sr.converged) return exit_noconv;
  if (bound_applicable && !bound.ok) return exit_bound;
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for A*XB + B*XA = -Q (Hermitian positive definite Q) "
               "via a certified coupled fixed-point iteration"};
  app.require_subcommand(1);
  int rc = exit_ok;

  // check
  auto* check = app.add_subcommand(
      "check", "Verify the certificate conditions and print margins");
  static std::string check_input;
  static CertFlags check_cert;
  static double check_strict_tol = 0.0;
  static double check_asym_tol = gcale::defaults::asym_tol;
  static bool check_pencil = false;
  static std::string check_report;
  check->add_option("input", check_input, "Problem file")->required();
  add_certificate_flags(check, check_cert);
  check->add_option("--strict-tol", check_strict_tol,
                    "Margin that each strict inequality must exceed");
  check->add_option("--asym-tol", check_asym_tol,
                    "Relative Hermitian rejection threshold");
  check->add_flag("--pencil", check_pencil,
                  "Also print the pencil stability diagnostic");
  check->add_option("--report", check_report, "Write JSON check report");
  check->callback([&rc]() {
    rc = run_check(check_input, check_cert, check_strict_tol, check_asym_tol,
                   check_pencil, check_report);
  });

  // solve
  auto* solve = app.add_subcommand(
      "solve", "Run the coupled fixed-point iteration");
  static std::string solve_input;
  static SolveFlags solve_flags;
  solve->add_option("input", solve_input, "Problem file")->required();
  add_solve_flags(solve, solve_flags);
  solve->callback([&rc]() { rc = run_solve(solve_input, solve_flags); });

  // oracle
  auto* oracle = app.add_subcommand(
      "oracle", "Solve directly by Kronecker vectorization");
  static std::string oracle_input;
  static double oracle_asym_tol = gcale::defaults::asym_tol;
  static std::string oracle_report;
  oracle->add_option("input", oracle_input, "Problem file")->required();
  oracle->add_option("--asym-tol", oracle_asym_tol,
                     "Relative Hermitian rejection threshold");
  oracle->add_option("--report", oracle_report, "Write JSON oracle report");
  oracle->callback([&rc]() {
    rc = run_oracle(oracle_input, oracle_asym_tol, oracle_report);
  });

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Run both solvers and verify the a-priori error bound");
  static std::string compare_input;
  static SolveFlags compare_flags;
  compare->add_option("input", compare_input, "Problem file")->required();
  add_solve_flags(compare, compare_flags);
  compare->callback(
      [&rc]() { rc = run_compare(compare_input, compare_flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  } catch (const CommandExit& e) {
    return e.code;
  } catch (const gcale::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return rc;
}
