#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gcale/oracle.hpp"
#include "gcale/solver.hpp"

// Versioned JSON file formats and the run-report / history serialization
// used by the CLI. Schemas are documented in the README; matrices are stored
// row-major with complex entries as [re, im] pairs (bare reals are promoted
// with im = 0 on read).

namespace gcale {

ProblemInstance parse_problem(const std::string& text,
                              double asym_tol = defaults::asym_tol);
ProblemInstance load_problem(const std::filesystem::path& path,
                             double asym_tol = defaults::asym_tol);
std::string serialize_problem(const ProblemInstance& p);
void save_problem(const ProblemInstance& p, const std::filesystem::path& path);

/// Standalone matrix file (format "gcale-matrix"), used for custom
/// certificate witnesses.
HermitianMatrix load_hermitian(const std::filesystem::path& path,
                               double asym_tol = defaults::asym_tol);
std::string serialize_matrix(const ComplexMatrix& m);
void save_matrix(const ComplexMatrix& m, const std::filesystem::path& path);

struct OracleComparison {
  double true_error_spectral = 0.0;
  double true_error_weighted = 0.0;
  double oracle_residual = 0.0;
};

struct BoundCheck {
  bool ok = false;
  std::string skipped_reason;  // nonempty iff the check was skipped
};

struct PhaseTimings {
  double check_seconds = 0.0;
  double solve_seconds = 0.0;
  double oracle_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Serializable summary of a solve (or compare) run.
struct RunReport {
  CertificatePreset preset = CertificatePreset::custom;
  ConditionReport conditions;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
  double final_residual = 0.0;
  double final_residual_x = 0.0;
  double final_residual_y = 0.0;
  double equation_residual = 0.0;
  double delta = 0.0;
  bool enclosure_ok = false;
  double a_priori_bound_final = 0.0;
  double initial_step_weighted = 0.0;
  double initial_step_spectral = 0.0;
  std::optional<ComplexMatrix> x_hat;
  std::optional<OracleComparison> oracle_comparison;
  std::optional<BoundCheck> bound_check;
  PhaseTimings timings;
};

RunReport make_run_report(const SolveReport& s, CertificatePreset preset,
                          bool include_solution = true);

std::string serialize_report(const RunReport& r);
RunReport parse_report(const std::string& text);
void save_report(const RunReport& r, const std::filesystem::path& path);
RunReport load_report(const std::filesystem::path& path);

/// Condition-check report (format "gcale-check-report"); write-only.
std::string serialize_check_report(const ConditionReport& report,
                                   CertificatePreset preset,
                                   const std::optional<PencilStability>& pencil);

/// Direct-solver report (format "gcale-oracle-report"); write-only.
std::string serialize_oracle_result(const OracleResult& result);

/// Residual history as CSV with the fixed header
///   i,E_i(X),E_i(Y),E_i,a_priori_bound_i
/// The bound column reads "nan" when delta is outside (0,1). The overload
/// taking per-iterate true errors (weighted trace norm, X then Y) appends
/// columns true_error_X_weighted,true_error_Y_weighted.
void write_history_csv(std::ostream& os, const SolveReport& r);
void write_history_csv(std::ostream& os, const SolveReport& r,
                       const std::vector<std::array<double, 2>>& true_errors);

}  // namespace gcale
