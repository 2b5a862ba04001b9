#include "gcale/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace gcale {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path.string());
  out << text;
  if (!out) throw ParseError("write failed: " + path.string());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const json& require_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

void require_format(const json& j, const char* format) {
  const json& f = require_field(j, "format");
  if (!f.is_string() || f.get<std::string>() != format) {
    throw ParseError(std::string("field \"format\" must be \"") + format + "\"");
  }
  const json& v = require_field(j, "version");
  if (!v.is_number_integer() || v.get<int>() != 1) {
    throw ParseError("field \"version\" must be 1");
  }
}

double parse_finite_real(const json& e, const std::string& where) {
  if (!e.is_number()) throw ParseError(where + ": expected a number");
  const double x = e.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + ": non-finite value");
  return x;
}

Complex parse_entry(const json& e, const std::string& where) {
  if (e.is_number()) return Complex(parse_finite_real(e, where), 0.0);
  if (e.is_array() && e.size() == 2) {
    return Complex(parse_finite_real(e[0], where + "[0]"),
                   parse_finite_real(e[1], where + "[1]"));
  }
  throw ParseError(where + ": expected a number or an [re, im] pair");
}

ComplexMatrix parse_matrix(const json& rows, Index n, const std::string& name) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
    std::ostringstream os;
    os << "field \"" << name << "\": expected " << n << " rows";
    throw ParseError(os.str());
  }
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      std::ostringstream os;
      os << "field \"" << name << "\", row " << i << ": expected " << n
         << " entries";
      throw ParseError(os.str());
    }
    for (Index j = 0; j < n; ++j) {
      std::ostringstream where;
      where << "field \"" << name << "\"[" << i << "][" << j << "]";
      m(i, j) = parse_entry(row[static_cast<std::size_t>(j)], where.str());
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Index parse_dim(const json& j) {
  const json& n = require_field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) {
    throw ParseError("field \"n\" must be a positive integer");
  }
  return static_cast<Index>(n.get<long long>());
}

json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

double null_as_infinity(const json& j, const std::string& where) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return parse_finite_real(j, where);
}

CertificatePreset preset_from_string(const std::string& s) {
  if (s == "cr1") return CertificatePreset::cr1;
  if (s == "cr2") return CertificatePreset::cr2;
  if (s == "custom") return CertificatePreset::custom;
  throw ParseError("field \"preset\": unknown value \"" + s + "\"");
}

json conditions_to_json(const ConditionReport& c) {
  return json{{"margin_a", c.margin_a},
              {"margin_b", c.margin_b},
              {"margin_c", c.margin_c},
              {"margin_d_lower", c.margin_d_lower},
              {"margin_d_upper", c.margin_d_upper},
              {"delta", c.delta},
              {"all_satisfied", c.all_satisfied},
              {"hermitian_ab", c.hermitian_ab}};
}

ConditionReport conditions_from_json(const json& j) {
  ConditionReport c;
  c.margin_a = parse_finite_real(require_field(j, "margin_a"), "margin_a");
  c.margin_b = parse_finite_real(require_field(j, "margin_b"), "margin_b");
  c.margin_c = parse_finite_real(require_field(j, "margin_c"), "margin_c");
  c.margin_d_lower =
      parse_finite_real(require_field(j, "margin_d_lower"), "margin_d_lower");
  c.margin_d_upper =
      parse_finite_real(require_field(j, "margin_d_upper"), "margin_d_upper");
  c.delta = parse_finite_real(require_field(j, "delta"), "delta");
  c.all_satisfied = require_field(j, "all_satisfied").get<bool>();
  c.hermitian_ab = require_field(j, "hermitian_ab").get<bool>();
  return c;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

ProblemInstance parse_problem(const std::string& text, double asym_tol) {
  const json j = parse_json(text);
  require_format(j, "gcale-problem");
  const Index n = parse_dim(j);
  ComplexMatrix a = parse_matrix(require_field(j, "a"), n, "a");
  ComplexMatrix b = parse_matrix(require_field(j, "b"), n, "b");
  ComplexMatrix q_raw = parse_matrix(require_field(j, "q"), n, "q");
  return ProblemInstance(std::move(a), std::move(b),
                         HermitianMatrix(q_raw, asym_tol));
}

ProblemInstance load_problem(const std::filesystem::path& path,
                             double asym_tol) {
  try {
    return parse_problem(read_file(path), asym_tol);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_problem(const ProblemInstance& p) {
  json j{{"format", "gcale-problem"},
         {"version", 1},
         {"n", p.dim()},
         {"a", matrix_to_json(p.a())},
         {"b", matrix_to_json(p.b())},
         {"q", matrix_to_json(p.q().matrix())}};
  return j.dump(2) + "\n";
}

void save_problem(const ProblemInstance& p, const std::filesystem::path& path) {
  write_file(path, serialize_problem(p));
}

HermitianMatrix load_hermitian(const std::filesystem::path& path,
                               double asym_tol) {
  try {
    const json j = parse_json(read_file(path));
    require_format(j, "gcale-matrix");
    const Index n = parse_dim(j);
    return HermitianMatrix(parse_matrix(require_field(j, "m"), n, "m"),
                           asym_tol);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_matrix(const ComplexMatrix& m) {
  json j{{"format", "gcale-matrix"},
         {"version", 1},
         {"n", m.rows()},
         {"m", matrix_to_json(m)}};
  return j.dump(2) + "\n";
}

void save_matrix(const ComplexMatrix& m, const std::filesystem::path& path) {
  write_file(path, serialize_matrix(m));
}

RunReport make_run_report(const SolveReport& s, CertificatePreset preset,
                          bool include_solution) {
  RunReport r;
  r.preset = preset;
  r.conditions = s.conditions;
  r.iterations = s.iterations;
  r.converged = s.converged;
  r.diverged = s.diverged;
  if (!s.residual_history.empty()) {
    const ResidualSample& last = s.residual_history.back();
    r.final_residual = last.e;
    r.final_residual_x = last.ex;
    r.final_residual_y = last.ey;
  }
  r.equation_residual = s.equation_residual_final;
  r.delta = s.delta;
  r.enclosure_ok = s.enclosure_ok;
  r.a_priori_bound_final = s.a_priori_bound_final;
  r.initial_step_weighted = s.initial_step_weighted;
  r.initial_step_spectral = s.initial_step_spectral;
  if (include_solution) r.x_hat = s.x_hat.matrix();
  return r;
}

std::string serialize_report(const RunReport& r) {
  json solve{{"iterations", r.iterations},
             {"converged", r.converged},
             {"diverged", r.diverged},
             {"final_residual", r.final_residual},
             {"final_residual_x", r.final_residual_x},
             {"final_residual_y", r.final_residual_y},
             {"equation_residual", r.equation_residual},
             {"delta", r.delta},
             {"enclosure_ok", r.enclosure_ok},
             {"a_priori_bound_final", finite_or_null(r.a_priori_bound_final)},
             {"initial_step_weighted", r.initial_step_weighted},
             {"initial_step_spectral", r.initial_step_spectral}};
  if (r.x_hat) solve["x_hat"] = matrix_to_json(*r.x_hat);

  json j{{"format", "gcale-report"},
         {"version", 1},
         {"preset", to_string(r.preset)},
         {"conditions", conditions_to_json(r.conditions)},
         {"solve", std::move(solve)},
         {"timings", json{{"check_seconds", r.timings.check_seconds},
                          {"solve_seconds", r.timings.solve_seconds},
                          {"oracle_seconds", r.timings.oracle_seconds},
                          {"total_seconds", r.timings.total_seconds}}}};
  if (r.oracle_comparison) {
    j["oracle_comparison"] =
        json{{"true_error_spectral", r.oracle_comparison->true_error_spectral},
             {"true_error_weighted", r.oracle_comparison->true_error_weighted},
             {"oracle_residual", r.oracle_comparison->oracle_residual}};
  } else {
    j["oracle_comparison"] = nullptr;
  }
  if (r.bound_check) {
    j["bound_check"] = json{{"ok", r.bound_check->ok},
                            {"skipped_reason", r.bound_check->skipped_reason}};
  } else {
    j["bound_check"] = nullptr;
  }
  return j.dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  const json j = parse_json(text);
  require_format(j, "gcale-report");
  RunReport r;
  r.preset =
      preset_from_string(require_field(j, "preset").get<std::string>());
  r.conditions = conditions_from_json(require_field(j, "conditions"));

  const json& solve = require_field(j, "solve");
  r.iterations = require_field(solve, "iterations").get<int>();
  r.converged = require_field(solve, "converged").get<bool>();
  r.diverged = require_field(solve, "diverged").get<bool>();
  r.final_residual =
      parse_finite_real(require_field(solve, "final_residual"), "final_residual");
  r.final_residual_x = parse_finite_real(
      require_field(solve, "final_residual_x"), "final_residual_x");
  r.final_residual_y = parse_finite_real(
      require_field(solve, "final_residual_y"), "final_residual_y");
  r.equation_residual = parse_finite_real(
      require_field(solve, "equation_residual"), "equation_residual");
  r.delta = parse_finite_real(require_field(solve, "delta"), "delta");
  r.enclosure_ok = require_field(solve, "enclosure_ok").get<bool>();
  r.a_priori_bound_final = null_as_infinity(
      require_field(solve, "a_priori_bound_final"), "a_priori_bound_final");
  r.initial_step_weighted = parse_finite_real(
      require_field(solve, "initial_step_weighted"), "initial_step_weighted");
  r.initial_step_spectral = parse_finite_real(
      require_field(solve, "initial_step_spectral"), "initial_step_spectral");
  if (solve.contains("x_hat") && solve["x_hat"].is_array()) {
    const Index n = static_cast<Index>(solve["x_hat"].size());
    r.x_hat = parse_matrix(solve["x_hat"], n, "x_hat");
  }

  const json& oc = require_field(j, "oracle_comparison");
  if (!oc.is_null()) {
    OracleComparison cmp;
    cmp.true_error_spectral = parse_finite_real(
        require_field(oc, "true_error_spectral"), "true_error_spectral");
    cmp.true_error_weighted = parse_finite_real(
        require_field(oc, "true_error_weighted"), "true_error_weighted");
    cmp.oracle_residual = parse_finite_real(
        require_field(oc, "oracle_residual"), "oracle_residual");
    r.oracle_comparison = cmp;
  }

  const json& bc = require_field(j, "bound_check");
  if (!bc.is_null()) {
    BoundCheck check;
    check.ok = require_field(bc, "ok").get<bool>();
    check.skipped_reason =
        require_field(bc, "skipped_reason").get<std::string>();
    r.bound_check = check;
  }

  const json& tm = require_field(j, "timings");
  r.timings.check_seconds =
      parse_finite_real(require_field(tm, "check_seconds"), "check_seconds");
  r.timings.solve_seconds =
      parse_finite_real(require_field(tm, "solve_seconds"), "solve_seconds");
  r.timings.oracle_seconds =
      parse_finite_real(require_field(tm, "oracle_seconds"), "oracle_seconds");
  r.timings.total_seconds =
      parse_finite_real(require_field(tm, "total_seconds"), "total_seconds");
  return r;
}

void save_report(const RunReport& r, const std::filesystem::path& path) {
  write_file(path, serialize_report(r));
}

RunReport load_report(const std::filesystem::path& path) {
  try {
    return parse_report(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_check_report(const ConditionReport& report,
                                   CertificatePreset preset,
                                   const std::optional<PencilStability>& pencil) {
  json j{{"format", "gcale-check-report"},
         {"version", 1},
         {"preset", to_string(preset)},
         {"conditions", conditions_to_json(report)}};
  if (pencil) {
    json eigs = json::array();
    for (const Complex& z : pencil->eigenvalues) {
      eigs.push_back(json::array({z.real(), z.imag()}));
    }
    j["pencil"] = json{{"supported", pencil->supported},
                       {"stable", pencil->supported ? json(pencil->stable)
                                                    : json(nullptr)},
                       {"eigenvalues", std::move(eigs)}};
  } else {
    j["pencil"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string serialize_oracle_result(const OracleResult& result) {
  json j{{"format", "gcale-oracle-report"},
         {"version", 1},
         {"n", result.x.dim()},
         {"definite", result.definite},
         {"residual", result.residual},
         {"hermiticity_defect", result.hermiticity_defect},
         {"x", matrix_to_json(result.x.matrix())}};
  return j.dump(2) + "\n";
}

namespace {

void write_history_rows(std::ostream& os, const SolveReport& r,
                        const std::vector<std::array<double, 2>>* true_errors) {
  const bool have_bound = r.delta > 0.0 && r.delta < 1.0;
  for (std::size_t i = 0; i < r.residual_history.size(); ++i) {
    const ResidualSample& s = r.residual_history[i];
    os << i << ',' << format_real(s.ex) << ',' << format_real(s.ey) << ','
       << format_real(s.e) << ',';
    if (have_bound) {
      os << format_real(a_priori_bound(static_cast<int>(i), r.delta,
                                       r.initial_step_weighted));
    } else {
      os << "nan";
    }
    if (true_errors) {
      os << ',' << format_real((*true_errors)[i][0]) << ','
         << format_real((*true_errors)[i][1]);
    }
    os << '\n';
  }
}

}  // namespace

void write_history_csv(std::ostream& os, const SolveReport& r) {
  os << "i,E_i(X),E_i(Y),E_i,a_priori_bound_i\n";
  write_history_rows(os, r, nullptr);
}

void write_history_csv(std::ostream& os, const SolveReport& r,
                       const std::vector<std::array<double, 2>>& true_errors) {
  if (true_errors.size() != r.residual_history.size()) {
    throw DimensionError(
        "write_history_csv: true_errors length does not match history");
  }
  os << "i,E_i(X),E_i(Y),E_i,a_priori_bound_i,"
        "true_error_X_weighted,true_error_Y_weighted\n";
  write_history_rows(os, r, &true_errors);
}

}  // namespace gcale
