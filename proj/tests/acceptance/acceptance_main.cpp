// Acceptance suite: runs every release criterion end to end and prints one
// pass/fail line each. Returns the number of failed criteria.
//
//   1  bundled 3x3 instance: check margins, 100-iteration solve, residual,
//      printed-entry agreement, runtime
//   2  bundled 5x5 instance: same with 82 iterations
//   3  fixed-point vs direct solver agreement on 50 random certified
//      instances, direct solution positive definite
//   4  transform/equation algebraic identity on 200 arbitrary triples
//   5  weighted-trace-norm contraction with the computed factor; factor < 1
//      whenever margins (a), (b) are positive
//   6  monotone sandwich along the iteration plus final enclosure
//   7  a-priori geometric error bound at every recorded iterate
//   8  trace-product and order-interval norm inequalities on 500 draws each

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "gcale/gcale.hpp"
#include "example_data.hpp"
#include "random_instances.hpp"

using namespace gcale;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  int id;
  std::string label;
  bool pass;
  std::string detail;
};

std::vector<Outcome> g_results;

void record(int id, std::string label, bool pass, std::string detail = "") {
  g_results.push_back({id, std::move(label), pass, std::move(detail)});
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliRun {
  int exit_code = -1;
  double seconds = 0.0;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd =
      std::string(GCALE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const auto t0 = Clock::now();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.seconds = seconds_since(t0);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string data_file(const char* name) {
  return std::string(GCALE_DATA_DIR) + "/" + name;
}

bool entries_match(const nlohmann::json& x_hat, const Eigen::MatrixXd& ref,
                   double tol, double* worst) {
  *worst = 0.0;
  for (Index i = 0; i < ref.rows(); ++i) {
    for (Index j = 0; j < ref.cols(); ++j) {
      const auto& e = x_hat[i][j];
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      *worst = std::max({*worst, std::abs(re - ref(i, j)), std::abs(im)});
    }
  }
  return *worst <= tol;
}

// ---------------------------------------------------------------------------

void regression_criterion(int id, const char* file, const char* preset,
                          int iters, double resid_limit,
                          const std::vector<std::pair<const char*, double>>&
                              expected_margins,
                          const Eigen::MatrixXd& reference) {
  const fs::path check_report = fs::temp_directory_path() / "gcale_acc_check.json";
  const fs::path solve_report = fs::temp_directory_path() / "gcale_acc_solve.json";
  std::ostringstream detail;
  bool pass = true;

  const CliRun check = run_cli("check " + data_file(file) + " --preset " +
                               preset + " --report " + check_report.string());
  if (check.exit_code != 0) {
    pass = false;
    detail << "check exit " << check.exit_code << "; ";
  }
  if (check.seconds >= 1.0) {
    pass = false;
    detail << "check took " << check.seconds << " s; ";
  }
  if (pass) {
    const nlohmann::json j = read_json(check_report);
    for (const auto& [key, want] : expected_margins) {
      const double got = j["conditions"][key].get<double>();
      if (std::abs(got - want) > 1e-3) {
        pass = false;
        detail << key << " = " << got << " vs " << want << "; ";
      }
    }
  }

  std::ostringstream solve_args;
  solve_args << "solve " << data_file(file) << " --preset " << preset
             << " --fixed-iters " << iters << " --report "
             << solve_report.string();
  const CliRun solve = run_cli(solve_args.str());
  if (solve.exit_code != 0) {
    pass = false;
    detail << "solve exit " << solve.exit_code << "; ";
  }
  if (solve.seconds >= 1.0) {
    pass = false;
    detail << "solve took " << solve.seconds << " s; ";
  }
  if (solve.exit_code == 0) {
    const nlohmann::json j = read_json(solve_report);
    const double e_final = j["solve"]["final_residual"].get<double>();
    if (!(e_final <= resid_limit)) {
      pass = false;
      detail << "E_final = " << e_final << " > " << resid_limit << "; ";
    }
    double worst = 0.0;
    if (!entries_match(j["solve"]["x_hat"], reference, 1e-4, &worst)) {
      pass = false;
      detail << "entry error " << worst << " > 1e-4; ";
    } else {
      detail << "worst entry error " << worst << ", E = " << e_final;
    }
  }
  fs::remove(check_report);
  fs::remove(solve_report);

  std::ostringstream label;
  label << reference.rows() << "x" << reference.cols()
        << " reference regression (" << preset << ", " << iters
        << " iterations)";
  record(id, label.str(), pass, detail.str());
}

// Shared random certified suite for criteria 3, 5, 6, 7.
struct SuiteEntry {
  testutil::ConditionedInstance instance;
  SolveReport solve;
  OracleResult oracle;
};

std::vector<SuiteEntry> build_suite(int count, std::mt19937& rng) {
  std::vector<SuiteEntry> suite;
  suite.reserve(count);
  for (int k = 0; k < count; ++k) {
    const Index n = 2 + static_cast<Index>(rng() % 7);  // N in {2,...,8}
    const auto preset = k % 3 == 0 ? CertificatePreset::cr2
                                   : CertificatePreset::cr1;
    auto inst = testutil::random_conditioned_instance(rng, n, preset);
    SolverSettings settings;
    settings.record_iterates = true;
    SolveReport solve = solve_coupled(inst.problem, inst.certificate, settings);
    OracleResult oracle = solve_direct(inst.problem);
    suite.push_back(
        {std::move(inst), std::move(solve), std::move(oracle)});
  }
  return suite;
}

void oracle_equivalence_criterion(const std::vector<SuiteEntry>& suite,
                                  double suite_seconds) {
  bool pass = suite_seconds < 30.0;
  std::ostringstream detail;
  if (!pass) detail << "suite took " << suite_seconds << " s; ";
  double worst = 0.0;
  const double tol = SolverSettings{}.tol;
  const double limit = std::max(1e-10, 10.0 * tol);
  for (const SuiteEntry& s : suite) {
    if (!s.oracle.definite) {
      pass = false;
      detail << "direct solution not positive definite; ";
    }
    if (!s.solve.converged) {
      pass = false;
      detail << "iteration did not converge; ";
    }
    const double rel =
        spectral_norm(s.solve.x_hat.matrix() - s.oracle.x.matrix()) /
        spectral_norm(s.oracle.x.matrix());
    worst = std::max(worst, rel);
  }
  if (worst > limit) {
    pass = false;
    detail << "worst relative gap " << worst << " > " << limit;
  } else {
    detail << "worst relative gap " << worst << " over " << suite.size()
           << " instances, " << suite_seconds << " s";
  }
  record(3, "fixed-point vs direct solver agreement", pass, detail.str());
}

void identity_criterion(std::mt19937& rng) {
  bool pass = true;
  double worst_ratio = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const ComplexMatrix a = testutil::random_complex(rng, n);
    const ComplexMatrix b = testutil::random_complex(rng, n);
    const ComplexMatrix x = testutil::random_complex(rng, n);
    const TransformSet t = compute_transforms(a, b);
    const ComplexMatrix lhs = t.v.adjoint() * x * t.v + t.w.adjoint() * x * t.w -
                              t.u.adjoint() * x * t.u - t.b.adjoint() * x * t.b;
    const ComplexMatrix rhs = x + a.adjoint() * x * b + b.adjoint() * x * a;
    const double limit = 1e-12 * (1 + spectral_norm(x)) *
                         (1 + spectral_norm(a)) * (1 + spectral_norm(b));
    const double err = spectral_norm(lhs - rhs);
    worst_ratio = std::max(worst_ratio, err / limit);
    if (err > limit) pass = false;
  }
  std::ostringstream detail;
  detail << "worst error at " << worst_ratio << " of the allowance (200 triples)";
  record(4, "transform identity equals equation defect", pass, detail.str());
}

void contraction_criterion(const std::vector<SuiteEntry>& suite,
                           std::mt19937& rng) {
  bool pass = true;
  std::ostringstream detail;
  double worst_excess = -1e300;
  for (const SuiteEntry& s : suite) {
    const ConditionReport& cr = s.solve.conditions;
    if (cr.margin_a > 0 && cr.margin_b > 0 && !(cr.delta < 1.0)) {
      pass = false;
      detail << "delta " << cr.delta << " >= 1 with positive margins; ";
    }
    const Index n = s.instance.problem.dim();
    const TransformSet& t = s.instance.problem.transforms();
    const HermitianMatrix& q = s.instance.problem.q();
    const HermitianMatrix qth = sqrt_pd(s.instance.certificate.qtilde());
    for (int pair = 0; pair < 10; ++pair) {
      const HermitianMatrix j = testutil::random_hermitian(rng, n);
      const HermitianMatrix y = testutil::random_hermitian(rng, n);
      const HermitianMatrix x = j + testutil::random_psd(rng, n);  // X >= J
      const HermitianMatrix k = y + testutil::random_psd(rng, n);  // Y <= K
      const double lhs = weighted_trace_norm(
          (fixed_point_map(x, y, q, t) - fixed_point_map(j, k, q, t)).matrix(),
          qth);
      const double sum = weighted_trace_norm((x - j).matrix(), qth) +
                         weighted_trace_norm((k - y).matrix(), qth);
      const double allowed = 0.5 * cr.delta * sum + 1e-10 * std::max(1.0, sum);
      worst_excess = std::max(worst_excess, lhs - allowed);
      if (lhs > allowed) pass = false;
    }
  }
  if (!pass && worst_excess > 0) {
    detail << "worst excess " << worst_excess;
  } else {
    detail << "margin to the allowance " << -worst_excess << " ("
           << suite.size() << " x 10 pairs)";
  }
  record(5, "weighted trace-norm contraction with computed factor", pass,
         detail.str());
}

void sandwich_criterion(const std::vector<SuiteEntry>& suite) {
  bool pass = true;
  std::ostringstream detail;
  for (const SuiteEntry& s : suite) {
    const double scale =
        spectral_norm(s.instance.certificate.m_cap().matrix());
    const auto& hist = s.solve.iterate_history;
    for (std::size_t i = 0; i + 1 < hist.size(); ++i) {
      const bool ok =
          loewner_margin(hist[i].first, hist[i + 1].first) >= -1e-10 * scale &&
          loewner_margin(hist[i + 1].second, hist[i].second) >=
              -1e-10 * scale &&
          loewner_margin(hist[i].first, hist[i].second) >= -1e-10 * scale;
      if (!ok) {
        pass = false;
        detail << "order violated at step " << i << "; ";
        break;
      }
    }
    if (!s.solve.enclosure_ok) {
      pass = false;
      detail << "enclosure failed; ";
    }
  }
  if (pass) detail << "monotone and enclosed on all instances";
  record(6, "monotone sandwich and solution enclosure", pass, detail.str());
}

void bound_criterion(const std::vector<SuiteEntry>& suite) {
  bool pass = true;
  std::ostringstream detail;
  double worst_ratio = 0.0;
  for (const SuiteEntry& s : suite) {
    const double delta = s.solve.delta;
    const double d0 = s.solve.initial_step_weighted;
    const HermitianMatrix qth = sqrt_pd(s.instance.certificate.qtilde());
    const double scale = d0 / (1.0 - delta);
    const auto& hist = s.solve.iterate_history;
    for (std::size_t i = 0; i < hist.size(); ++i) {
      const double ex = weighted_trace_norm(
          hist[i].first.matrix() - s.oracle.x.matrix(), qth);
      const double ey = weighted_trace_norm(
          hist[i].second.matrix() - s.oracle.x.matrix(), qth);
      const double bound =
          a_priori_bound(static_cast<int>(i), delta, d0) + 1e-9 * scale;
      worst_ratio = std::max(worst_ratio, std::max(ex, ey) / bound);
      if (std::max(ex, ey) > bound) {
        pass = false;
      }
    }
  }
  detail << "worst error/bound ratio " << worst_ratio;
  record(7, "a-priori geometric bound at every iterate", pass, detail.str());
}

void norm_inequality_criterion(std::mt19937& rng) {
  bool pass = true;
  std::ostringstream detail;
  int trace_fail = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const HermitianMatrix a = testutil::random_psd(rng, n);
    const HermitianMatrix b = testutil::random_psd(rng, n);
    const double t = (a.matrix() * b.matrix()).trace().real();
    const double hi = spectral_norm(a.matrix()) * b.matrix().trace().real();
    if (!(t >= -1e-10 * hi && t <= hi * (1 + 1e-10))) ++trace_fail;
  }
  int norm_fail = 0;
  std::uniform_real_distribution<double> inflate(1.001, 3.0);
  for (int rep = 0; rep < 500; ++rep) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    HermitianMatrix a = testutil::random_hermitian(rng, n);
    const double extreme =
        std::max(std::abs(min_eigenvalue(a)), std::abs(-min_eigenvalue(-a)));
    a = (1.0 / (extreme * inflate(rng))) * a;
    const HermitianMatrix id = HermitianMatrix::Identity(n);
    if (min_eigenvalue(id - a) > 0 && min_eigenvalue(a + id) > 0) {
      if (!(spectral_norm(a.matrix()) < 1.0)) ++norm_fail;
    } else {
      ++norm_fail;  // scaling must place the draw strictly inside (-I, I)
    }
  }
  if (trace_fail + norm_fail > 0) {
    pass = false;
    detail << trace_fail << " trace-product and " << norm_fail
           << " order-interval failures";
  } else {
    detail << "500 + 500 draws clean";
  }
  record(8, "norm inequality property suites", pass, detail.str());
}

}  // namespace

int main() {
  std::mt19937 rng(987654321);

  regression_criterion(1, "example1.json", "cr1", 100, 1e-12,
                       {{"margin_a", 0.3345}, {"margin_b", 0.4532}},
                       testutil::example1_reference_solution());
  regression_criterion(2, "example2.json", "cr2", 82, 1e-14,
                       {{"margin_a", 0.4078},
                        {"margin_b", 0.0094},
                        {"margin_d_lower", 0.0516},
                        {"margin_d_upper", 0.0231}},
                       testutil::example2_reference_solution());

  const auto t_suite = Clock::now();
  const std::vector<SuiteEntry> suite = build_suite(50, rng);
  const double suite_seconds = seconds_since(t_suite);

  oracle_equivalence_criterion(suite, suite_seconds);
  identity_criterion(rng);
  contraction_criterion(suite, rng);
  sandwich_criterion(suite);
  bound_criterion(suite);
  norm_inequality_criterion(rng);

  int failures = 0;
  for (const Outcome& o : g_results) {
    std::printf("[%s] criterion %d: %s%s%s\n", o.pass ? "PASS" : "FAIL", o.id,
                o.label.c_str(), o.detail.empty() ? "" : " - ",
                o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%zu criteria, %d failed\n", g_results.size(), failures);
  return failures;
}
