#pragma once

#include "gcale/gcale.hpp"

// The two bundled reference instances (same values as data/example1.json and
// data/example2.json) and their published reference solutions, printed to
// four decimals.

namespace testutil {

inline gcale::ProblemInstance example1() {
  Eigen::Matrix3d a{{-0.95, 0.001, 0.001},
                    {0.001, -0.95, 0.001},
                    {0.001, 0.001, -0.95}};
  Eigen::Matrix3d b{{0.54, -0.002, -0.002},
                    {-0.002, 0.54, -0.002},
                    {-0.002, -0.002, 0.54}};
  Eigen::Matrix3d q{{2.0, 0.02, 0.005},
                    {0.02, 2.0, 0.02},
                    {0.005, 0.02, 2.0}};
  return gcale::ProblemInstance(
      a.cast<gcale::Complex>(), b.cast<gcale::Complex>(),
      gcale::HermitianMatrix(q.cast<gcale::Complex>()));
}

inline Eigen::Matrix3d example1_reference_solution() {
  return Eigen::Matrix3d{{1.9495, 0.0288, 0.0142},
                         {0.0288, 1.9496, 0.0288},
                         {0.0142, 0.0288, 1.9495}};
}

inline gcale::ProblemInstance example2() {
  const gcale::Index n = 5;
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, 0.001);
  a.diagonal().setConstant(-0.95);
  Eigen::MatrixXd b = Eigen::MatrixXd::Constant(n, n, -0.02);
  b.diagonal().setConstant(0.44);
  Eigen::MatrixXd q{{0.40, 0.01, 0.02, 0.03, 0.04},
                    {0.01, 0.40, 0.01, 0.02, 0.03},
                    {0.02, 0.01, 0.40, 0.01, 0.02},
                    {0.03, 0.02, 0.01, 0.40, 0.01},
                    {0.04, 0.03, 0.02, 0.01, 0.40}};
  return gcale::ProblemInstance(
      a.cast<gcale::Complex>(), b.cast<gcale::Complex>(),
      gcale::HermitianMatrix(q.cast<gcale::Complex>()));
}

inline Eigen::MatrixXd example2_reference_solution() {
  return Eigen::MatrixXd{{0.4895, 0.0429, 0.0541, 0.0658, 0.0781},
                         {0.0429, 0.4878, 0.0418, 0.0535, 0.0658},
                         {0.0541, 0.0418, 0.4873, 0.0418, 0.0541},
                         {0.0658, 0.0535, 0.0418, 0.4878, 0.0429},
                         {0.0781, 0.0658, 0.0541, 0.0429, 0.4895}};
}

}  // namespace testutil
