// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pmat/models/svm.hpp"

namespace pmat::verify {

/// Euclidean projection onto {0 <= a <= C, y'a = 0}, by bisection on the
/// multiplier of the equality constraint.
std::vector<double> project_dual(const std::vector<double>& v, const std::vector<double>& y, double c);

/// Accelerated projected gradient on the dual (minimization form). Meant for
/// toy problems; returns the best objective seen.
struct DualOracleResult {
  std::vector<double> alpha;
  double objective = 0.0;
};
DualOracleResult projected_gradient_dual(const models::DualProblem& p, std::size_t iterations = 200000);

/// Largest violation of 0 <= a <= C, reported as a positive distance.
double box_violation(const std::vector<double>& alpha, double c);
double equality_residual(const std::vector<double>& alpha, const std::vector<double>& y);

}  // namespace pmat::verify
