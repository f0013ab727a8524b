// SPDX-License-Identifier: Apache-2.0
#include "pmat/verify/svm_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace pmat::verify {

std::vector<double> project_dual(const std::vector<double>& v, const std::vector<double>& y, double c) {
  const std::size_t n = v.size();
  auto clipped = [&](double lambda, std::vector<double>& out) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = std::clamp(v[i] - lambda * y[i], 0.0, c);
      s += y[i] * out[i];
    }
    return s;
  };
  std::vector<double> a(n);
  // s(lambda) is non-increasing in lambda.
  double lo = -1.0, hi = 1.0;
  while (clipped(lo, a) < 0.0) lo *= 2.0;
  while (clipped(hi, a) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (clipped(mid, a) > 0.0) lo = mid;
    else hi = mid;
  }
  clipped(0.5 * (lo + hi), a);
  return a;
}

DualOracleResult projected_gradient_dual(const models::DualProblem& p, std::size_t iterations) {
  const std::size_t n = p.n;
  // Row-sum bound on the largest eigenvalue of Q.
  double lipschitz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(p.q(i, j));
    lipschitz = std::max(lipschitz, row);
  }
  const double step = 1.0 / std::max(lipschitz, 1e-12);

  std::vector<double> x(n, 0.0), z(n, 0.0), prev(n, 0.0), g(n);
  DualOracleResult best{x, p.objective(x)};
  double t = 1.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = -1.0;
      for (std::size_t j = 0; j < n; ++j) s += p.q(i, j) * z[j];
      g[i] = z[i] - step * s;
    }
    prev = x;
    x = project_dual(g, p.y, p.c);
    const double f = p.objective(x);
    if (f < best.objective) best = {x, f};
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] + ((t - 1.0) / t_next) * (x[i] - prev[i]);
    t = t_next;
  }
  return best;
}

double box_violation(const std::vector<double>& alpha, double c) {
  double v = 0.0;
  for (double a : alpha) v = std::max({v, -a, a - c});
  return v;
}

double equality_residual(const std::vector<double>& alpha, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * y[i];
  return std::fabs(s);
}

}  // namespace pmat::verify
