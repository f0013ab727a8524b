// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace pmat::eval {

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);
/// Two-sided tail P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);
/// t_{0.975, df}: tabulated up to df = 30, solved by bisection beyond.
double t_quantile_975(double df);
/// Same quantile without the table.
double t_quantile_975_bisect(double df);

struct Interval {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// mean +- t_{0.975, n-1} * sd / sqrt(n), sd with 1/(n-1). Throws Error if n < 2.
Interval ci95_mean(std::span<const double> values);

double sample_mean(std::span<const double> values);
/// 1/(n-1) variance.
double sample_variance(std::span<const double> values);

enum class TTestMode { Paired, Welch };
std::string_view to_string(TTestMode m);
TTestMode parse_t_test_mode(std::string_view text);

/// Two-sided p-value. A zero standard error gives p = 0 when the means differ
/// and p = 1 when they agree. Throws Error on mismatched paired lengths or
/// samples smaller than 2.
double t_test(std::span<const double> a, std::span<const double> b, TTestMode mode);

}  // namespace pmat::eval
