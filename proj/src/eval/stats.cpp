// SPDX-License-Identifier: Apache-2.0
#include "pmat/eval/stats.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pmat/common.hpp"

namespace pmat::eval {

namespace {

constexpr std::array<double, 30> kT975{
    12.706204736432095, 4.302652729696142,  3.182446305284263,  2.7764451051977987, 2.570581835636314,
    2.4469118511449692, 2.3646242515927844, 2.306004135204166,  2.2621571628540993, 2.2281388519649385,
    2.200985160082949,  2.1788128296634177, 2.1603686564610127, 2.1447866879169273, 2.131449545559323,
    2.1199052992210112, 2.1098155778331806, 2.10092204024096,   2.093024054408263,  2.0859634472658364,
    2.079613844727662,  2.0738730679040147, 2.0686576104190406, 2.0638985616280205, 2.059538552753294,
    2.055529438642871,  2.0518305164802833, 2.048407141795244,  2.045229642132703,  2.0422724563012373};

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("incomplete beta needs positive shape parameters");
  if (!(x >= 0.0 && x <= 1.0)) throw Error("incomplete beta argument outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw Error("t distribution needs positive degrees of freedom");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double t_quantile_975_bisect(double df) {
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_two_sided(hi, df) > 0.05) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_two_sided(mid, df) > 0.05) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double t_quantile_975(double df) {
  const double whole = std::floor(df);
  if (whole == df && df >= 1.0 && df <= 30.0) return kT975[static_cast<std::size_t>(df) - 1];
  return t_quantile_975_bisect(df);
}

double sample_mean(std::span<const double> values) {
  if (values.empty()) throw Error("mean of an empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw Error("sample variance needs at least 2 values");
  const double m = sample_mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / static_cast<double>(values.size() - 1);
}

Interval ci95_mean(std::span<const double> values) {
  if (values.size() < 2) throw Error("confidence interval needs at least 2 values");
  const double n = static_cast<double>(values.size());
  const double m = sample_mean(values);
  const double half = t_quantile_975(n - 1.0) * std::sqrt(sample_variance(values)) / std::sqrt(n);
  return {m, m - half, m + half};
}

std::string_view to_string(TTestMode m) { return m == TTestMode::Paired ? "paired" : "welch"; }

TTestMode parse_t_test_mode(std::string_view text) {
  if (text == "paired") return TTestMode::Paired;
  if (text == "welch") return TTestMode::Welch;
  throw Error("unknown t-test mode '" + std::string(text) + "'");
}

double t_test(std::span<const double> a, std::span<const double> b, TTestMode mode) {
  double diff = 0.0;
  double se = 0.0;
  double df = 0.0;
  if (mode == TTestMode::Paired) {
    if (a.size() != b.size()) throw Error("paired t-test needs samples of equal length");
    if (a.size() < 2) throw Error("paired t-test needs at least 2 pairs");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    diff = sample_mean(d);
    se = std::sqrt(sample_variance(d) / static_cast<double>(d.size()));
    df = static_cast<double>(d.size() - 1);
  } else {
    if (a.size() < 2 || b.size() < 2) throw Error("Welch t-test needs at least 2 values per sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a) / na;
    const double vb = sample_variance(b) / nb;
    diff = sample_mean(a) - sample_mean(b);
    se = std::sqrt(va + vb);
    if (se > 0.0) df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  }
  if (!(se > 0.0)) return diff != 0.0 ? 0.0 : 1.0;
  return student_t_two_sided(diff / se, df);
}

}  // namespace pmat::eval
