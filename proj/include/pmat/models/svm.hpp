// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "pmat/common.hpp"
#include "pmat/models/catalog.hpp"

namespace pmat::models {

struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double gamma = 1.0;
  int degree = 1;      ///< polynomial only, 1..3
  double coef0 = 0.0;  ///< polynomial offset

  /// Throws Error for a polynomial degree outside 1..3 or non-positive gamma.
  void validate() const;
};

/// RBF: exp(-gamma |u - v|^2). Polynomial: (gamma <u, v> + coef0)^degree.
double kernel_eval(const KernelSpec& k, std::span<const double> u, std::span<const double> v);

/// Per-feature z-score. A constant feature gets scale 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(std::span<const std::vector<double>> rows);
  static Standardizer identity(std::size_t dims);
  std::vector<double> apply(std::span<const double> row) const;
};

struct SvmModel {
  KernelSpec kernel;
  double c = 1.0;
  bool standardized = true;
  Standardizer standardizer;
  std::vector<std::vector<double>> support_vectors;  ///< standardized space
  std::vector<double> dual_coef;                     ///< alpha_i * y_i
  double bias = 0.0;                                 ///< decision = sum dual_coef K + bias

  std::size_t dims() const { return standardizer.mean.size(); }
  /// Raw (unstandardized) feature row in.
  double decision(std::span<const double> row) const;
  /// FM+ iff decision >= 0.
  Label classify(std::span<const double> row) const;
};

/// Dual problem min 0.5 a'Qa - sum a, Q_ij = y_i y_j K_ij, 0 <= a <= C, y'a = 0.
struct DualProblem {
  std::size_t n = 0;
  std::vector<double> kernel;  ///< n x n Gram matrix
  std::vector<double> y;       ///< +1 / -1
  double c = 1.0;

  double q(std::size_t i, std::size_t j) const { return y[i] * y[j] * kernel[i * n + j]; }
  /// 0.5 a'Qa - sum a.
  double objective(std::span<const double> alpha) const;
};

struct DualSolution {
  std::vector<double> alpha;
  double rho = 0.0;  ///< decision = sum alpha_i y_i K(x_i, x) - rho
  double objective = 0.0;
  double kkt_gap = 0.0;  ///< max violating pair gap at exit
  std::size_t iterations = 0;
  bool converged = false;
};

struct SmoSettings {
  double tolerance = 1e-3;
  /// 0 selects the default cap: 10 * n passes of n pair updates, at least 1e5.
  std::size_t max_iterations = 0;
};

/// SMO with second-order working-set selection.
DualSolution solve_dual(const DualProblem& problem, const SmoSettings& settings = {});

struct SvmParams {
  KernelSpec kernel;
  double c = 1.0;
  bool standardize = true;
  SmoSettings smo;
};

struct SvmFit {
  SvmModel model;
  DualSolution solution;
  DualProblem problem;  ///< in the standardized feature space
};

/// Throws Error on empty input, ragged rows, C <= 0 or a single-class set.
SvmFit svm_fit(std::span<const std::vector<double>> rows, std::span<const Label> labels, const SvmParams& params);
SvmModel svm_train(std::span<const std::vector<double>> rows, std::span<const Label> labels, const SvmParams& params);

/// Header JSON (kernel, C, standardization, bias, sizes) followed by the
/// support-vector matrix and dual coefficients as little-endian float64.
void save_svm(const SvmModel& model, const std::filesystem::path& path, std::string_view architecture = {});
SvmModel load_svm(const std::filesystem::path& path);

std::string_view to_string(KernelKind k);
KernelKind parse_kernel_kind(std::string_view text);
nlohmann::json to_json(const KernelSpec& k);
KernelSpec kernel_spec_from_json(const nlohmann::json& j);

}  // namespace pmat::models
