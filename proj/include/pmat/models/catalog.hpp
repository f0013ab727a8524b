// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pmat/features.hpp"
#include "pmat/nn/network.hpp"

namespace pmat::models {

enum class Family { Svm, Ffn, Cnn, Lstm };
enum class KernelKind { Rbf, Polynomial };

std::string_view to_string(Family f);

struct ConvSpec {
  std::size_t filters;
  std::size_t kernel;
};

/// Structural description of one catalogued classifier.
struct ArchSpec {
  std::string name;
  Family family = Family::Svm;
  FeatureVariant features = FeatureVariant::Base12;  ///< SVM and FFN inputs
  KernelKind kernel = KernelKind::Rbf;               ///< SVM only
  int degree = 0;                                    ///< polynomial SVM only
  std::vector<ConvSpec> convs;
  std::size_t lstm_steps = 0;
  std::vector<std::size_t> lstm_units;
  std::vector<std::size_t> dense_units;

  bool is_network() const { return family != Family::Svm; }
  /// Per-sample network input shape: (features), (500 x 6) or (steps x 3000/steps).
  std::vector<std::size_t> input_shape() const;
};

/// All 28 classifiers in reporting order (SVM, FFN, CNN, LSTM).
const std::vector<ArchSpec>& catalog();

/// Throws Error for names outside the catalog.
const ArchSpec& find_arch(std::string_view name);
std::size_t arch_index(std::string_view name);

struct BuildOptions {
  nn::CellActivation lstm_activation = nn::CellActivation::Relu;
  double dropout_rate = 0.1;
  std::vector<std::size_t> input_shape;  ///< empty: the family's standard shape
};

/// Layer stack for a network family: every dense, conv and LSTM block is
/// layer -> ReLU -> batch-norm -> dropout; CNNs pool globally over time after
/// the last conv block; all end in Dense(1) -> sigmoid.
/// Throws Error for SVM entries.
nn::Network build_architecture(const ArchSpec& spec, const BuildOptions& options = {});
nn::Network build_architecture(std::string_view name, const BuildOptions& options = {});

}  // namespace pmat::models
