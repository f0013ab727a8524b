// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pmat/models/inputs.hpp"
#include "pmat/models/svm.hpp"
#include "pmat/nn/trainer.hpp"

namespace pmat::models {

struct Prediction {
  double score = 0.0;  ///< probability (networks) or decision value (SVM)
  Label label = Label::FmMinus;
};

/// FM+ iff p >= 0.5.
Label class_from_probability(double p);
/// FM+ iff d >= 0.
Label class_from_decision(double d);

/// A trained catalogue entry of either family.
struct TrainedClassifier {
  std::string arch;
  std::variant<SvmModel, nn::TrainedNet> model;
  nn::CellActivation lstm_activation = nn::CellActivation::Relu;

  const ArchSpec& spec() const { return find_arch(arch); }
};

/// Throws Error if the snippets cannot feed the model (e.g. feature width or
/// signal length mismatch).
std::vector<Prediction> predict(const TrainedClassifier& c, std::span<const EncodedSnippet* const> snippets);
std::vector<Prediction> predict(const SvmModel& m, std::span<const std::vector<double>> rows);
std::vector<Prediction> predict(const nn::Network& net, const nn::Tensor& batch);

void save_classifier(const TrainedClassifier& c, const std::filesystem::path& path);
TrainedClassifier load_classifier(const std::filesystem::path& path);

}  // namespace pmat::models
