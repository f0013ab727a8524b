// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmat/models/catalog.hpp"
#include "pmat/models/svm.hpp"
#include "pmat/nn/trainer.hpp"

namespace pmat::models {

inline constexpr std::array<double, 5> kCGrid{0.1, 1.0, 10.0, 100.0, 1000.0};
inline constexpr std::array<double, 5> kGammaGrid{0.01, 0.1, 1.0, 10.0, 100.0};
inline constexpr std::size_t kNetworkRepeats = 20;

struct CandidateScore {
  std::string id;          ///< "C=0.1,gamma=0.01" or "seed=42"
  nlohmann::json params;
  double score = 0.0;      ///< validation accuracy (SVM) or loss (networks)
};

/// `chosen` indexes `candidates`; ties go to the lowest index.
template <class Model>
struct SelectionResult {
  Model model;
  std::size_t chosen = 0;
  std::vector<CandidateScore> candidates;
};

nlohmann::json to_json(const CandidateScore& c);
CandidateScore candidate_score_from_json(const nlohmann::json& j);

enum class SvmSelectionMetric { Accuracy, BalancedAccuracy };
std::string_view to_string(SvmSelectionMetric m);
SvmSelectionMetric parse_svm_selection_metric(std::string_view text);

struct SvmGridOptions {
  KernelKind kind = KernelKind::Rbf;
  int degree = 1;
  double coef0 = 0.0;
  bool standardize = true;
  SvmSelectionMetric metric = SvmSelectionMetric::Accuracy;
  SmoSettings smo;
  std::vector<double> c_grid{kCGrid.begin(), kCGrid.end()};
  std::vector<double> gamma_grid{kGammaGrid.begin(), kGammaGrid.end()};
  std::size_t jobs = 1;
};

struct FeatureSet {
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;

  std::size_t size() const { return rows.size(); }
};

/// Trains one model per (C, gamma) cell, C-major, and keeps the best
/// validation score. Throws Error on an empty validation set.
SelectionResult<SvmModel> svm_grid_search(const FeatureSet& fit, const FeatureSet& val, const SvmGridOptions& options = {});

/// Called after each run with its index; may replace the run's weights.
using RunHook = std::function<void(std::size_t run, nn::TrainedNet& trained)>;

struct NetworkSelectionOptions {
  std::size_t repeats = kNetworkRepeats;
  std::size_t jobs = 1;
  BuildOptions build;
  RunHook post_train;  ///< test hook; validation loss is recomputed after it runs
};

/// Runs seeds base_seed + 0 .. repeats-1 and keeps the lowest validation
/// loss (non-finite losses rank last).
SelectionResult<nn::TrainedNet> select_best_network(const ArchSpec& spec, const nn::LabelledSet& fit,
                                                    const nn::LabelledSet& val, const nn::TrainConfig& config,
                                                    std::uint64_t base_seed,
                                                    const NetworkSelectionOptions& options = {});

}  // namespace pmat::models
