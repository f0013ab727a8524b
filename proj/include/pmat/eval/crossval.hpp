// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmat/eval/folds.hpp"
#include "pmat/eval/metrics.hpp"
#include "pmat/eval/stats.hpp"
#include "pmat/models/classifier.hpp"
#include "pmat/models/selection.hpp"

namespace pmat::eval {

struct CvConfig {
  std::size_t folds = 5;
  std::size_t repeats = models::kNetworkRepeats;
  nn::TrainConfig train;
  models::BuildOptions build;
  models::SvmSelectionMetric svm_metric = models::SvmSelectionMetric::Accuracy;
  bool svm_standardize = true;
  double poly_coef0 = 0.0;
  double svm_tolerance = 1e-3;
  std::size_t jobs = 1;  ///< never changes results; left out of the JSON snapshot

  void validate() const;
};

nlohmann::json to_json(const CvConfig& c);
/// Missing keys keep the values of `base`.
CvConfig cv_config_from_json(const nlohmann::json& j, CvConfig base = {});

struct TestPrediction {
  std::string snippet_id;
  Label label = Label::FmMinus;
  double score = 0.0;
  Label predicted = Label::FmMinus;
};

struct FoldResult {
  std::size_t fold = 0;  ///< 1-based
  FoldAssignment infants;
  std::size_t fit_snippets = 0;
  std::size_t validation_snippets = 0;
  std::size_t test_snippets = 0;
  std::size_t test_fm_plus = 0;
  std::size_t test_fm_minus = 0;
  Metrics metrics;
  std::vector<models::CandidateScore> candidates;
  std::size_t chosen = 0;
  std::vector<TestPrediction> predictions;
};

/// Fold values of one rate; mean and interval cover the defined folds only
/// (interval needs at least two).
struct MetricSummary {
  std::vector<std::optional<double>> folds;
  std::optional<double> mean;
  std::optional<Interval> ci;

  std::vector<double> defined() const;
};

MetricSummary summarize(std::vector<std::optional<double>> fold_values);

struct CvReport {
  std::string arch;
  std::uint64_t seed = 0;
  nlohmann::json config;
  std::vector<FoldResult> folds;
  MetricSummary sensitivity;
  MetricSummary specificity;
  MetricSummary balanced_accuracy;
};

nlohmann::json to_json(const CvReport& r);
CvReport cv_report_from_json(const nlohmann::json& j);
/// Pretty-printed with a trailing newline; deterministic for equal reports.
std::string report_json_text(const CvReport& r);
void write_report(const CvReport& r, const std::filesystem::path& path);
CvReport read_report(const std::filesystem::path& path);

struct CvHooks {
  std::function<void(const std::string&)> log;
  models::RunHook post_train;
};

/// Grouped k-fold evaluation of one catalogue entry. Fold f's network runs use
/// seeds mix_seed(seed, 1000 + f) + r. Any fold failure throws Error naming
/// the fold.
CvReport run_crossval(std::span<const models::EncodedSnippet> data, std::string_view arch, const CvConfig& config,
                      std::uint64_t seed, const CvHooks& hooks = {});

/// Streams a manifest and encodes each snippet; raw frames are not retained.
std::vector<models::EncodedSnippet> encode_manifest(const std::filesystem::path& manifest, std::size_t jobs = 1);

}  // namespace pmat::eval
