// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmat/eval/crossval.hpp"

namespace pmat::eval {

/// "mean [low high]" in percent at two decimals; "n/a" for undefined parts.
std::string format_summary(const MetricSummary& s);

/// Reports in catalogue order.
std::vector<const CvReport*> ordered(std::span<const CvReport> reports);

/// Pairwise two-sided p-values over fold balanced accuracies; entry [i][j]
/// is empty on the diagonal or when the test is not applicable.
struct ComparisonMatrix {
  TTestMode mode = TTestMode::Paired;
  std::vector<std::string> arch;
  std::vector<std::vector<std::optional<double>>> p;
};

ComparisonMatrix compare(std::span<const CvReport> reports, TTestMode mode);
nlohmann::json to_json(const ComparisonMatrix& m);

/// Table of Sensitivity / Specificity / Balanced accuracy rows followed by
/// the p-value matrix.
std::string render_text(std::span<const CvReport> reports, TTestMode mode = TTestMode::Paired);

/// architecture,metric,mean,ci_low,ci_high with full precision; empty fields
/// for undefined values.
std::string render_csv(std::span<const CvReport> reports);

struct CsvSummaryRow {
  std::string arch;
  std::string metric;  ///< sensitivity, specificity, balanced_accuracy
  std::optional<double> mean;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
};

/// Throws Error on malformed input.
std::vector<CsvSummaryRow> parse_report_csv(const std::string& text);

}  // namespace pmat::eval
