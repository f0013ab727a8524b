// SPDX-License-Identifier: Apache-2.0
#include "pmat/models/selection.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "pmat/binary_io.hpp"
#include "pmat/parallel.hpp"

namespace pmat::models {

namespace {

double validation_score(const SvmModel& m, const FeatureSet& val, SvmSelectionMetric metric) {
  std::size_t tp = 0, tn = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < val.size(); ++i) {
    const Label got = m.classify(val.rows[i]);
    if (val.labels[i] == Label::FmPlus) {
      ++pos;
      tp += got == Label::FmPlus;
    } else {
      ++neg;
      tn += got == Label::FmMinus;
    }
  }
  if (metric == SvmSelectionMetric::Accuracy) return static_cast<double>(tp + tn) / static_cast<double>(val.size());
  // A class missing from validation contributes only the other rate.
  if (pos == 0) return static_cast<double>(tn) / static_cast<double>(neg);
  if (neg == 0) return static_cast<double>(tp) / static_cast<double>(pos);
  return 0.5 * (static_cast<double>(tp) / static_cast<double>(pos) + static_cast<double>(tn) / static_cast<double>(neg));
}

double rank_loss(double loss) { return std::isfinite(loss) ? loss : std::numeric_limits<double>::infinity(); }

}  // namespace

nlohmann::json to_json(const CandidateScore& c) {
  return {{"id", c.id}, {"params", c.params}, {"score", json_number(c.score)}};
}

CandidateScore candidate_score_from_json(const nlohmann::json& j) {
  return {j.at("id").get<std::string>(), j.at("params"), number_from_json(j.at("score"))};
}

std::string_view to_string(SvmSelectionMetric m) {
  return m == SvmSelectionMetric::Accuracy ? "accuracy" : "balanced_accuracy";
}

SvmSelectionMetric parse_svm_selection_metric(std::string_view text) {
  if (text == "accuracy") return SvmSelectionMetric::Accuracy;
  if (text == "balanced_accuracy") return SvmSelectionMetric::BalancedAccuracy;
  throw Error("unknown SVM selection metric '" + std::string(text) + "'");
}

SelectionResult<SvmModel> svm_grid_search(const FeatureSet& fit, const FeatureSet& val, const SvmGridOptions& options) {
  if (val.size() == 0) throw Error("SVM grid search needs a non-empty validation set");
  if (val.rows.size() != val.labels.size()) throw Error("validation rows and labels differ in count");
  const std::size_t ng = options.gamma_grid.size();
  const std::size_t cells = options.c_grid.size() * ng;
  if (cells == 0) throw Error("SVM grid is empty");

  std::vector<std::optional<SvmModel>> models(cells);
  std::vector<double> scores(cells, 0.0);
  parallel_for(cells, options.jobs, [&](std::size_t k) {
    SvmParams p;
    p.c = options.c_grid[k / ng];
    p.kernel = {options.kind, options.gamma_grid[k % ng], options.degree, options.coef0};
    p.standardize = options.standardize;
    p.smo = options.smo;
    models[k] = svm_train(fit.rows, fit.labels, p);
    scores[k] = validation_score(*models[k], val, options.metric);
  });

  SelectionResult<SvmModel> result;
  for (std::size_t k = 0; k < cells; ++k) {
    const double c = options.c_grid[k / ng];
    const double g = options.gamma_grid[k % ng];
    result.candidates.push_back(
        {"C=" + format_exact(c) + ",gamma=" + format_exact(g), {{"C", c}, {"gamma", g}}, scores[k]});
    if (scores[k] > scores[result.chosen]) result.chosen = k;
  }
  result.model = std::move(*models[result.chosen]);
  return result;
}

SelectionResult<nn::TrainedNet> select_best_network(const ArchSpec& spec, const nn::LabelledSet& fit,
                                                    const nn::LabelledSet& val, const nn::TrainConfig& config,
                                                    std::uint64_t base_seed,
                                                    const NetworkSelectionOptions& options) {
  if (options.repeats == 0) throw Error("network selection needs at least one run");
  const nn::Network architecture = build_architecture(spec, options.build);
  std::vector<std::optional<nn::TrainedNet>> runs(options.repeats);
  parallel_for(options.repeats, options.jobs, [&](std::size_t r) {
    runs[r] = nn::train(architecture, fit, val, config, base_seed + r);
    if (options.post_train) {
      options.post_train(r, *runs[r]);
      runs[r]->validation_loss = nn::evaluate_loss(runs[r]->net, val);
    }
  });

  SelectionResult<nn::TrainedNet> result;
  for (std::size_t r = 0; r < options.repeats; ++r) {
    const auto& t = *runs[r];
    result.candidates.push_back({"seed=" + std::to_string(t.seed),
                                 {{"seed", t.seed}, {"epochs", t.epochs_run}, {"best_epoch", t.best_epoch}},
                                 t.validation_loss});
    if (rank_loss(t.validation_loss) < rank_loss(runs[result.chosen]->validation_loss)) result.chosen = r;
  }
  result.model = std::move(*runs[result.chosen]);
  return result;
}

}  // namespace pmat::models
