// SPDX-License-Identifier: Apache-2.0
#include "pmat/eval/crossval.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pmat/binary_io.hpp"
#include "pmat/dataset.hpp"
#include "pmat/parallel.hpp"
#include "pmat/rng.hpp"

namespace pmat::eval {

namespace {

using models::EncodedSnippet;

nlohmann::json optional_json(const std::optional<double>& v) { return v ? json_number(*v) : nlohmann::json(nullptr); }

std::optional<double> optional_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return number_from_json(j);
}

nlohmann::json to_json(const MetricSummary& s) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& v : s.folds) folds.push_back(optional_json(v));
  nlohmann::json j{{"folds", folds}, {"mean", optional_json(s.mean)}};
  j["ci_low"] = s.ci ? json_number(s.ci->low) : nlohmann::json(nullptr);
  j["ci_high"] = s.ci ? json_number(s.ci->high) : nlohmann::json(nullptr);
  return j;
}

MetricSummary metric_summary_from_json(const nlohmann::json& j) {
  MetricSummary s;
  for (const auto& v : j.at("folds")) s.folds.push_back(optional_from_json(v));
  s.mean = optional_from_json(j.at("mean"));
  const auto lo = optional_from_json(j.at("ci_low"));
  const auto hi = optional_from_json(j.at("ci_high"));
  if (s.mean && lo && hi) s.ci = Interval{*s.mean, *lo, *hi};
  return s;
}

nlohmann::json to_json(const FoldResult& f) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& c : f.candidates) candidates.push_back(models::to_json(c));
  nlohmann::json predictions = nlohmann::json::array();
  for (const auto& p : f.predictions) {
    predictions.push_back({{"snippet_id", p.snippet_id},
                           {"label", to_string(p.label)},
                           {"score", json_number(p.score)},
                           {"predicted", to_string(p.predicted)}});
  }
  return {{"fold", f.fold},
          {"infants", to_json(f.infants)},
          {"fit_snippets", f.fit_snippets},
          {"validation_snippets", f.validation_snippets},
          {"test_snippets", f.test_snippets},
          {"test_fm_plus", f.test_fm_plus},
          {"test_fm_minus", f.test_fm_minus},
          {"metrics", to_json(f.metrics)},
          {"selection", {{"chosen", f.chosen}, {"candidates", candidates}}},
          {"predictions", predictions}};
}

FoldResult fold_result_from_json(const nlohmann::json& j) {
  FoldResult f;
  f.fold = j.at("fold").get<std::size_t>();
  const auto& inf = j.at("infants");
  f.infants.test = inf.at("test").get<std::vector<std::string>>();
  f.infants.fit = inf.at("fit").get<std::vector<std::string>>();
  f.infants.validation = inf.at("validation").get<std::vector<std::string>>();
  f.fit_snippets = j.at("fit_snippets").get<std::size_t>();
  f.validation_snippets = j.at("validation_snippets").get<std::size_t>();
  f.test_snippets = j.at("test_snippets").get<std::size_t>();
  f.test_fm_plus = j.at("test_fm_plus").get<std::size_t>();
  f.test_fm_minus = j.at("test_fm_minus").get<std::size_t>();
  f.metrics = metrics_from_json(j.at("metrics"));
  f.chosen = j.at("selection").at("chosen").get<std::size_t>();
  for (const auto& c : j.at("selection").at("candidates")) f.candidates.push_back(models::candidate_score_from_json(c));
  for (const auto& p : j.at("predictions")) {
    f.predictions.push_back({p.at("snippet_id").get<std::string>(), parse_label(p.at("label").get<std::string>()),
                             number_from_json(p.at("score")), parse_label(p.at("predicted").get<std::string>())});
  }
  return f;
}

struct Split {
  std::vector<const EncodedSnippet*> fit;
  std::vector<const EncodedSnippet*> validation;
  std::vector<const EncodedSnippet*> test;
};

Split split_fold(std::span<const EncodedSnippet> data, const FoldPlan& plan, std::size_t f, double val_fraction) {
  Split s;
  if (plan.in_sample()) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      s.test.push_back(&data[i]);
      // Spreads the validation share evenly through the snippet order.
      const bool val = std::floor(static_cast<double>(i + 1) * val_fraction) >
                       std::floor(static_cast<double>(i) * val_fraction);
      (val ? s.validation : s.fit).push_back(&data[i]);
    }
    return s;
  }
  const auto& fold = plan.folds[f];
  const std::set<std::string> test(fold.test.begin(), fold.test.end());
  const std::set<std::string> val(fold.validation.begin(), fold.validation.end());
  for (const auto& e : data) {
    if (test.count(e.infant_id)) s.test.push_back(&e);
    else if (val.count(e.infant_id)) s.validation.push_back(&e);
    else s.fit.push_back(&e);
  }
  return s;
}

models::FeatureSet feature_set(const models::ArchSpec& spec, std::span<const EncodedSnippet* const> part) {
  models::FeatureSet fs;
  for (const auto* e : part) {
    fs.rows.push_back(models::model_features(*e, spec.features));
    fs.labels.push_back(e->label);
  }
  return fs;
}

FoldResult run_fold(std::span<const EncodedSnippet> data, const models::ArchSpec& spec, const FoldPlan& plan,
                    std::size_t f, const CvConfig& config, std::uint64_t seed, const CvHooks& hooks) {
  const Split split = split_fold(data, plan, f, config.train.validation_fraction);
  if (split.fit.empty() || split.validation.empty() || split.test.empty()) {
    throw Error("empty fit, validation or test portion");
  }
  FoldResult r;
  r.fold = f + 1;
  r.infants = plan.folds[f];
  r.fit_snippets = split.fit.size();
  r.validation_snippets = split.validation.size();
  r.test_snippets = split.test.size();

  models::TrainedClassifier classifier;
  classifier.arch = spec.name;
  classifier.lstm_activation = config.build.lstm_activation;
  if (spec.family == models::Family::Svm) {
    models::SvmGridOptions opt;
    opt.kind = spec.kernel;
    opt.degree = spec.degree;
    opt.coef0 = config.poly_coef0;
    opt.standardize = config.svm_standardize;
    opt.metric = config.svm_metric;
    opt.smo.tolerance = config.svm_tolerance;
    opt.jobs = config.jobs;
    auto sel = models::svm_grid_search(feature_set(spec, split.fit), feature_set(spec, split.validation), opt);
    r.candidates = std::move(sel.candidates);
    r.chosen = sel.chosen;
    classifier.model = std::move(sel.model);
  } else {
    models::NetworkSelectionOptions opt;
    opt.repeats = config.repeats;
    opt.jobs = config.jobs;
    opt.build = config.build;
    opt.post_train = hooks.post_train;
    const auto fit = models::labelled_set(spec, split.fit);
    const auto val = models::labelled_set(spec, split.validation);
    auto sel = models::select_best_network(spec, fit, val, config.train, mix_seed(seed, 1000 + f), opt);
    r.candidates = std::move(sel.candidates);
    r.chosen = sel.chosen;
    classifier.model = std::move(sel.model);
  }

  const auto preds = models::predict(classifier, split.test);
  std::vector<Label> predicted, truth;
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    const auto* e = split.test[i];
    predicted.push_back(preds[i].label);
    truth.push_back(e->label);
    (e->label == Label::FmPlus ? r.test_fm_plus : r.test_fm_minus) += 1;
    r.predictions.push_back({e->snippet_id, e->label, preds[i].score, preds[i].label});
  }
  r.metrics = confusion(predicted, truth);
  return r;
}

}  // namespace

void CvConfig::validate() const {
  if (folds == 0) throw Error("folds must be at least 1");
  if (repeats == 0) throw Error("repeats must be at least 1");
  if (!(svm_tolerance > 0.0)) throw Error("SVM tolerance must be positive");
  if (!(build.dropout_rate >= 0.0 && build.dropout_rate < 1.0)) throw Error("dropout rate must be in [0, 1)");
  train.validate();
}

nlohmann::json to_json(const CvConfig& c) {
  return {{"folds", c.folds},
          {"repeats", c.repeats},
          {"train", nn::to_json(c.train)},
          {"lstm_activation", nn::to_string(c.build.lstm_activation)},
          {"dropout_rate", c.build.dropout_rate},
          {"svm_metric", models::to_string(c.svm_metric)},
          {"svm_standardize", c.svm_standardize},
          {"poly_coef0", c.poly_coef0},
          {"svm_tolerance", c.svm_tolerance}};
}

CvConfig cv_config_from_json(const nlohmann::json& j, CvConfig base) {
  CvConfig c = std::move(base);
  if (j.contains("folds")) c.folds = j.at("folds").get<std::size_t>();
  if (j.contains("repeats")) c.repeats = j.at("repeats").get<std::size_t>();
  if (j.contains("train")) c.train = nn::train_config_from_json(j.at("train"), c.train);
  if (j.contains("lstm_activation")) {
    c.build.lstm_activation = nn::parse_cell_activation(j.at("lstm_activation").get<std::string>());
  }
  if (j.contains("dropout_rate")) c.build.dropout_rate = j.at("dropout_rate").get<double>();
  if (j.contains("svm_metric")) c.svm_metric = models::parse_svm_selection_metric(j.at("svm_metric").get<std::string>());
  if (j.contains("svm_standardize")) c.svm_standardize = j.at("svm_standardize").get<bool>();
  if (j.contains("poly_coef0")) c.poly_coef0 = j.at("poly_coef0").get<double>();
  if (j.contains("svm_tolerance")) c.svm_tolerance = j.at("svm_tolerance").get<double>();
  if (j.contains("jobs")) c.jobs = j.at("jobs").get<std::size_t>();
  return c;
}

std::vector<double> MetricSummary::defined() const {
  std::vector<double> v;
  for (const auto& x : folds) {
    if (x) v.push_back(*x);
  }
  return v;
}

MetricSummary summarize(std::vector<std::optional<double>> fold_values) {
  MetricSummary s;
  s.folds = std::move(fold_values);
  const auto v = s.defined();
  if (!v.empty()) s.mean = sample_mean(v);
  if (v.size() >= 2) s.ci = ci95_mean(v);
  return s;
}

nlohmann::json to_json(const CvReport& r) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : r.folds) folds.push_back(to_json(f));
  return {{"format", "pmat-cv-report"},
          {"version", 1},
          {"architecture", r.arch},
          {"seed", r.seed},
          {"config", r.config},
          {"summary",
           {{"sensitivity", to_json(r.sensitivity)},
            {"specificity", to_json(r.specificity)},
            {"balanced_accuracy", to_json(r.balanced_accuracy)}}},
          {"folds", folds}};
}

CvReport cv_report_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "pmat-cv-report") throw Error("not a cross-validation report");
  CvReport r;
  r.arch = j.at("architecture").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = j.at("config");
  for (const auto& f : j.at("folds")) r.folds.push_back(fold_result_from_json(f));
  const auto& s = j.at("summary");
  r.sensitivity = metric_summary_from_json(s.at("sensitivity"));
  r.specificity = metric_summary_from_json(s.at("specificity"));
  r.balanced_accuracy = metric_summary_from_json(s.at("balanced_accuracy"));
  return r;
}

std::string report_json_text(const CvReport& r) { return to_json(r).dump(2) + "\n"; }

void write_report(const CvReport& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << report_json_text(r);
  if (!out) throw Error("failed writing " + path.string());
}

CvReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return cv_report_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

CvReport run_crossval(std::span<const models::EncodedSnippet> data, std::string_view arch, const CvConfig& config,
                      std::uint64_t seed, const CvHooks& hooks) {
  config.validate();
  const models::ArchSpec& spec = models::find_arch(arch);
  if (data.empty()) throw Error("cross-validation needs a non-empty dataset");
  std::vector<std::string> infants;
  for (const auto& e : data) infants.push_back(e.infant_id);
  const FoldPlan plan = grouped_kfold(infants, config.folds, seed);
  check_group_integrity(plan, infants);

  CvReport report;
  report.arch = spec.name;
  report.seed = seed;
  report.config = to_json(config);
  for (std::size_t f = 0; f < plan.k; ++f) {
    if (hooks.log) hooks.log(spec.name + ": fold " + std::to_string(f + 1) + "/" + std::to_string(plan.k));
    try {
      report.folds.push_back(run_fold(data, spec, plan, f, config, seed, hooks));
    } catch (const std::exception& e) {
      throw Error(spec.name + " fold " + std::to_string(f + 1) + ": " + e.what());
    }
  }
  std::vector<std::optional<double>> tpr, tnr, ba;
  for (const auto& f : report.folds) {
    tpr.push_back(f.metrics.tpr);
    tnr.push_back(f.metrics.tnr);
    ba.push_back(f.metrics.ba);
  }
  report.sensitivity = summarize(std::move(tpr));
  report.specificity = summarize(std::move(tnr));
  report.balanced_accuracy = summarize(std::move(ba));
  return report;
}

std::vector<models::EncodedSnippet> encode_manifest(const std::filesystem::path& manifest, std::size_t jobs) {
  std::vector<models::EncodedSnippet> out;
  std::vector<PressureSnippet> batch;
  const std::size_t batch_size = std::max<std::size_t>(1, jobs) * 8;
  auto flush = [&] {
    auto encoded = models::encode_all(batch, jobs);
    for (auto& e : encoded) out.push_back(std::move(e));
    batch.clear();
  };
  visit_dataset(manifest, [&](PressureSnippet&& s) {
    batch.push_back(std::move(s));
    if (batch.size() >= batch_size) flush();
  });
  flush();
  return out;
}

}  // namespace pmat::eval
