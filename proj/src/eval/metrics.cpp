// SPDX-License-Identifier: Apache-2.0
#include "pmat/eval/metrics.hpp"

#include "pmat/binary_io.hpp"

namespace pmat::eval {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? json_number(*v) : nlohmann::json(nullptr); }

std::optional<double> optional_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return number_from_json(j);
}

}  // namespace

Metrics metrics_from_counts(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn) {
  Metrics m{tp, tn, fp, fn, ratio(tp, tp + fn), ratio(tn, tn + fp), std::nullopt};
  if (m.tpr && m.tnr) m.ba = (*m.tpr + *m.tnr) / 2.0;
  return m;
}

Metrics confusion(std::span<const Label> predictions, std::span<const Label> labels) {
  if (predictions.size() != labels.size()) {
    throw Error("confusion: " + std::to_string(predictions.size()) + " predictions for " +
                std::to_string(labels.size()) + " labels");
  }
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool pred_pos = predictions[i] == Label::FmPlus;
    if (labels[i] == Label::FmPlus) {
      pred_pos ? ++tp : ++fn;
    } else {
      pred_pos ? ++fp : ++tn;
    }
  }
  return metrics_from_counts(tp, tn, fp, fn);
}

nlohmann::json to_json(const Metrics& m) {
  return {{"tp", m.tp},
          {"tn", m.tn},
          {"fp", m.fp},
          {"fn", m.fn},
          {"tpr", optional_json(m.tpr)},
          {"tnr", optional_json(m.tnr)},
          {"ba", optional_json(m.ba)}};
}

Metrics metrics_from_json(const nlohmann::json& j) {
  Metrics m;
  m.tp = j.at("tp").get<std::size_t>();
  m.tn = j.at("tn").get<std::size_t>();
  m.fp = j.at("fp").get<std::size_t>();
  m.fn = j.at("fn").get<std::size_t>();
  m.tpr = optional_from_json(j.at("tpr"));
  m.tnr = optional_from_json(j.at("tnr"));
  m.ba = optional_from_json(j.at("ba"));
  return m;
}

}  // namespace pmat::eval
