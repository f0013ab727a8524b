// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include <json.hpp>

#include "pmat/common.hpp"

namespace pmat::eval {

/// FM+ is the positive class. A rate whose denominator is zero is left empty,
/// and so is BA.
struct Metrics {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::optional<double> tpr;
  std::optional<double> tnr;
  std::optional<double> ba;

  std::size_t total() const { return tp + tn + fp + fn; }
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics metrics_from_counts(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn);
/// Throws Error on a length mismatch.
Metrics confusion(std::span<const Label> predictions, std::span<const Label> labels);

nlohmann::json to_json(const Metrics& m);
Metrics metrics_from_json(const nlohmann::json& j);

}  // namespace pmat::eval
