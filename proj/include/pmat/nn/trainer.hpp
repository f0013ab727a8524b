// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <json.hpp>

#include "pmat/nn/network.hpp"
#include "pmat/nn/optimizer.hpp"

namespace pmat::nn {

struct TrainConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
  std::size_t batch_size = 4;
  std::size_t patience = 10;
  double validation_fraction = 1.0 / 6.0;
  std::size_t max_epochs = 200;

  AdamSettings adam() const { return {learning_rate, beta1, beta2, epsilon}; }
  /// Throws Error unless every field is positive and validation_fraction is in (0, 1).
  void validate() const;
};

nlohmann::json to_json(const TrainConfig& c);
/// Missing keys keep their defaults.
TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base = {});

/// Inputs stacked along axis 0 with one 0/1 label per sample.
struct LabelledSet {
  Tensor inputs;
  std::vector<double> labels;

  std::size_t size() const { return labels.size(); }
};

/// Patience bookkeeping: an epoch improves only if its loss is strictly
/// below the best so far.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

  /// Records epoch `epoch` (1-based); returns true if it is the new best.
  bool record(std::size_t epoch, double loss);
  bool should_stop() const { return epochs_without_improvement_ >= patience_; }
  double best_loss() const { return best_loss_; }
  std::size_t best_epoch() const { return best_epoch_; }

 private:
  std::size_t patience_;
  double best_loss_ = std::numeric_limits<double>::infinity();
  std::size_t best_epoch_ = 0;
  std::size_t epochs_without_improvement_ = 0;
};

struct TrainedNet {
  Network net;
  double validation_loss = std::numeric_limits<double>::infinity();
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  std::uint64_t seed = 0;
  TrainConfig config;
  std::vector<double> validation_history;
  bool diverged = false;  ///< a training loss became non-finite
};

/// Mean BCE of the network on `set` in infer mode.
double evaluate_loss(const Network& net, const LabelledSet& set);

/// Optional per-epoch observer: (epoch, validation loss).
using EpochObserver = std::function<void(std::size_t, double)>;

/// Seeded mini-batch training with validation early stopping. `architecture`
/// supplies the layer stack; its parameters are re-initialized from `seed`.
/// Returns the weights of the best-validation epoch.
TrainedNet train(const Network& architecture, const LabelledSet& fit, const LabelledSet& validation,
                 const TrainConfig& config, std::uint64_t seed, const EpochObserver& observer = {});

}  // namespace pmat::nn
