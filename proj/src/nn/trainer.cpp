// SPDX-License-Identifier: Apache-2.0
#include "pmat/nn/trainer.hpp"

#include <cmath>
#include <numeric>

#include "pmat/common.hpp"

namespace pmat::nn {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0) ||
      !(epsilon > 0.0) || batch_size == 0 || patience == 0 || max_epochs == 0) {
    throw Error("invalid training configuration");
  }
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw Error("validation_fraction must lie in (0, 1)");
  }
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"learning_rate", c.learning_rate}, {"beta1", c.beta1},
          {"beta2", c.beta2},                 {"epsilon", c.epsilon},
          {"batch_size", c.batch_size},       {"patience", c.patience},
          {"validation_fraction", c.validation_fraction}, {"max_epochs", c.max_epochs}};
}

TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig c) {
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.beta1 = j.value("beta1", c.beta1);
  c.beta2 = j.value("beta2", c.beta2);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.patience = j.value("patience", c.patience);
  c.validation_fraction = j.value("validation_fraction", c.validation_fraction);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.validate();
  return c;
}

bool EarlyStopping::record(std::size_t epoch, double loss) {
  if (loss < best_loss_) {
    best_loss_ = loss;
    best_epoch_ = epoch;
    epochs_without_improvement_ = 0;
    return true;
  }
  ++epochs_without_improvement_;
  return false;
}

double evaluate_loss(const Network& net, const LabelledSet& set) {
  constexpr std::size_t kChunk = 64;
  double total = 0.0;
  for (std::size_t first = 0; first < set.size(); first += kChunk) {
    const std::size_t count = std::min(kChunk, set.size() - first);
    const auto p = net.predict(set.inputs.slice(first, count));
    total += bce_loss(p, std::span(set.labels).subspan(first, count)) * static_cast<double>(count);
  }
  return set.size() ? total / static_cast<double>(set.size()) : 0.0;
}

TrainedNet train(const Network& architecture, const LabelledSet& fit, const LabelledSet& validation,
                 const TrainConfig& config, std::uint64_t seed, const EpochObserver& observer) {
  config.validate();
  if (fit.size() == 0) throw Error("train: empty fit portion");
  if (validation.size() == 0) throw Error("train: empty validation portion");
  if (fit.inputs.batch() != fit.size() || validation.inputs.batch() != validation.size()) {
    throw Error("train: inputs and labels disagree in count");
  }

  Network net = architecture;
  net.initialize(mix_seed(seed, 0));
  Rng shuffle_rng(mix_seed(seed, 1));
  Rng dropout_rng(mix_seed(seed, 2));
  AdamState adam;
  const AdamSettings settings = config.adam();
  auto params = net.parameters();

  TrainedNet result;
  result.seed = seed;
  result.config = config;
  result.net = net;
  EarlyStopping stopper(config.patience);

  std::vector<std::size_t> order(fit.size());
  std::vector<double> batch_labels;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_rng.shuffle(std::span(order));
    for (std::size_t first = 0; first < order.size() && !result.diverged; first += config.batch_size) {
      const std::size_t count = std::min(config.batch_size, order.size() - first);
      const auto rows = std::span(order).subspan(first, count);
      const Tensor batch = fit.inputs.gather(rows);
      batch_labels.resize(count);
      for (std::size_t k = 0; k < count; ++k) batch_labels[k] = fit.labels[rows[k]];
      const double loss = net.compute_gradients(batch, batch_labels, dropout_rng);
      if (!std::isfinite(loss)) {
        result.diverged = true;
        break;
      }
      adam_step(params, adam, settings);
    }
    result.epochs_run = epoch;
    if (result.diverged) break;

    double val_loss = evaluate_loss(net, validation);
    if (!std::isfinite(val_loss)) val_loss = std::numeric_limits<double>::infinity();
    result.validation_history.push_back(val_loss);
    if (observer) observer(epoch, val_loss);
    if (stopper.record(epoch, val_loss)) {
      result.net = net;
      result.best_epoch = epoch;
      result.validation_loss = val_loss;
    }
    if (stopper.should_stop()) break;
  }
  return result;
}

}  // namespace pmat::nn
