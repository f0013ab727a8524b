// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pmat/nn/layers.hpp"

namespace pmat::nn {

inline constexpr double kProbabilityClamp = 1e-7;

/// Mean binary cross-entropy; probabilities are clamped to [1e-7, 1 - 1e-7].
double bce_loss(std::span<const double> probabilities, std::span<const double> labels);

/// d(bce_loss)/d(probability); zero where the clamp is active.
std::vector<double> bce_gradient(std::span<const double> probabilities, std::span<const double> labels);

/// A layer stack ending in a single sigmoid unit.
class Network {
 public:
  Network() = default;
  Network(std::string architecture, std::vector<std::size_t> input_shape);
  Network(const Network& other);
  Network& operator=(const Network& other);
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  /// Appends a layer; throws if it cannot consume the current output shape.
  Network& add(std::unique_ptr<Layer> layer);

  const std::string& architecture() const { return architecture_; }
  const std::vector<std::size_t>& input_shape() const { return input_shape_; }
  const std::vector<std::size_t>& output_shape() const { return output_shape_; }
  std::size_t layer_count() const { return layers_.size(); }
  Layer& layer(std::size_t i) { return *layers_.at(i); }
  const Layer& layer(std::size_t i) const { return *layers_.at(i); }

  void initialize(std::uint64_t seed);

  /// Per-sample probabilities. Infer mode is deterministic and keeps no state;
  /// train mode needs `rng` for dropout masks and records intermediates.
  std::vector<double> forward(const Tensor& batch, Mode mode, Rng* rng = nullptr);
  std::vector<double> predict(const Tensor& batch) const;

  /// Clears gradients, runs a train-mode forward pass, and backpropagates the
  /// mean BCE loss. Returns the loss.
  double compute_gradients(const Tensor& batch, std::span<const double> labels, Rng& rng);

  void zero_gradients();
  std::vector<Parameter*> parameters();
  std::vector<Parameter*> buffers();
  std::vector<const Parameter*> parameters() const;
  std::vector<const Parameter*> buffers() const;

  /// Trainable scalar count; optionally excluding batch-norm gain/shift.
  std::size_t parameter_count(bool include_batch_norm = true) const;

 private:
  void check_input(const Tensor& batch) const;

  std::string architecture_;
  std::vector<std::size_t> input_shape_;
  std::vector<std::size_t> output_shape_;
  std::vector<std::unique_ptr<Layer>> layers_;
};

}  // namespace pmat::nn
