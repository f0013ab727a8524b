// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmat/nn/layers.hpp"

namespace pmat::nn {

struct AdamSettings {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
};

/// Moment accumulators for one parameter tensor.
struct AdamMoments {
  std::vector<double> first;
  std::vector<double> second;
};

struct AdamState {
  std::vector<AdamMoments> moments;  ///< one per parameter tensor, lazily sized
  std::uint64_t step = 0;
};

/// Bias-corrected Adam update of one tensor at (1-based) step `t`:
///   m = b1 m + (1-b1) g,  v = b2 v + (1-b2) g^2,
///   value -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps).
void adam_update(std::span<double> value, std::span<const double> grad, AdamMoments& moments, std::uint64_t t,
                 const AdamSettings& settings);

/// Advances the step count once and updates every tensor from its gradient.
void adam_step(std::span<Parameter* const> params, AdamState& state, const AdamSettings& settings);

}  // namespace pmat::nn
