// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmat/nn/network.hpp"

namespace pmat::verify {

struct GradCheckOptions {
  double step = 1e-4;
  double tolerance = 1e-4;
  /// Denominator floor of the relative error |a - n| / max(|a|, |n|, floor).
  double floor = 1e-6;
  std::uint64_t seed = 7;
  /// Multiplies every analytic gradient; anything but 1 is a fault injection.
  double analytic_scale = 1.0;
};

struct GradCheckResult {
  std::string label;
  std::size_t checked = 0;
  double max_error = 0.0;
  bool passed = true;
};

/// Central differences of L = sum(w * layer(x)) for a fixed random w against
/// the layer's backward pass, over the input and every parameter entry.
/// `input_shape` includes the batch axis.
GradCheckResult check_layer(nn::Layer& layer, const std::vector<std::size_t>& input_shape,
                            const GradCheckOptions& options = {});

/// Central differences of the mean BCE loss of the whole network against
/// compute_gradients, over every parameter entry.
GradCheckResult check_network(nn::Network& net, const nn::Tensor& batch, const std::vector<double>& labels,
                              const GradCheckOptions& options = {});

/// Small instances of each network family built with the catalogue's block
/// structure (FFN, CNN, LSTM with ReLU and tanh cells). Every layer of each
/// is checked on its own, then the whole network.
std::vector<GradCheckResult> gradient_battery(const GradCheckOptions& options = {});

}  // namespace pmat::verify
