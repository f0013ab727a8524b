// SPDX-License-Identifier: Apache-2.0
#include "pmat/nn/optimizer.hpp"

#include <cmath>

#include "pmat/common.hpp"

namespace pmat::nn {

void adam_update(std::span<double> value, std::span<const double> grad, AdamMoments& moments, std::uint64_t t,
                 const AdamSettings& s) {
  if (value.size() != grad.size()) throw Error("adam_update: size mismatch");
  if (moments.first.size() != value.size()) {
    moments.first.assign(value.size(), 0.0);
    moments.second.assign(value.size(), 0.0);
  }
  const double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(t));
  for (std::size_t k = 0; k < value.size(); ++k) {
    const double g = grad[k];
    double& m = moments.first[k];
    double& v = moments.second[k];
    m = s.beta1 * m + (1.0 - s.beta1) * g;
    v = s.beta2 * v + (1.0 - s.beta2) * g * g;
    value[k] -= s.learning_rate * (m / c1) / (std::sqrt(v / c2) + s.epsilon);
  }
}

void adam_step(std::span<Parameter* const> params, AdamState& state, const AdamSettings& settings) {
  if (state.moments.size() != params.size()) state.moments.resize(params.size());
  ++state.step;
  for (std::size_t i = 0; i < params.size(); ++i) {
    adam_update(params[i]->value, params[i]->grad, state.moments[i], state.step, settings);
  }
}

}  // namespace pmat::nn
