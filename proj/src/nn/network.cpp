// SPDX-License-Identifier: Apache-2.0
#include "pmat/nn/network.hpp"

#include <algorithm>
#include <cmath>

#include "pmat/common.hpp"

namespace pmat::nn {

namespace {

double clamp_probability(double p) { return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp); }

}  // namespace

double bce_loss(std::span<const double> probabilities, std::span<const double> labels) {
  if (probabilities.size() != labels.size()) throw Error("bce_loss: size mismatch");
  if (probabilities.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    const double p = clamp_probability(probabilities[k]);
    const double y = labels[k];
    total -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
  }
  return total / static_cast<double>(probabilities.size());
}

std::vector<double> bce_gradient(std::span<const double> probabilities, std::span<const double> labels) {
  if (probabilities.size() != labels.size()) throw Error("bce_gradient: size mismatch");
  std::vector<double> g(probabilities.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(probabilities.size());
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    const double p = probabilities[k];
    if (p < kProbabilityClamp || p > 1.0 - kProbabilityClamp) continue;
    const double y = labels[k];
    g[k] = scale * (-(y / p) + (1.0 - y) / (1.0 - p));
  }
  return g;
}

Network::Network(std::string architecture, std::vector<std::size_t> input_shape)
    : architecture_(std::move(architecture)), input_shape_(input_shape), output_shape_(std::move(input_shape)) {}

Network::Network(const Network& other)
    : architecture_(other.architecture_), input_shape_(other.input_shape_), output_shape_(other.output_shape_) {
  layers_.reserve(other.layers_.size());
  for (const auto& l : other.layers_) layers_.push_back(l->clone());
}

Network& Network::operator=(const Network& other) {
  if (this != &other) {
    Network copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Network& Network::add(std::unique_ptr<Layer> layer) {
  output_shape_ = layer->output_shape(output_shape_);
  layers_.push_back(std::move(layer));
  return *this;
}

void Network::initialize(std::uint64_t seed) {
  Rng rng(seed);
  for (auto& l : layers_) l->initialize(rng);
}

void Network::check_input(const Tensor& batch) const {
  if (batch.rank() != input_shape_.size() + 1 || batch.sample_shape() != input_shape_) {
    throw Error(architecture_ + ": input batch " + batch.shape_string() + " does not match sample shape " +
                shape_string(input_shape_));
  }
  if (output_shape_ != std::vector<std::size_t>{1}) throw Error(architecture_ + ": network must end in one unit");
}

std::vector<double> Network::forward(const Tensor& batch, Mode mode, Rng* rng) {
  if (mode == Mode::Infer) return predict(batch);
  if (!rng) throw Error("train-mode forward requires an rng");
  check_input(batch);
  Tensor x = batch;
  for (auto& l : layers_) x = l->train_forward(x, *rng);
  return {x.values().begin(), x.values().end()};
}

std::vector<double> Network::predict(const Tensor& batch) const {
  check_input(batch);
  Tensor x = batch;
  for (const auto& l : layers_) x = l->infer(x);
  return {x.values().begin(), x.values().end()};
}

double Network::compute_gradients(const Tensor& batch, std::span<const double> labels, Rng& rng) {
  if (labels.size() != batch.batch()) throw Error("compute_gradients: label count mismatch");
  zero_gradients();
  const auto probabilities = forward(batch, Mode::Train, &rng);
  const double loss = bce_loss(probabilities, labels);
  const auto g = bce_gradient(probabilities, labels);
  Tensor grad({batch.batch(), 1});
  std::copy(g.begin(), g.end(), grad.values().begin());
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) grad = (*it)->backward(grad);
  return loss;
}

void Network::zero_gradients() {
  for (auto& l : layers_) l->zero_gradients();
}

std::vector<Parameter*> Network::parameters() {
  std::vector<Parameter*> out;
  for (auto& l : layers_)
    for (auto& p : l->parameters()) out.push_back(&p);
  return out;
}

std::vector<Parameter*> Network::buffers() {
  std::vector<Parameter*> out;
  for (auto& l : layers_)
    for (auto& p : l->buffers()) out.push_back(&p);
  return out;
}

std::vector<const Parameter*> Network::parameters() const {
  std::vector<const Parameter*> out;
  for (const auto& l : layers_)
    for (const auto& p : l->parameters()) out.push_back(&p);
  return out;
}

std::vector<const Parameter*> Network::buffers() const {
  std::vector<const Parameter*> out;
  for (const auto& l : layers_)
    for (const auto& p : l->buffers()) out.push_back(&p);
  return out;
}

std::size_t Network::parameter_count(bool include_batch_norm) const {
  std::size_t n = 0;
  for (const auto& l : layers_) {
    if (!include_batch_norm && l->kind() == LayerKind::BatchNorm) continue;
    for (const auto& p : l->parameters()) n += p.value.size();
  }
  return n;
}

}  // namespace pmat::nn
