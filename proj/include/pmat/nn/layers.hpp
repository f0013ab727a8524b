// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pmat/nn/tensor.hpp"
#include "pmat/rng.hpp"

namespace pmat::nn {

enum class LayerKind { Dense, Conv1D, GlobalAvgPool, BatchNorm, Dropout, Relu, Sigmoid, Lstm };

std::string_view to_string(LayerKind kind);

enum class Mode { Train, Infer };

/// Activation used inside LSTM cells for the candidate and the cell output.
enum class CellActivation { Relu, Tanh };

std::string_view to_string(CellActivation a);
CellActivation parse_cell_activation(std::string_view text);

struct Parameter {
  std::string name;
  std::vector<double> value;
  std::vector<double> grad;  ///< empty for non-trainable buffers
};

/// A differentiable layer. Shapes passed around are per-sample (no batch axis).
///
/// infer() is const and never touches cached state. train_forward() records
/// what backward() needs; backward() accumulates into parameter gradients and
/// returns the gradient with respect to the layer input.
class Layer {
 public:
  virtual ~Layer() = default;

  virtual LayerKind kind() const = 0;
  virtual std::unique_ptr<Layer> clone() const = 0;
  virtual std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const = 0;

  virtual Tensor infer(const Tensor& input) const = 0;
  virtual Tensor train_forward(const Tensor& input, Rng& rng) = 0;
  virtual Tensor backward(const Tensor& grad_output) = 0;

  /// Glorot-uniform weights, zero biases; batch-norm gain 1, shift 0.
  virtual void initialize(Rng& /*rng*/) {}

  std::vector<Parameter>& parameters() { return params_; }
  const std::vector<Parameter>& parameters() const { return params_; }
  std::vector<Parameter>& buffers() { return buffers_; }
  const std::vector<Parameter>& buffers() const { return buffers_; }

  void zero_gradients();

 protected:
  std::vector<Parameter> params_;
  std::vector<Parameter> buffers_;
};

class Dense final : public Layer {
 public:
  Dense(std::size_t inputs, std::size_t units);
  LayerKind kind() const override { return LayerKind::Dense; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Dense>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override;
  Tensor infer(const Tensor& input) const override;
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;
  void initialize(Rng& rng) override;

  std::size_t inputs() const { return inputs_; }
  std::size_t units() const { return units_; }
  /// Kernel laid out inputs x units.
  std::vector<double>& weights() { return params_[0].value; }
  std::vector<double>& bias() { return params_[1].value; }

 private:
  std::size_t inputs_, units_;
  Tensor input_;
};

/// Stride-1 temporal convolution with zero "same" padding.
class Conv1D final : public Layer {
 public:
  Conv1D(std::size_t in_channels, std::size_t filters, std::size_t kernel);
  LayerKind kind() const override { return LayerKind::Conv1D; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Conv1D>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override;
  Tensor infer(const Tensor& input) const override;
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;
  void initialize(Rng& rng) override;

  std::size_t filters() const { return filters_; }
  std::size_t kernel() const { return kernel_; }
  /// Kernel laid out kernel x in_channels x filters.
  std::vector<double>& weights() { return params_[0].value; }
  std::vector<double>& bias() { return params_[1].value; }

 private:
  std::size_t in_channels_, filters_, kernel_;
  Tensor input_;
};

/// Mean over the whole time axis: (T x C) -> (C).
class GlobalAvgPool final : public Layer {
 public:
  LayerKind kind() const override { return LayerKind::GlobalAvgPool; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<GlobalAvgPool>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override;
  Tensor infer(const Tensor& input) const override;
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;

 private:
  std::vector<std::size_t> input_shape_;
};

/// Per-channel normalization over batch (and time for sequence inputs).
/// Train mode uses batch statistics and updates running statistics;
/// infer mode uses the running statistics.
class BatchNorm final : public Layer {
 public:
  static constexpr double kEpsilon = 1e-3;
  static constexpr double kMomentum = 0.99;

  explicit BatchNorm(std::size_t channels);
  LayerKind kind() const override { return LayerKind::BatchNorm; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<BatchNorm>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override;
  Tensor infer(const Tensor& input) const override;
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;
  void initialize(Rng& rng) override;

 private:
  std::size_t channels_;
  std::vector<double> normalized_;
  std::vector<double> inv_std_;
};

/// Inverted dropout: kept units are scaled by 1 / (1 - rate) while training.
class Dropout final : public Layer {
 public:
  explicit Dropout(double rate = 0.1);
  LayerKind kind() const override { return LayerKind::Dropout; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Dropout>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override { return input; }
  Tensor infer(const Tensor& input) const override { return input; }
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;
  double rate() const { return rate_; }

 private:
  double rate_;
  std::vector<double> mask_;
};

class Relu final : public Layer {
 public:
  LayerKind kind() const override { return LayerKind::Relu; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Relu>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override { return input; }
  Tensor infer(const Tensor& input) const override;
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;

 private:
  Tensor input_;
};

class Sigmoid final : public Layer {
 public:
  LayerKind kind() const override { return LayerKind::Sigmoid; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Sigmoid>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override { return input; }
  Tensor infer(const Tensor& input) const override;
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;

 private:
  Tensor output_;
};

/// LSTM over (T x D) inputs with gates ordered [input, forget, candidate, output]:
///   c_t = f * c_{t-1} + i * act(z_g),  h_t = o * act(c_t).
/// Emits every h_t (T x H) or only the last (H).
class Lstm final : public Layer {
 public:
  Lstm(std::size_t inputs, std::size_t units, bool return_sequences, CellActivation activation);
  LayerKind kind() const override { return LayerKind::Lstm; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Lstm>(*this); }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& input) const override;
  Tensor infer(const Tensor& input) const override;
  Tensor train_forward(const Tensor& input, Rng& rng) override;
  Tensor backward(const Tensor& grad_output) override;
  void initialize(Rng& rng) override;

  std::size_t units() const { return units_; }
  bool return_sequences() const { return return_sequences_; }
  CellActivation activation() const { return activation_; }

 private:
  struct Trace {
    std::vector<double> gates;  // B x T x 4H, activated gate values
    std::vector<double> cells;  // B x T x H
    std::vector<double> hidden; // B x T x H
  };
  Tensor run(const Tensor& input, Trace* trace) const;

  std::size_t inputs_, units_;
  bool return_sequences_;
  CellActivation activation_;
  Tensor input_;
  Trace trace_;
};

}  // namespace pmat::nn
