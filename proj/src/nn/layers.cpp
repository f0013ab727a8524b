// SPDX-License-Identifier: Apache-2.0
#include "pmat/nn/layers.hpp"

#include <algorithm>
#include <cmath>

#include "pmat/common.hpp"

namespace pmat::nn {

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::Dense: return "dense";
    case LayerKind::Conv1D: return "conv1d";
    case LayerKind::GlobalAvgPool: return "global_avg_pool";
    case LayerKind::BatchNorm: return "batch_norm";
    case LayerKind::Dropout: return "dropout";
    case LayerKind::Relu: return "relu";
    case LayerKind::Sigmoid: return "sigmoid";
    case LayerKind::Lstm: return "lstm";
  }
  return "unknown";
}

std::string_view to_string(CellActivation a) { return a == CellActivation::Relu ? "relu" : "tanh"; }

CellActivation parse_cell_activation(std::string_view text) {
  if (text == "relu") return CellActivation::Relu;
  if (text == "tanh") return CellActivation::Tanh;
  throw Error("cell activation must be relu or tanh, got '" + std::string(text) + "'");
}

void Layer::zero_gradients() {
  for (auto& p : params_) std::fill(p.grad.begin(), p.grad.end(), 0.0);
}

namespace {

Parameter make_param(std::string name, std::size_t n, double fill = 0.0) {
  return {std::move(name), std::vector<double>(n, fill), std::vector<double>(n, 0.0)};
}

void glorot_uniform(std::vector<double>& w, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& v : w) v = rng.uniform(-limit, limit);
}

void expect_shape(const Tensor& t, const std::vector<std::size_t>& sample_shape, std::string_view layer) {
  if (t.rank() != sample_shape.size() + 1 || t.sample_shape() != sample_shape) {
    throw Error(std::string(layer) + ": input shape " + t.shape_string() + " does not match " +
                shape_string(sample_shape));
  }
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

// ---------------------------------------------------------------------------
// Dense

Dense::Dense(std::size_t inputs, std::size_t units) : inputs_(inputs), units_(units) {
  params_.push_back(make_param("kernel", inputs * units));
  params_.push_back(make_param("bias", units));
}

std::vector<std::size_t> Dense::output_shape(const std::vector<std::size_t>& input) const {
  if (input != std::vector<std::size_t>{inputs_}) throw Error("dense: expected input " + shape_string({inputs_}));
  return {units_};
}

void Dense::initialize(Rng& rng) {
  glorot_uniform(params_[0].value, inputs_, units_, rng);
  std::fill(params_[1].value.begin(), params_[1].value.end(), 0.0);
}

Tensor Dense::infer(const Tensor& x) const {
  expect_shape(x, {inputs_}, "dense");
  const auto& w = params_[0].value;
  const auto& b = params_[1].value;
  Tensor y({x.batch(), units_});
  for (std::size_t n = 0; n < x.batch(); ++n) {
    const double* xi = x.data() + n * inputs_;
    double* yo = y.data() + n * units_;
    std::copy(b.begin(), b.end(), yo);
    for (std::size_t i = 0; i < inputs_; ++i) {
      const double xv = xi[i];
      const double* wr = w.data() + i * units_;
      for (std::size_t o = 0; o < units_; ++o) yo[o] += xv * wr[o];
    }
  }
  return y;
}

Tensor Dense::train_forward(const Tensor& x, Rng&) {
  input_ = x;
  return infer(x);
}

Tensor Dense::backward(const Tensor& dy) {
  const auto& w = params_[0].value;
  auto& dw = params_[0].grad;
  auto& db = params_[1].grad;
  Tensor dx({input_.batch(), inputs_});
  for (std::size_t n = 0; n < input_.batch(); ++n) {
    const double* xi = input_.data() + n * inputs_;
    const double* g = dy.data() + n * units_;
    double* dxi = dx.data() + n * inputs_;
    for (std::size_t o = 0; o < units_; ++o) db[o] += g[o];
    for (std::size_t i = 0; i < inputs_; ++i) {
      const double xv = xi[i];
      const double* wr = w.data() + i * units_;
      double* dwr = dw.data() + i * units_;
      double acc = 0.0;
      for (std::size_t o = 0; o < units_; ++o) {
        dwr[o] += xv * g[o];
        acc += wr[o] * g[o];
      }
      dxi[i] = acc;
    }
  }
  return dx;
}

// ---------------------------------------------------------------------------
// Conv1D

Conv1D::Conv1D(std::size_t in_channels, std::size_t filters, std::size_t kernel)
    : in_channels_(in_channels), filters_(filters), kernel_(kernel) {
  if (kernel % 2 == 0) throw Error("conv1d: kernel length must be odd");
  params_.push_back(make_param("kernel", kernel * in_channels * filters));
  params_.push_back(make_param("bias", filters));
}

std::vector<std::size_t> Conv1D::output_shape(const std::vector<std::size_t>& input) const {
  if (input.size() != 2 || input[1] != in_channels_) {
    throw Error("conv1d: expected (T x " + std::to_string(in_channels_) + ") input, got " + shape_string(input));
  }
  return {input[0], filters_};
}

void Conv1D::initialize(Rng& rng) {
  glorot_uniform(params_[0].value, kernel_ * in_channels_, kernel_ * filters_, rng);
  std::fill(params_[1].value.begin(), params_[1].value.end(), 0.0);
}

Tensor Conv1D::infer(const Tensor& x) const {
  if (x.rank() != 3 || x.dim(2) != in_channels_) throw Error("conv1d: bad input shape " + x.shape_string());
  const std::size_t batch = x.batch(), steps = x.dim(1);
  const std::size_t pad = kernel_ / 2;
  const auto& w = params_[0].value;
  const auto& b = params_[1].value;
  Tensor y({batch, steps, filters_});
  for (std::size_t n = 0; n < batch; ++n) {
    const double* xs = x.data() + n * steps * in_channels_;
    double* ys = y.data() + n * steps * filters_;
    for (std::size_t t = 0; t < steps; ++t) {
      double* yo = ys + t * filters_;
      std::copy(b.begin(), b.end(), yo);
      for (std::size_t k = 0; k < kernel_; ++k) {
        if (t + k < pad || t + k - pad >= steps) continue;
        const double* xi = xs + (t + k - pad) * in_channels_;
        const double* wk = w.data() + k * in_channels_ * filters_;
        for (std::size_t c = 0; c < in_channels_; ++c) {
          const double xv = xi[c];
          const double* wr = wk + c * filters_;
          for (std::size_t f = 0; f < filters_; ++f) yo[f] += xv * wr[f];
        }
      }
    }
  }
  return y;
}

Tensor Conv1D::train_forward(const Tensor& x, Rng&) {
  input_ = x;
  return infer(x);
}

Tensor Conv1D::backward(const Tensor& dy) {
  const std::size_t batch = input_.batch(), steps = input_.dim(1);
  const std::size_t pad = kernel_ / 2;
  const auto& w = params_[0].value;
  auto& dw = params_[0].grad;
  auto& db = params_[1].grad;
  Tensor dx({batch, steps, in_channels_});
  for (std::size_t n = 0; n < batch; ++n) {
    const double* xs = input_.data() + n * steps * in_channels_;
    const double* gs = dy.data() + n * steps * filters_;
    double* dxs = dx.data() + n * steps * in_channels_;
    for (std::size_t t = 0; t < steps; ++t) {
      const double* g = gs + t * filters_;
      for (std::size_t f = 0; f < filters_; ++f) db[f] += g[f];
      for (std::size_t k = 0; k < kernel_; ++k) {
        if (t + k < pad || t + k - pad >= steps) continue;
        const std::size_t src = t + k - pad;
        const double* xi = xs + src * in_channels_;
        double* dxi = dxs + src * in_channels_;
        const double* wk = w.data() + k * in_channels_ * filters_;
        double* dwk = dw.data() + k * in_channels_ * filters_;
        for (std::size_t c = 0; c < in_channels_; ++c) {
          const double xv = xi[c];
          const double* wr = wk + c * filters_;
          double* dwr = dwk + c * filters_;
          double acc = 0.0;
          for (std::size_t f = 0; f < filters_; ++f) {
            dwr[f] += xv * g[f];
            acc += wr[f] * g[f];
          }
          dxi[c] += acc;
        }
      }
    }
  }
  return dx;
}

// ---------------------------------------------------------------------------
// GlobalAvgPool

std::vector<std::size_t> GlobalAvgPool::output_shape(const std::vector<std::size_t>& input) const {
  if (input.size() != 2) throw Error("global_avg_pool: expected (T x C) input, got " + shape_string(input));
  return {input[1]};
}

Tensor GlobalAvgPool::infer(const Tensor& x) const {
  if (x.rank() != 3) throw Error("global_avg_pool: bad input shape " + x.shape_string());
  const std::size_t batch = x.batch(), steps = x.dim(1), channels = x.dim(2);
  Tensor y({batch, channels});
  for (std::size_t n = 0; n < batch; ++n) {
    double* yo = y.data() + n * channels;
    for (std::size_t t = 0; t < steps; ++t) {
      const double* xi = x.data() + (n * steps + t) * channels;
      for (std::size_t c = 0; c < channels; ++c) yo[c] += xi[c];
    }
    for (std::size_t c = 0; c < channels; ++c) yo[c] /= static_cast<double>(steps);
  }
  return y;
}

Tensor GlobalAvgPool::train_forward(const Tensor& x, Rng&) {
  input_shape_ = x.shape();
  return infer(x);
}

Tensor GlobalAvgPool::backward(const Tensor& dy) {
  const std::size_t batch = input_shape_[0], steps = input_shape_[1], channels = input_shape_[2];
  Tensor dx(input_shape_);
  const double scale = 1.0 / static_cast<double>(steps);
  for (std::size_t n = 0; n < batch; ++n) {
    const double* g = dy.data() + n * channels;
    for (std::size_t t = 0; t < steps; ++t) {
      double* d = dx.data() + (n * steps + t) * channels;
      for (std::size_t c = 0; c < channels; ++c) d[c] = g[c] * scale;
    }
  }
  return dx;
}

// ---------------------------------------------------------------------------
// BatchNorm

BatchNorm::BatchNorm(std::size_t channels) : channels_(channels) {
  params_.push_back(make_param("gamma", channels, 1.0));
  params_.push_back(make_param("beta", channels, 0.0));
  buffers_.push_back({"moving_mean", std::vector<double>(channels, 0.0), {}});
  buffers_.push_back({"moving_variance", std::vector<double>(channels, 1.0), {}});
}

std::vector<std::size_t> BatchNorm::output_shape(const std::vector<std::size_t>& input) const {
  if (input.empty() || input.back() != channels_) {
    throw Error("batch_norm: expected last axis " + std::to_string(channels_) + ", got " + shape_string(input));
  }
  return input;
}

void BatchNorm::initialize(Rng&) {
  std::fill(params_[0].value.begin(), params_[0].value.end(), 1.0);
  std::fill(params_[1].value.begin(), params_[1].value.end(), 0.0);
  std::fill(buffers_[0].value.begin(), buffers_[0].value.end(), 0.0);
  std::fill(buffers_[1].value.begin(), buffers_[1].value.end(), 1.0);
}

Tensor BatchNorm::infer(const Tensor& x) const {
  if (x.shape().back() != channels_) throw Error("batch_norm: bad input shape " + x.shape_string());
  const auto& gamma = params_[0].value;
  const auto& beta = params_[1].value;
  const auto& mean = buffers_[0].value;
  const auto& var = buffers_[1].value;
  Tensor y(x.shape());
  const std::size_t rows = x.size() / channels_;
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xi = x.data() + r * channels_;
    double* yo = y.data() + r * channels_;
    for (std::size_t c = 0; c < channels_; ++c) {
      yo[c] = gamma[c] * (xi[c] - mean[c]) / std::sqrt(var[c] + kEpsilon) + beta[c];
    }
  }
  return y;
}

Tensor BatchNorm::train_forward(const Tensor& x, Rng&) {
  if (x.shape().back() != channels_) throw Error("batch_norm: bad input shape " + x.shape_string());
  const auto& gamma = params_[0].value;
  const auto& beta = params_[1].value;
  const std::size_t rows = x.size() / channels_;
  std::vector<double> mean(channels_, 0.0), var(channels_, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < channels_; ++c) mean[c] += x[r * channels_ + c];
  }
  for (auto& m : mean) m /= static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < channels_; ++c) {
      const double d = x[r * channels_ + c] - mean[c];
      var[c] += d * d;
    }
  }
  for (auto& v : var) v /= static_cast<double>(rows);

  inv_std_.resize(channels_);
  for (std::size_t c = 0; c < channels_; ++c) inv_std_[c] = 1.0 / std::sqrt(var[c] + kEpsilon);
  normalized_.resize(x.size());
  Tensor y(x.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < channels_; ++c) {
      const std::size_t k = r * channels_ + c;
      normalized_[k] = (x[k] - mean[c]) * inv_std_[c];
      y[k] = gamma[c] * normalized_[k] + beta[c];
    }
  }
  auto& run_mean = buffers_[0].value;
  auto& run_var = buffers_[1].value;
  for (std::size_t c = 0; c < channels_; ++c) {
    run_mean[c] = kMomentum * run_mean[c] + (1.0 - kMomentum) * mean[c];
    run_var[c] = kMomentum * run_var[c] + (1.0 - kMomentum) * var[c];
  }
  return y;
}

Tensor BatchNorm::backward(const Tensor& dy) {
  const auto& gamma = params_[0].value;
  auto& dgamma = params_[0].grad;
  auto& dbeta = params_[1].grad;
  const std::size_t rows = dy.size() / channels_;
  std::vector<double> sum_dxhat(channels_, 0.0), sum_dxhat_xhat(channels_, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < channels_; ++c) {
      const std::size_t k = r * channels_ + c;
      dgamma[c] += dy[k] * normalized_[k];
      dbeta[c] += dy[k];
      const double dxhat = dy[k] * gamma[c];
      sum_dxhat[c] += dxhat;
      sum_dxhat_xhat[c] += dxhat * normalized_[k];
    }
  }
  Tensor dx(dy.shape());
  const double inv_rows = 1.0 / static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < channels_; ++c) {
      const std::size_t k = r * channels_ + c;
      const double dxhat = dy[k] * gamma[c];
      dx[k] = inv_std_[c] * (dxhat - inv_rows * sum_dxhat[c] - normalized_[k] * inv_rows * sum_dxhat_xhat[c]);
    }
  }
  return dx;
}

// ---------------------------------------------------------------------------
// Dropout

Dropout::Dropout(double rate) : rate_(rate) {
  if (!(rate >= 0.0 && rate < 1.0)) throw Error("dropout rate must lie in [0, 1)");
}

Tensor Dropout::train_forward(const Tensor& x, Rng& rng) {
  mask_.resize(x.size());
  const double keep_scale = 1.0 / (1.0 - rate_);
  Tensor y(x.shape());
  for (std::size_t k = 0; k < x.size(); ++k) {
    mask_[k] = rng.uniform() < rate_ ? 0.0 : keep_scale;
    y[k] = x[k] * mask_[k];
  }
  return y;
}

Tensor Dropout::backward(const Tensor& dy) {
  Tensor dx(dy.shape());
  for (std::size_t k = 0; k < dy.size(); ++k) dx[k] = dy[k] * mask_[k];
  return dx;
}

// ---------------------------------------------------------------------------
// Activations

Tensor Relu::infer(const Tensor& x) const {
  Tensor y(x.shape());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] > 0.0 ? x[k] : 0.0;
  return y;
}

Tensor Relu::train_forward(const Tensor& x, Rng&) {
  input_ = x;
  return infer(x);
}

Tensor Relu::backward(const Tensor& dy) {
  Tensor dx(dy.shape());
  for (std::size_t k = 0; k < dy.size(); ++k) dx[k] = input_[k] > 0.0 ? dy[k] : 0.0;
  return dx;
}

Tensor Sigmoid::infer(const Tensor& x) const {
  Tensor y(x.shape());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = sigmoid(x[k]);
  return y;
}

Tensor Sigmoid::train_forward(const Tensor& x, Rng&) {
  output_ = infer(x);
  return output_;
}

Tensor Sigmoid::backward(const Tensor& dy) {
  Tensor dx(dy.shape());
  for (std::size_t k = 0; k < dy.size(); ++k) dx[k] = dy[k] * output_[k] * (1.0 - output_[k]);
  return dx;
}

// ---------------------------------------------------------------------------
// Lstm

Lstm::Lstm(std::size_t inputs, std::size_t units, bool return_sequences, CellActivation activation)
    : inputs_(inputs), units_(units), return_sequences_(return_sequences), activation_(activation) {
  params_.push_back(make_param("kernel", inputs * 4 * units));
  params_.push_back(make_param("recurrent_kernel", units * 4 * units));
  params_.push_back(make_param("bias", 4 * units));
}

std::vector<std::size_t> Lstm::output_shape(const std::vector<std::size_t>& input) const {
  if (input.size() != 2 || input[1] != inputs_) {
    throw Error("lstm: expected (T x " + std::to_string(inputs_) + ") input, got " + shape_string(input));
  }
  if (return_sequences_) return {input[0], units_};
  return {units_};
}

void Lstm::initialize(Rng& rng) {
  glorot_uniform(params_[0].value, inputs_, 4 * units_, rng);
  glorot_uniform(params_[1].value, units_, 4 * units_, rng);
  std::fill(params_[2].value.begin(), params_[2].value.end(), 0.0);
}

Tensor Lstm::run(const Tensor& x, Trace* trace) const {
  if (x.rank() != 3 || x.dim(2) != inputs_) throw Error("lstm: bad input shape " + x.shape_string());
  const std::size_t batch = x.batch(), steps = x.dim(1), H = units_, G = 4 * units_;
  const auto& W = params_[0].value;
  const auto& U = params_[1].value;
  const auto& b = params_[2].value;
  const bool relu = activation_ == CellActivation::Relu;
  const auto act = [relu](double v) { return relu ? (v > 0.0 ? v : 0.0) : std::tanh(v); };

  Tensor y = return_sequences_ ? Tensor({batch, steps, H}) : Tensor({batch, H});
  if (trace) {
    trace->gates.assign(batch * steps * G, 0.0);
    trace->cells.assign(batch * steps * H, 0.0);
    trace->hidden.assign(batch * steps * H, 0.0);
  }
  std::vector<double> z(G), h(H), c(H);
  for (std::size_t n = 0; n < batch; ++n) {
    std::fill(h.begin(), h.end(), 0.0);
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t t = 0; t < steps; ++t) {
      std::copy(b.begin(), b.end(), z.begin());
      const double* xt = x.data() + (n * steps + t) * inputs_;
      for (std::size_t d = 0; d < inputs_; ++d) {
        const double xv = xt[d];
        const double* wr = W.data() + d * G;
        for (std::size_t k = 0; k < G; ++k) z[k] += xv * wr[k];
      }
      for (std::size_t j = 0; j < H; ++j) {
        const double hv = h[j];
        const double* ur = U.data() + j * G;
        for (std::size_t k = 0; k < G; ++k) z[k] += hv * ur[k];
      }
      for (std::size_t j = 0; j < H; ++j) {
        const double ig = sigmoid(z[j]);
        const double fg = sigmoid(z[H + j]);
        const double gg = act(z[2 * H + j]);
        const double og = sigmoid(z[3 * H + j]);
        c[j] = fg * c[j] + ig * gg;
        h[j] = og * act(c[j]);
        if (trace) {
          double* gt = trace->gates.data() + (n * steps + t) * G;
          gt[j] = ig;
          gt[H + j] = fg;
          gt[2 * H + j] = gg;
          gt[3 * H + j] = og;
        }
      }
      if (trace) {
        std::copy(c.begin(), c.end(), trace->cells.begin() + (n * steps + t) * H);
        std::copy(h.begin(), h.end(), trace->hidden.begin() + (n * steps + t) * H);
      }
      if (return_sequences_) std::copy(h.begin(), h.end(), y.data() + (n * steps + t) * H);
    }
    if (!return_sequences_) std::copy(h.begin(), h.end(), y.data() + n * H);
  }
  return y;
}

Tensor Lstm::infer(const Tensor& x) const { return run(x, nullptr); }

Tensor Lstm::train_forward(const Tensor& x, Rng&) {
  input_ = x;
  return run(x, &trace_);
}

Tensor Lstm::backward(const Tensor& dy) {
  const std::size_t batch = input_.batch(), steps = input_.dim(1), H = units_, G = 4 * units_;
  const auto& W = params_[0].value;
  const auto& U = params_[1].value;
  auto& dW = params_[0].grad;
  auto& dU = params_[1].grad;
  auto& db = params_[2].grad;
  const bool relu = activation_ == CellActivation::Relu;
  const auto act = [relu](double v) { return relu ? (v > 0.0 ? v : 0.0) : std::tanh(v); };
  // Derivative of act expressed through its input (cells) or its output (candidate gate).
  const auto act_grad_from_input = [relu](double v) {
    if (relu) return v > 0.0 ? 1.0 : 0.0;
    const double t = std::tanh(v);
    return 1.0 - t * t;
  };
  const auto act_grad_from_output = [relu](double a) { return relu ? (a > 0.0 ? 1.0 : 0.0) : 1.0 - a * a; };

  Tensor dx(input_.shape());
  std::vector<double> dh_next(H), dc_next(H), dz(G);
  for (std::size_t n = 0; n < batch; ++n) {
    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    std::fill(dc_next.begin(), dc_next.end(), 0.0);
    for (std::size_t t = steps; t-- > 0;) {
      const std::size_t row = n * steps + t;
      const double* gt = trace_.gates.data() + row * G;
      const double* ct = trace_.cells.data() + row * H;
      const double* c_prev = t > 0 ? trace_.cells.data() + (row - 1) * H : nullptr;
      const double* h_prev = t > 0 ? trace_.hidden.data() + (row - 1) * H : nullptr;
      for (std::size_t j = 0; j < H; ++j) {
        double dh = dh_next[j];
        if (return_sequences_) {
          dh += dy[row * H + j];
        } else if (t + 1 == steps) {
          dh += dy[n * H + j];
        }
        const double ig = gt[j], fg = gt[H + j], gg = gt[2 * H + j], og = gt[3 * H + j];
        const double a = act(ct[j]);
        const double dout = dh * a;
        const double dc = dc_next[j] + dh * og * act_grad_from_input(ct[j]);
        const double cp = c_prev ? c_prev[j] : 0.0;
        dz[j] = dc * gg * ig * (1.0 - ig);
        dz[H + j] = dc * cp * fg * (1.0 - fg);
        dz[2 * H + j] = dc * ig * act_grad_from_output(gg);
        dz[3 * H + j] = dout * og * (1.0 - og);
        dc_next[j] = dc * fg;
      }
      for (std::size_t k = 0; k < G; ++k) db[k] += dz[k];
      const double* xt = input_.data() + row * inputs_;
      double* dxt = dx.data() + row * inputs_;
      for (std::size_t d = 0; d < inputs_; ++d) {
        const double xv = xt[d];
        const double* wr = W.data() + d * G;
        double* dwr = dW.data() + d * G;
        double acc = 0.0;
        for (std::size_t k = 0; k < G; ++k) {
          dwr[k] += xv * dz[k];
          acc += wr[k] * dz[k];
        }
        dxt[d] = acc;
      }
      for (std::size_t j = 0; j < H; ++j) {
        const double hv = h_prev ? h_prev[j] : 0.0;
        const double* ur = U.data() + j * G;
        double* dur = dU.data() + j * G;
        double acc = 0.0;
        for (std::size_t k = 0; k < G; ++k) {
          dur[k] += hv * dz[k];
          acc += ur[k] * dz[k];
        }
        dh_next[j] = acc;
      }
    }
  }
  return dx;
}

}  // namespace pmat::nn
