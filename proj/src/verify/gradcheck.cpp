// SPDX-License-Identifier: Apache-2.0
#include "pmat/verify/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "pmat/models/catalog.hpp"

namespace pmat::verify {

namespace {

// Magnitudes in [0.2, 1] with random sign keep ReLU inputs off the kink.
nn::Tensor random_tensor(const std::vector<std::size_t>& shape, Rng& rng) {
  nn::Tensor t(shape);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double m = rng.uniform(0.2, 1.0);
    t[i] = rng.uniform() < 0.5 ? -m : m;
  }
  return t;
}

void compare(GradCheckResult& r, double analytic, double numeric, const GradCheckOptions& o) {
  const double err = std::fabs(analytic - numeric) / std::max({std::fabs(analytic), std::fabs(numeric), o.floor});
  r.max_error = std::max(r.max_error, err);
  ++r.checked;
  if (!(err < o.tolerance)) r.passed = false;
}

double projected(nn::Layer& layer, const nn::Tensor& x, const std::vector<double>& w, std::uint64_t seed) {
  Rng rng(seed);
  const auto y = layer.train_forward(x, rng);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * y[i];
  return s;
}

struct Family {
  std::string name;
  models::ArchSpec spec;
  models::BuildOptions build;
  std::vector<std::size_t> batch_shape;
};

std::vector<Family> families() {
  std::vector<Family> out;
  {
    models::ArchSpec s;
    s.name = "FFN";
    s.family = models::Family::Ffn;
    s.dense_units = {6, 5};
    models::BuildOptions b;
    b.input_shape = {12};
    out.push_back({"FFN", s, b, {3, 12}});
  }
  {
    models::ArchSpec s;
    s.name = "CNN";
    s.family = models::Family::Cnn;
    s.convs = {{3, 5}, {4, 3}};
    s.dense_units = {5};
    models::BuildOptions b;
    b.input_shape = {10, 6};
    out.push_back({"CNN", s, b, {3, 10, 6}});
  }
  for (auto act : {nn::CellActivation::Relu, nn::CellActivation::Tanh}) {
    models::ArchSpec s;
    s.name = std::string("LSTM-") + std::string(nn::to_string(act));
    s.family = models::Family::Lstm;
    s.lstm_steps = 4;
    s.lstm_units = {5, 3};
    s.dense_units = {4};
    models::BuildOptions b;
    b.lstm_activation = act;
    b.input_shape = {4, 9};
    out.push_back({s.name, s, b, {3, 4, 9}});
  }
  return out;
}

}  // namespace

GradCheckResult check_layer(nn::Layer& layer, const std::vector<std::size_t>& input_shape,
                            const GradCheckOptions& o) {
  GradCheckResult r;
  r.label = std::string(nn::to_string(layer.kind()));
  Rng rng(mix_seed(o.seed, 11));
  nn::Tensor x = random_tensor(input_shape, rng);
  std::vector<std::size_t> out_shape{input_shape[0]};
  {
    const std::vector<std::size_t> sample(input_shape.begin() + 1, input_shape.end());
    const auto s = layer.output_shape(sample);
    out_shape.insert(out_shape.end(), s.begin(), s.end());
  }
  nn::Tensor wt = random_tensor(out_shape, rng);
  const std::vector<double> w(wt.values().begin(), wt.values().end());
  const std::uint64_t forward_seed = mix_seed(o.seed, 12);

  layer.zero_gradients();
  {
    Rng fr(forward_seed);
    layer.train_forward(x, fr);
  }
  nn::Tensor dy(out_shape);
  std::copy(w.begin(), w.end(), dy.data());
  const nn::Tensor dx = layer.backward(dy);

  const double h = o.step;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = projected(layer, x, w, forward_seed);
    x[i] = keep - h;
    const double down = projected(layer, x, w, forward_seed);
    x[i] = keep;
    compare(r, o.analytic_scale * dx[i], (up - down) / (2.0 * h), o);
  }
  for (auto& p : layer.parameters()) {
    const std::vector<double> grad = p.grad;
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double keep = p.value[i];
      p.value[i] = keep + h;
      const double up = projected(layer, x, w, forward_seed);
      p.value[i] = keep - h;
      const double down = projected(layer, x, w, forward_seed);
      p.value[i] = keep;
      compare(r, o.analytic_scale * grad[i], (up - down) / (2.0 * h), o);
    }
  }
  return r;
}

GradCheckResult check_network(nn::Network& net, const nn::Tensor& batch, const std::vector<double>& labels,
                              const GradCheckOptions& o) {
  GradCheckResult r;
  r.label = net.architecture();
  const std::uint64_t forward_seed = mix_seed(o.seed, 21);
  const auto loss = [&] {
    Rng rng(forward_seed);
    return nn::bce_loss(net.forward(batch, nn::Mode::Train, &rng), labels);
  };
  {
    Rng rng(forward_seed);
    net.compute_gradients(batch, labels, rng);
  }
  std::vector<std::vector<double>> grads;
  for (auto* p : net.parameters()) grads.push_back(p->grad);

  const double h = o.step;
  auto params = net.parameters();
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto& value = params[k]->value;
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double keep = value[i];
      value[i] = keep + h;
      const double up = loss();
      value[i] = keep - h;
      const double down = loss();
      value[i] = keep;
      compare(r, o.analytic_scale * grads[k][i], (up - down) / (2.0 * h), o);
    }
  }
  return r;
}

std::vector<GradCheckResult> gradient_battery(const GradCheckOptions& o) {
  std::vector<GradCheckResult> results;
  for (const auto& fam : families()) {
    nn::Network net = models::build_architecture(fam.spec, fam.build);
    net.initialize(mix_seed(o.seed, 31));
    // Nonzero biases and batch-norm shifts so no parameter sits at a symmetric point.
    Rng jitter(mix_seed(o.seed, 32));
    for (auto* p : net.parameters()) {
      for (auto& v : p->value) v += jitter.uniform(-0.1, 0.1);
    }

    std::vector<std::size_t> shape = fam.batch_shape;
    for (std::size_t i = 0; i < net.layer_count(); ++i) {
      auto layer = net.layer(i).clone();
      auto r = check_layer(*layer, shape, o);
      r.label = fam.name + "/" + std::to_string(i) + ":" + r.label;
      results.push_back(r);
      const std::vector<std::size_t> sample(shape.begin() + 1, shape.end());
      const auto next = layer->output_shape(sample);
      shape.resize(1);
      shape.insert(shape.end(), next.begin(), next.end());
    }

    Rng data(mix_seed(o.seed, 33));
    const nn::Tensor batch = random_tensor(fam.batch_shape, data);
    std::vector<double> labels;
    for (std::size_t b = 0; b < fam.batch_shape[0]; ++b) labels.push_back(static_cast<double>(b % 2));
    auto r = check_network(net, batch, labels, o);
    r.label = fam.name + "/network";
    results.push_back(r);
  }
  return results;
}

}  // namespace pmat::verify
