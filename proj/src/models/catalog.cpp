// SPDX-License-Identifier: Apache-2.0
#include "pmat/models/catalog.hpp"

#include <memory>

#include "pmat/encoding.hpp"

namespace pmat::models {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Svm: return "SVM";
    case Family::Ffn: return "FFN";
    case Family::Cnn: return "CNN";
    case Family::Lstm: return "LSTM";
  }
  return "?";
}

std::vector<std::size_t> ArchSpec::input_shape() const {
  switch (family) {
    case Family::Svm:
    case Family::Ffn: return {feature_count(features)};
    case Family::Cnn: return {kSnippetFrames, kChannels};
    case Family::Lstm: return {lstm_steps, kSnippetFrames * kChannels / lstm_steps};
  }
  return {};
}

namespace {

ArchSpec svm(std::string name, FeatureVariant f, KernelKind k, int degree) {
  ArchSpec a;
  a.name = std::move(name);
  a.family = Family::Svm;
  a.features = f;
  a.kernel = k;
  a.degree = degree;
  return a;
}

ArchSpec ffn(std::string name, FeatureVariant f, std::vector<std::size_t> dense) {
  ArchSpec a;
  a.name = std::move(name);
  a.family = Family::Ffn;
  a.features = f;
  a.dense_units = std::move(dense);
  return a;
}

ArchSpec cnn(std::string name, std::vector<ConvSpec> convs, std::vector<std::size_t> dense) {
  ArchSpec a;
  a.name = std::move(name);
  a.family = Family::Cnn;
  a.convs = std::move(convs);
  a.dense_units = std::move(dense);
  return a;
}

ArchSpec lstm(std::string name, std::size_t steps, std::vector<std::size_t> units, std::vector<std::size_t> dense) {
  ArchSpec a;
  a.name = std::move(name);
  a.family = Family::Lstm;
  a.lstm_steps = steps;
  a.lstm_units = std::move(units);
  a.dense_units = std::move(dense);
  return a;
}

std::vector<ArchSpec> make_catalog() {
  using FV = FeatureVariant;
  using K = KernelKind;
  const ConvSpec c4{4, 7}, c16{16, 13}, c64{64, 21};
  return {
      svm("S1.RBF", FV::Base12, K::Rbf, 0),
      svm("S1.P1", FV::Base12, K::Polynomial, 1),
      svm("S1.P2", FV::Base12, K::Polynomial, 2),
      svm("S1.P3", FV::Base12, K::Polynomial, 3),
      svm("S2.RBF", FV::Full24, K::Rbf, 0),
      svm("S2.P1", FV::Full24, K::Polynomial, 1),
      svm("S2.P2", FV::Full24, K::Polynomial, 2),
      svm("S2.P3", FV::Full24, K::Polynomial, 3),
      ffn("F1.1", FV::Base12, {100}),
      ffn("F1.2", FV::Full24, {100}),
      ffn("F1.3", FV::Full24, {200}),
      ffn("F2", FV::Full24, {200, 100}),
      cnn("C1F1.1", {c4}, {100}),
      cnn("C1F1.2", {c16}, {100}),
      cnn("C1F1.3", {c64}, {100}),
      cnn("C1F1.4", {c64}, {200}),
      cnn("C1F2", {c64}, {200, 100}),
      cnn("C2F1", {c4, c16}, {100}),
      cnn("C3F1.1", {c4, c16, c64}, {100}),
      cnn("C3F1.2", {c4, c16, c64}, {200}),
      cnn("C3F2", {c4, c16, c64}, {200, 100}),
      lstm("L1F1.1", 25, {64}, {100}),
      lstm("L1F1.2", 50, {64}, {100}),
      lstm("L1F1.3", 100, {64}, {100}),
      lstm("L1F1.4", 50, {64}, {200}),
      lstm("L1F2", 50, {64}, {200, 100}),
      lstm("L2F2.1", 50, {64, 32}, {200, 100}),
      lstm("L2F2.2", 50, {128, 64}, {200, 100}),
  };
}

}  // namespace

const std::vector<ArchSpec>& catalog() {
  static const std::vector<ArchSpec> table = make_catalog();
  return table;
}

std::size_t arch_index(std::string_view name) {
  const auto& table = catalog();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].name == name) return i;
  }
  throw Error("unknown architecture '" + std::string(name) + "'");
}

const ArchSpec& find_arch(std::string_view name) { return catalog()[arch_index(name)]; }

nn::Network build_architecture(const ArchSpec& spec, const BuildOptions& options) {
  if (!spec.is_network()) throw Error(spec.name + " is an SVM, not a network");
  nn::Network net(spec.name, options.input_shape.empty() ? spec.input_shape() : options.input_shape);
  const auto width = [&net] { return net.output_shape().back(); };
  const auto regularize = [&](std::size_t channels) {
    net.add(std::make_unique<nn::BatchNorm>(channels));
    net.add(std::make_unique<nn::Dropout>(options.dropout_rate));
  };

  for (const auto& conv : spec.convs) {
    net.add(std::make_unique<nn::Conv1D>(width(), conv.filters, conv.kernel));
    net.add(std::make_unique<nn::Relu>());
    regularize(conv.filters);
  }
  if (!spec.convs.empty()) net.add(std::make_unique<nn::GlobalAvgPool>());

  for (std::size_t i = 0; i < spec.lstm_units.size(); ++i) {
    const bool sequences = i + 1 < spec.lstm_units.size();
    net.add(std::make_unique<nn::Lstm>(width(), spec.lstm_units[i], sequences, options.lstm_activation));
    net.add(std::make_unique<nn::Relu>());
    regularize(spec.lstm_units[i]);
  }

  for (const std::size_t units : spec.dense_units) {
    net.add(std::make_unique<nn::Dense>(width(), units));
    net.add(std::make_unique<nn::Relu>());
    regularize(units);
  }
  net.add(std::make_unique<nn::Dense>(width(), 1));
  net.add(std::make_unique<nn::Sigmoid>());
  return net;
}

nn::Network build_architecture(std::string_view name, const BuildOptions& options) {
  return build_architecture(find_arch(name), options);
}

}  // namespace pmat::models
