// SPDX-License-Identifier: Apache-2.0
#include "pmat/models/classifier.hpp"

#include "pmat/binary_io.hpp"
#include "pmat/nn/serialize.hpp"

namespace pmat::models {

Label class_from_probability(double p) { return p >= 0.5 ? Label::FmPlus : Label::FmMinus; }
Label class_from_decision(double d) { return d >= 0.0 ? Label::FmPlus : Label::FmMinus; }

std::vector<Prediction> predict(const SvmModel& m, std::span<const std::vector<double>> rows) {
  std::vector<Prediction> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const double d = m.decision(r);
    out.push_back({d, class_from_decision(d)});
  }
  return out;
}

std::vector<Prediction> predict(const nn::Network& net, const nn::Tensor& batch) {
  std::vector<Prediction> out;
  for (double p : net.predict(batch)) out.push_back({p, class_from_probability(p)});
  return out;
}

std::vector<Prediction> predict(const TrainedClassifier& c, std::span<const EncodedSnippet* const> snippets) {
  const ArchSpec& spec = c.spec();
  if (const auto* svm = std::get_if<SvmModel>(&c.model)) {
    std::vector<std::vector<double>> rows;
    rows.reserve(snippets.size());
    for (const auto* s : snippets) rows.push_back(model_features(*s, spec.features));
    return predict(*svm, rows);
  }
  const auto& trained = std::get<nn::TrainedNet>(c.model);
  std::vector<Prediction> out;
  out.reserve(snippets.size());
  constexpr std::size_t kChunk = 64;
  for (std::size_t first = 0; first < snippets.size(); first += kChunk) {
    const auto part = snippets.subspan(first, std::min(kChunk, snippets.size() - first));
    const auto p = predict(trained.net, network_inputs(spec, part));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

void save_classifier(const TrainedClassifier& c, const std::filesystem::path& path) {
  if (const auto* svm = std::get_if<SvmModel>(&c.model)) {
    save_svm(*svm, path, c.arch);
  } else {
    nn::save_trained_net(std::get<nn::TrainedNet>(c.model), c.lstm_activation, path);
  }
}

TrainedClassifier load_classifier(const std::filesystem::path& path) {
  const auto blob = read_headered_blob(path, "payload_values");
  const std::string format = blob.header.value("format", "");
  TrainedClassifier c;
  if (format == "pmat-svm") {
    c.model = load_svm(path);
    c.arch = blob.header.value("architecture", "");
    return c;
  }
  if (format != "pmat-net") throw Error(path.string() + " is not a model file");
  auto trained = nn::load_trained_net(path, [](const std::string& name, nn::CellActivation act) {
    BuildOptions options;
    options.lstm_activation = act;
    return build_architecture(name, options);
  });
  c.arch = trained.net.architecture();
  c.lstm_activation = nn::parse_cell_activation(blob.header.at("lstm_cell_activation").get<std::string>());
  c.model = std::move(trained);
  return c;
}

}  // namespace pmat::models
