// SPDX-License-Identifier: Apache-2.0
#include "pmat/nn/serialize.hpp"

#include "pmat/binary_io.hpp"
#include "pmat/common.hpp"

namespace pmat::nn {

using nlohmann::json;

void save_trained_net(const TrainedNet& trained, CellActivation activation, const std::filesystem::path& path) {
  HeaderedBlob blob;
  json tensors = json::array();
  const Network& net = trained.net;
  for (std::size_t i = 0; i < net.layer_count(); ++i) {
    const Layer& l = net.layer(i);
    for (const auto& p : l.parameters()) {
      tensors.push_back({{"layer", i}, {"kind", to_string(l.kind())}, {"name", p.name}, {"size", p.value.size()}});
      blob.payload.insert(blob.payload.end(), p.value.begin(), p.value.end());
    }
    for (const auto& b : l.buffers()) {
      tensors.push_back({{"layer", i}, {"kind", to_string(l.kind())}, {"name", b.name}, {"size", b.value.size()}});
      blob.payload.insert(blob.payload.end(), b.value.begin(), b.value.end());
    }
  }
  json history = json::array();
  for (double v : trained.validation_history) history.push_back(json_number(v));
  blob.header = {{"format", "pmat-net"},
                 {"version", 1},
                 {"architecture", net.architecture()},
                 {"lstm_cell_activation", to_string(activation)},
                 {"seed", trained.seed},
                 {"config", to_json(trained.config)},
                 {"epochs_run", trained.epochs_run},
                 {"best_epoch", trained.best_epoch},
                 {"validation_loss", json_number(trained.validation_loss)},
                 {"validation_history", history},
                 {"diverged", trained.diverged},
                 {"tensors", tensors},
                 {"payload_values", blob.payload.size()}};
  write_headered_blob(path, blob);
}

TrainedNet load_trained_net(const std::filesystem::path& path, const ArchitectureFactory& factory) {
  const HeaderedBlob blob = read_headered_blob(path, "payload_values");
  const json& h = blob.header;
  if (h.value("format", "") != "pmat-net" || h.value("version", 0) != 1) {
    throw Error(path.string() + ": not a version-1 network file");
  }
  TrainedNet t;
  t.net = factory(h.at("architecture").get<std::string>(),
                  parse_cell_activation(h.at("lstm_cell_activation").get<std::string>()));
  t.seed = h.at("seed").get<std::uint64_t>();
  t.config = train_config_from_json(h.at("config"));
  t.epochs_run = h.at("epochs_run").get<std::size_t>();
  t.best_epoch = h.at("best_epoch").get<std::size_t>();
  t.validation_loss = number_from_json(h.at("validation_loss"));
  for (const auto& v : h.at("validation_history")) t.validation_history.push_back(number_from_json(v));
  t.diverged = h.value("diverged", false);

  std::size_t offset = 0;
  const auto& tensors = h.at("tensors");
  std::size_t index = 0;
  const auto take = [&](Parameter& p, std::size_t layer) {
    if (index >= tensors.size()) throw Error(path.string() + ": fewer tensors than the architecture needs");
    const auto& desc = tensors[index++];
    if (desc.at("layer").get<std::size_t>() != layer || desc.at("name").get<std::string>() != p.name ||
        desc.at("size").get<std::size_t>() != p.value.size()) {
      throw Error(path.string() + ": tensor layout does not match architecture");
    }
    if (offset + p.value.size() > blob.payload.size()) throw Error(path.string() + ": payload too short");
    std::copy_n(blob.payload.begin() + static_cast<std::ptrdiff_t>(offset), p.value.size(), p.value.begin());
    offset += p.value.size();
  };
  for (std::size_t i = 0; i < t.net.layer_count(); ++i) {
    for (auto& p : t.net.layer(i).parameters()) take(p, i);
    for (auto& b : t.net.layer(i).buffers()) take(b, i);
  }
  if (index != tensors.size() || offset != blob.payload.size()) {
    throw Error(path.string() + ": extra tensors in file");
  }
  return t;
}

}  // namespace pmat::nn
