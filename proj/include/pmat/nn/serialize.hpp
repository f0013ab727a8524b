// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "pmat/nn/trainer.hpp"

namespace pmat::nn {

/// Rebuilds an untrained layer stack from an architecture name.
using ArchitectureFactory = std::function<Network(const std::string& architecture, CellActivation activation)>;

/// Header: architecture, seed, config, epochs, validation loss, tensor layout.
/// Payload: every trainable tensor then every buffer, in layer order.
void save_trained_net(const TrainedNet& trained, CellActivation activation, const std::filesystem::path& path);
TrainedNet load_trained_net(const std::filesystem::path& path, const ArchitectureFactory& factory);

}  // namespace pmat::nn
