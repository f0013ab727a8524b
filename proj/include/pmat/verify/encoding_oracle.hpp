// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pmat/encoding.hpp"

namespace pmat::verify {

/// Straight-line reference encoder in extended precision working on absolute
/// grid coordinates. Shares no code with the production pipeline.
MotionSignals brute_force_encode(const PressureSnippet& snippet);

}  // namespace pmat::verify
