// Copyright 2026 The Maestro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON helpers shared by the predictor and batch sources. Not part of the public API.

#include "maestro/features.hpp"

#include <json.hpp>

namespace maestro::detail {

inline nlohmann::json features_json(const CircuitFeatures &f) {
    nlohmann::json counts = nlohmann::json::object();
    for (std::size_t i = 0; i < kGateClassCount; ++i) {
        counts[std::string(gate_class_name(static_cast<GateClass>(i)))] = f.counts_by_class[i];
    }
    return {{"n_qubits", f.n_qubits},
            {"total_gates", f.total_gates},
            {"counts", counts},
            {"is_clifford", f.is_clifford},
            {"terminal_measurement_only", f.terminal_measurement_only},
            {"depth", f.depth},
            {"entanglement_proxy", f.entanglement_proxy}};
}

} // namespace maestro::detail
