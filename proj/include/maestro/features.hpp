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

#include "maestro/circuit.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string_view>
#include <utility>

namespace maestro {

enum class GateClass : std::uint8_t {
    OneQubitClifford,
    OneQubitNonClifford,
    TwoQubit,
    Measure,
    Reset,
};

inline constexpr std::size_t kGateClassCount = 5;

std::string_view gate_class_name(GateClass cls) noexcept;

/// Feature class of an instruction; std::nullopt for barriers.
std::optional<GateClass> classify(const Instruction &inst) noexcept;

/// Structural summary consumed by the predictor and batch routing.
struct CircuitFeatures {
    std::size_t n_qubits = 0;
    std::size_t total_gates = 0;
    std::array<std::size_t, kGateClassCount> counts_by_class{};
    bool is_clifford = true;
    bool terminal_measurement_only = true;
    std::size_t depth = 0;
    /// Max over the n-1 linear cuts of the number of two-qubit gates crossing the cut.
    std::size_t entanglement_proxy = 0;
    /// Unordered qubit pair (lo, hi) -> number of two-qubit gates between them.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> interaction_graph;

    std::size_t count(GateClass cls) const { return counts_by_class[static_cast<std::size_t>(cls)]; }

    bool operator==(const CircuitFeatures &) const = default;
};

CircuitFeatures extract_features(const Circuit &circuit);

} // namespace maestro
