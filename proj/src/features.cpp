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

#include "maestro/features.hpp"

#include <algorithm>

namespace maestro {

std::string_view gate_class_name(GateClass cls) noexcept {
    switch (cls) {
    case GateClass::OneQubitClifford:
        return "1q_clifford";
    case GateClass::OneQubitNonClifford:
        return "1q_nonclifford";
    case GateClass::TwoQubit:
        return "2q";
    case GateClass::Measure:
        return "measure";
    case GateClass::Reset:
        return "reset";
    }
    return "?";
}

std::optional<GateClass> classify(const Instruction &inst) noexcept {
    switch (inst.kind) {
    case GateKind::Barrier:
        return std::nullopt;
    case GateKind::Measure:
        return GateClass::Measure;
    case GateKind::Reset:
        return GateClass::Reset;
    default:
        break;
    }
    if (is_two_qubit(inst.kind)) {
        return GateClass::TwoQubit;
    }
    return is_clifford_kind(inst.kind) ? GateClass::OneQubitClifford : GateClass::OneQubitNonClifford;
}

CircuitFeatures extract_features(const Circuit &circuit) {
    CircuitFeatures f;
    f.n_qubits = circuit.n_qubits;
    f.is_clifford = is_clifford(circuit);
    f.terminal_measurement_only = is_terminal_measurement_only(circuit);

    std::vector<std::size_t> level(circuit.n_qubits, 0);
    // crossings[i] counts two-qubit gates spanning the cut between qubit i and i+1
    std::vector<std::size_t> crossings(circuit.n_qubits > 0 ? circuit.n_qubits - 1 : 0, 0);

    for (const auto &inst : circuit.ops) {
        const auto cls = classify(inst);
        if (!cls) {
            continue;
        }
        ++f.counts_by_class[static_cast<std::size_t>(*cls)];
        ++f.total_gates;

        std::size_t layer = 0;
        for (auto q : inst.qubits) {
            layer = std::max(layer, level[q]);
        }
        for (auto q : inst.qubits) {
            level[q] = layer + 1;
        }
        f.depth = std::max(f.depth, layer + 1);

        if (*cls == GateClass::TwoQubit) {
            const auto [lo, hi] = std::minmax(inst.qubits[0], inst.qubits[1]);
            ++f.interaction_graph[{lo, hi}];
            for (std::size_t cut = lo; cut < hi; ++cut) {
                ++crossings[cut];
            }
        }
    }
    if (!crossings.empty()) {
        f.entanglement_proxy = *std::max_element(crossings.begin(), crossings.end());
    }
    return f;
}

} // namespace maestro
