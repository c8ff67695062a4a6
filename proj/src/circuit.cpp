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

#include "maestro/circuit.hpp"

#include "maestro/errors.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace maestro {

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view name;
    std::size_t params;
    std::size_t arity;
};

constexpr std::array<GateInfo, 18> kGates{{
    {GateKind::H, "h", 0, 1},
    {GateKind::X, "x", 0, 1},
    {GateKind::Y, "y", 0, 1},
    {GateKind::Z, "z", 0, 1},
    {GateKind::S, "s", 0, 1},
    {GateKind::Sdg, "sdg", 0, 1},
    {GateKind::T, "t", 0, 1},
    {GateKind::Tdg, "tdg", 0, 1},
    {GateKind::Rx, "rx", 1, 1},
    {GateKind::Ry, "ry", 1, 1},
    {GateKind::Rz, "rz", 1, 1},
    {GateKind::U, "u", 3, 1},
    {GateKind::CX, "cx", 0, 2},
    {GateKind::CZ, "cz", 0, 2},
    {GateKind::Swap, "swap", 0, 2},
    {GateKind::Measure, "measure", 0, 1},
    {GateKind::Reset, "reset", 0, 1},
    {GateKind::Barrier, "barrier", 0, 0},
}};

const GateInfo &info(GateKind kind) noexcept { return kGates[static_cast<std::size_t>(kind)]; }

} // namespace

std::string_view gate_name(GateKind kind) noexcept { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) noexcept {
    for (const auto &g : kGates) {
        if (g.name == name) {
            return g.kind;
        }
    }
    // qelib1 aliases
    if (name == "u3" || name == "U") {
        return GateKind::U;
    }
    if (name == "CX") {
        return GateKind::CX;
    }
    return std::nullopt;
}

std::size_t param_count(GateKind kind) noexcept { return info(kind).params; }
std::size_t qubit_arity(GateKind kind) noexcept { return info(kind).arity; }

bool is_unitary(GateKind kind) noexcept {
    return kind != GateKind::Measure && kind != GateKind::Reset && kind != GateKind::Barrier;
}

bool is_two_qubit(GateKind kind) noexcept { return info(kind).arity == 2; }

bool is_clifford_kind(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::U:
        return false;
    default:
        return true;
    }
}

void validate_instruction(const Instruction &inst, std::size_t n_qubits, std::size_t n_clbits) {
    const auto name = std::string(gate_name(inst.kind));
    const std::size_t arity = qubit_arity(inst.kind);
    if (arity != 0 && inst.qubits.size() != arity) {
        throw ValidationError(name + " expects " + std::to_string(arity) + " qubit(s), got " +
                              std::to_string(inst.qubits.size()));
    }
    if (inst.qubits.empty()) {
        throw ValidationError(name + " has no qubit operands");
    }
    if (inst.params.size() != param_count(inst.kind)) {
        throw ValidationError(name + " expects " + std::to_string(param_count(inst.kind)) +
                              " parameter(s), got " + std::to_string(inst.params.size()));
    }
    for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
        if (inst.qubits[i] >= n_qubits) {
            throw ValidationError(name + ": qubit index " + std::to_string(inst.qubits[i]) +
                                  " out of bounds for " + std::to_string(n_qubits) + " qubit(s)");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (inst.qubits[i] == inst.qubits[j]) {
                throw ValidationError(name + ": duplicate qubit " + std::to_string(inst.qubits[i]));
            }
        }
    }
    if (inst.kind == GateKind::Measure) {
        if (!inst.clbit) {
            throw ValidationError("measure requires a classical target");
        }
        if (*inst.clbit >= n_clbits) {
            throw ValidationError("measure: clbit index " + std::to_string(*inst.clbit) +
                                  " out of bounds for " + std::to_string(n_clbits) + " clbit(s)");
        }
    } else if (inst.clbit) {
        throw ValidationError(name + " cannot carry a classical target");
    }
}

Circuit &Circuit::add(GateKind kind, std::vector<std::size_t> qubits, std::vector<double> params) {
    Instruction inst{kind, std::move(params), std::move(qubits), std::nullopt};
    validate_instruction(inst, n_qubits, n_clbits);
    ops.push_back(std::move(inst));
    return *this;
}

Circuit &Circuit::measure(std::size_t q, std::size_t c) {
    Instruction inst{GateKind::Measure, {}, {q}, c};
    validate_instruction(inst, n_qubits, n_clbits);
    ops.push_back(std::move(inst));
    return *this;
}

Circuit &Circuit::measure_all() {
    n_clbits = std::max(n_clbits, n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        measure(q, q);
    }
    return *this;
}

void Circuit::validate() const {
    for (const auto &inst : ops) {
        validate_instruction(inst, n_qubits, n_clbits);
    }
}

bool is_clifford(const Circuit &circuit) noexcept {
    return std::all_of(circuit.ops.begin(), circuit.ops.end(),
                       [](const Instruction &i) { return is_clifford_kind(i.kind); });
}

namespace {

Instruction inverse_of(const Instruction &inst) {
    Instruction inv = inst;
    switch (inst.kind) {
    case GateKind::S:
        inv.kind = GateKind::Sdg;
        break;
    case GateKind::Sdg:
        inv.kind = GateKind::S;
        break;
    case GateKind::T:
        inv.kind = GateKind::Tdg;
        break;
    case GateKind::Tdg:
        inv.kind = GateKind::T;
        break;
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
        inv.params[0] = -inst.params[0];
        break;
    case GateKind::U:
        // U(a, b, c)^-1 = U(-a, -c, -b)
        inv.params = {-inst.params[0], -inst.params[2], -inst.params[1]};
        break;
    case GateKind::Measure:
    case GateKind::Reset:
        throw ValidationError("cannot invert a circuit containing " + std::string(gate_name(inst.kind)));
    default:
        break;
    }
    return inv;
}

} // namespace

Circuit inverse_circuit(const Circuit &circuit) {
    Circuit out(circuit.n_qubits, circuit.n_clbits, circuit.name.empty() ? "" : circuit.name + "_inv");
    out.ops.reserve(circuit.ops.size());
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
        out.ops.push_back(inverse_of(*it));
    }
    return out;
}

Circuit unitary_part(const Circuit &circuit) {
    Circuit out(circuit.n_qubits, circuit.n_clbits, circuit.name);
    for (const auto &inst : circuit.ops) {
        if (is_unitary(inst.kind)) {
            out.ops.push_back(inst);
        }
    }
    return out;
}

std::size_t first_nonunitary_index(const Circuit &circuit) noexcept {
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const auto kind = circuit.ops[i].kind;
        if (kind == GateKind::Measure || kind == GateKind::Reset) {
            return i;
        }
    }
    return circuit.ops.size();
}

bool has_measurements(const Circuit &circuit) noexcept {
    return std::any_of(circuit.ops.begin(), circuit.ops.end(),
                       [](const Instruction &i) { return i.kind == GateKind::Measure; });
}

bool is_terminal_measurement_only(const Circuit &circuit) noexcept {
    std::vector<bool> measured(circuit.n_qubits, false);
    for (const auto &inst : circuit.ops) {
        if (inst.kind == GateKind::Reset) {
            return false;
        }
        if (inst.kind == GateKind::Measure) {
            measured[inst.qubits[0]] = true;
            continue;
        }
        if (!is_unitary(inst.kind)) {
            continue;
        }
        for (auto q : inst.qubits) {
            if (measured[q]) {
                return false;
            }
        }
    }
    return true;
}

} // namespace maestro
