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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maestro {

enum class GateKind : std::uint8_t {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    U,
    CX,
    CZ,
    Swap,
    Measure,
    Reset,
    Barrier,
};

/// QASM mnemonic for a gate kind ("h", "cx", "measure", ...).
std::string_view gate_name(GateKind kind) noexcept;

/// Inverse of gate_name for the built-in set; std::nullopt for unknown names.
std::optional<GateKind> gate_from_name(std::string_view name) noexcept;

/// Number of angle parameters a kind takes (0, 1 or 3).
std::size_t param_count(GateKind kind) noexcept;

/// Number of qubits a kind acts on; 0 means variadic (barrier).
std::size_t qubit_arity(GateKind kind) noexcept;

bool is_unitary(GateKind kind) noexcept;
bool is_two_qubit(GateKind kind) noexcept;
/// Member of the Clifford set used for routing. Rotations are never Clifford.
bool is_clifford_kind(GateKind kind) noexcept;

struct Instruction {
    GateKind kind = GateKind::Barrier;
    std::vector<double> params;
    std::vector<std::size_t> qubits;
    std::optional<std::size_t> clbit;

    bool operator==(const Instruction &) const = default;
};

/// Gate-level circuit with flat, zero-based qubit and clbit indices.
/// ops are in execution order. Equality ignores the name label.
struct Circuit {
    std::size_t n_qubits = 0;
    std::size_t n_clbits = 0;
    std::vector<Instruction> ops;
    std::string name;

    Circuit() = default;
    Circuit(std::size_t qubits, std::size_t clbits, std::string label = {})
        : n_qubits(qubits), n_clbits(clbits), name(std::move(label)) {}

    bool operator==(const Circuit &other) const {
        return n_qubits == other.n_qubits && n_clbits == other.n_clbits && ops == other.ops;
    }

    // Builders. Each call validates the new instruction against the registers.
    Circuit &add(GateKind kind, std::vector<std::size_t> qubits, std::vector<double> params = {});
    Circuit &h(std::size_t q) { return add(GateKind::H, {q}); }
    Circuit &x(std::size_t q) { return add(GateKind::X, {q}); }
    Circuit &y(std::size_t q) { return add(GateKind::Y, {q}); }
    Circuit &z(std::size_t q) { return add(GateKind::Z, {q}); }
    Circuit &s(std::size_t q) { return add(GateKind::S, {q}); }
    Circuit &sdg(std::size_t q) { return add(GateKind::Sdg, {q}); }
    Circuit &t(std::size_t q) { return add(GateKind::T, {q}); }
    Circuit &tdg(std::size_t q) { return add(GateKind::Tdg, {q}); }
    Circuit &rx(double theta, std::size_t q) { return add(GateKind::Rx, {q}, {theta}); }
    Circuit &ry(double theta, std::size_t q) { return add(GateKind::Ry, {q}, {theta}); }
    Circuit &rz(double theta, std::size_t q) { return add(GateKind::Rz, {q}, {theta}); }
    Circuit &u(double theta, double phi, double lambda, std::size_t q) {
        return add(GateKind::U, {q}, {theta, phi, lambda});
    }
    Circuit &cx(std::size_t c, std::size_t t) { return add(GateKind::CX, {c, t}); }
    Circuit &cz(std::size_t a, std::size_t b) { return add(GateKind::CZ, {a, b}); }
    Circuit &swap(std::size_t a, std::size_t b) { return add(GateKind::Swap, {a, b}); }
    Circuit &measure(std::size_t q, std::size_t c);
    Circuit &reset(std::size_t q) { return add(GateKind::Reset, {q}); }
    Circuit &barrier(std::vector<std::size_t> qubits) { return add(GateKind::Barrier, std::move(qubits)); }
    /// Grows the classical register if needed and measures qubit i into clbit i for every qubit.
    Circuit &measure_all();

    /// Throws ValidationError if any invariant is broken.
    void validate() const;
};

/// Validates one instruction against register sizes.
void validate_instruction(const Instruction &inst, std::size_t n_qubits, std::size_t n_clbits);

/// Parses an OPENQASM 2.0 program restricted to the built-in gate subset.
/// Registers are flattened to global indices in declaration order.
Circuit parse_qasm(std::string_view source);

/// Canonical QASM2 text: one `q` and one `c` register, one instruction per line,
/// angles printed with enough digits to round-trip exactly.
std::string to_qasm(const Circuit &circuit);

/// true iff every instruction is a Clifford kind.
bool is_clifford(const Circuit &circuit) noexcept;

/// Reversed circuit with each gate replaced by its inverse. Throws ValidationError on measure/reset.
Circuit inverse_circuit(const Circuit &circuit);

/// Copy of the circuit without measure, reset and barrier instructions.
Circuit unitary_part(const Circuit &circuit);

/// Index of the first measure or reset, or ops.size() when there is none.
std::size_t first_nonunitary_index(const Circuit &circuit) noexcept;

bool has_measurements(const Circuit &circuit) noexcept;

/// No reset anywhere, and no unitary touches a qubit after that qubit was measured.
bool is_terminal_measurement_only(const Circuit &circuit) noexcept;

} // namespace maestro
