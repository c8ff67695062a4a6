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

#include "maestro/gates.hpp"

#include "maestro/errors.hpp"

#include <cmath>
#include <numbers>

namespace maestro {

Mat2 gate_matrix_1q(const Instruction &inst) {
    using namespace std::complex_literals;
    constexpr double r = std::numbers::sqrt2 / 2.0;
    switch (inst.kind) {
    case GateKind::H:
        return {r, r, r, -r};
    case GateKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y:
        return {0.0, -1.0i, 1.0i, 0.0};
    case GateKind::Z:
        return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S:
        return {1.0, 0.0, 0.0, 1.0i};
    case GateKind::Sdg:
        return {1.0, 0.0, 0.0, -1.0i};
    case GateKind::T:
        return {1.0, 0.0, 0.0, complex_t(r, r)};
    case GateKind::Tdg:
        return {1.0, 0.0, 0.0, complex_t(r, -r)};
    case GateKind::Rx: {
        const double c = std::cos(inst.params[0] / 2), s = std::sin(inst.params[0] / 2);
        return {c, complex_t(0, -s), complex_t(0, -s), c};
    }
    case GateKind::Ry: {
        const double c = std::cos(inst.params[0] / 2), s = std::sin(inst.params[0] / 2);
        return {c, -s, s, c};
    }
    case GateKind::Rz: {
        const double h = inst.params[0] / 2;
        return {std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h)};
    }
    case GateKind::U: {
        const double theta = inst.params[0], phi = inst.params[1], lambda = inst.params[2];
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        return {c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
    }
    default:
        throw BackendError("'" + std::string(gate_name(inst.kind)) + "' is not a single-qubit unitary");
    }
}

Mat4 gate_matrix_2q(const Instruction &inst) {
    Mat4 m{};
    switch (inst.kind) {
    case GateKind::CX:
        // control = qubits[0] (bit 0), target = qubits[1] (bit 1)
        m[0 * 4 + 0] = 1.0;
        m[1 * 4 + 3] = 1.0;
        m[2 * 4 + 2] = 1.0;
        m[3 * 4 + 1] = 1.0;
        return m;
    case GateKind::CZ:
        m[0] = 1.0;
        m[5] = 1.0;
        m[10] = 1.0;
        m[15] = -1.0;
        return m;
    case GateKind::Swap:
        m[0 * 4 + 0] = 1.0;
        m[1 * 4 + 2] = 1.0;
        m[2 * 4 + 1] = 1.0;
        m[3 * 4 + 3] = 1.0;
        return m;
    default:
        throw BackendError("'" + std::string(gate_name(inst.kind)) + "' is not a two-qubit unitary");
    }
}

} // namespace maestro
