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
#include <complex>

namespace maestro {

using complex_t = std::complex<double>;

/// Row-major 2x2 unitary.
using Mat2 = std::array<complex_t, 4>;

/// Row-major 4x4 unitary. Basis index = bit(qubits[0]) | bit(qubits[1]) << 1.
using Mat4 = std::array<complex_t, 16>;

/// Matrix of a single-qubit unitary instruction. Throws BackendError otherwise.
Mat2 gate_matrix_1q(const Instruction &inst);

/// Matrix of a two-qubit unitary instruction (cx, cz, swap).
Mat4 gate_matrix_2q(const Instruction &inst);

} // namespace maestro
