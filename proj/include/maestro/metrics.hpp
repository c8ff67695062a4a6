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

#include "maestro/alias.hpp"
#include "maestro/circuit.hpp"
#include "maestro/run_result.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace maestro {

/// Divides every count by the total; zero counts are dropped.
Distribution normalize(const Counts &counts);

/// (sum_i sqrt(p_i q_i))^2, clamped to [0, 1].
double hellinger_fidelity(const Distribution &p, const Distribution &q);
double hellinger_fidelity(const Counts &p, const Counts &q);

/// Runs unitary_part(c) followed by its inverse, measures every qubit and
/// returns the observed frequency of the all-zeros outcome.
double mirror_fidelity(const Circuit &c, BackendKind backend, std::optional<std::size_t> chi, std::size_t shots,
                       std::uint64_t seed, const RunOptions &opt = {});

/// 1 - n/(8 S). The bound only holds for S >> n; throws std::domain_error when
/// shots < 10 * n_qubits or shots == 0.
double expected_sampling_fidelity(std::size_t n_qubits, std::size_t shots);

} // namespace maestro
