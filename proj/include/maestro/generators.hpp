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
#include "maestro/random.hpp"

#include <cstddef>
#include <utility>
#include <vector>

// Circuit families used by the batch suite, calibration and the tests.
// None of them add measurements; call measure_all() where needed.
namespace maestro::gen {

Circuit ghz(std::size_t n);

/// |1..10..0>: x on the upper half of the register, no entangling gates.
Circuit domain_wall(std::size_t n);

/// (|10..0> + |010..0> + ... + |0..01>)/sqrt(n).
Circuit w_state(std::size_t n);

/// QFT with controlled phases decomposed into cx and rz, followed by the bit-reversal swaps.
Circuit qft(std::size_t n);

/// Random words over {h, s, sdg, x, y, z, cx, cz, swap}. When `nearest_neighbor`
/// is set, two-qubit gates act on (i, i+1) only.
Circuit random_clifford(std::size_t n, std::size_t gates, Rng &rng, bool nearest_neighbor = false);

/// Random Clifford+T words on arbitrary qubit pairs; roughly half the gates are two-qubit.
Circuit random_clifford_t(std::size_t n, std::size_t gates, Rng &rng);

/// Random gates over the full instruction set, including rotations and U.
Circuit random_circuit(std::size_t n, std::size_t gates, Rng &rng);

/// One QAOA layer for MaxCut on `edges`: h on all, exp(-i gamma ZZ) per edge, rx(2 beta) on all.
Circuit qaoa_layer(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>> &edges, double gamma,
                   double beta);

/// Ring graph 0-1-...-(n-1)-0.
std::vector<std::pair<std::size_t, std::size_t>> ring_edges(std::size_t n);

/// `layers` rounds of random ry, rz on every qubit followed by a linear cx ladder.
Circuit hardware_efficient(std::size_t n, std::size_t layers, Rng &rng);

} // namespace maestro::gen
