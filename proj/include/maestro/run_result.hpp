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
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace maestro {

enum class BackendKind : std::uint8_t { StateVector, Mps, Stabilizer, PBlock };

/// Stable short names: "sv", "mps", "stab", "pblock".
std::string_view backend_name(BackendKind kind) noexcept;
std::optional<BackendKind> backend_from_name(std::string_view name) noexcept;

/// Bitstring (clbit 0 rightmost) -> number of shots.
using Counts = std::map<std::string, std::size_t>;

struct RunResult {
    Counts counts;
    std::size_t shots = 0;
    BackendKind backend = BackendKind::StateVector;
    std::uint64_t seed = 0;
    double wall_time = 0.0;
    std::optional<double> predicted_time;
    /// Bond dimension cap used (MPS runs only).
    std::optional<std::size_t> chi;
    /// Mirror fidelity of the accepted iteration (fidelity-loop runs only).
    std::optional<double> fidelity;
};

/// Shot-level parallelism. Shots are split over `workers` logical streams;
/// stream w draws from Rng(seed + w). Results depend only on `workers`, never on
/// how many threads execute the streams.
struct RunOptions {
    std::size_t workers = 8;
    /// Upper bound on OS threads; 0 = hardware concurrency.
    std::size_t max_threads = 0;
};

} // namespace maestro
