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
#include "maestro/run_result.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace maestro {

/// Runs c on one backend with a fixed configuration. `chi` applies to MPS only
/// (default 64); the p-block backend runs unpartitioned.
RunResult run_on(const Circuit &c, BackendKind backend, std::size_t shots, std::uint64_t seed,
                 std::optional<std::size_t> chi = std::nullopt, const RunOptions &opt = {});

} // namespace maestro
