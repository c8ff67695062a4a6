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
#include "maestro/features.hpp"
#include "maestro/predictor.hpp"
#include "maestro/run_result.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maestro {

enum class BatchPolicy : std::uint8_t { FixedSvThreshold, FixedMps, Auto, FixedStab };

/// "fixed-sv-threshold", "fixed-mps", "auto", "fixed-stab".
std::string_view policy_name(BatchPolicy policy) noexcept;
std::optional<BatchPolicy> policy_from_name(std::string_view name) noexcept;

/// 90 circuits, all measured at the end: 30 nearest-neighbour random Clifford
/// words (4-24 qubits), 30 low-entanglement circuits cycling GHZ, ring QAOA and
/// one-layer hardware-efficient ansatz (4-24 qubits), and 30 dense random
/// Clifford+T circuits (4-12 qubits). Names are unique and sort in suite order.
std::vector<Circuit> generate_torture_suite(std::uint64_t seed);

/// Writes one <name>.qasm per suite circuit into dir (created if needed).
/// Returns the written paths.
std::vector<std::string> write_torture_suite(const std::string &dir, std::uint64_t seed);

struct BatchOptions {
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    double fidelity_threshold = 0.95;
    std::size_t chi_init = 4;
    std::size_t chi_cap = 256;
    std::size_t mirror_shots = 1000;
    /// Circuits above this width go to mps under fixed-sv-threshold.
    std::size_t sv_threshold = 30;
    SelectOptions select;
    RunOptions run;
};

struct BatchRecord {
    std::string name;
    CircuitFeatures features;
    std::optional<BackendKind> backend;
    std::optional<std::size_t> chi;
    double wall_seconds = 0.0;
    std::optional<double> predicted_seconds;
    double prediction_seconds = 0.0;
    std::optional<double> fidelity;
    Counts counts;
    std::string error;
};

struct BatchReport {
    BatchPolicy policy = BatchPolicy::Auto;
    std::vector<BatchRecord> circuits;

    double wall_seconds() const;
    double prediction_seconds() const;
    /// wall_seconds() + prediction_seconds().
    double total_seconds() const;
    std::size_t failures() const;

    /// {version, policy, circuits: [...], totals: {...}}.
    std::string to_json() const;
};

/// Runs one circuit the way the batch does under `policy`. `model` is required for auto.
BatchRecord run_policy(const Circuit &c, BatchPolicy policy, const CalibrationModel *model,
                       const BatchOptions &opt);

/// Runs the circuits in order; failures are recorded per circuit and the batch continues.
BatchReport run_batch(const std::vector<Circuit> &circuits, BatchPolicy policy, const CalibrationModel *model,
                      const BatchOptions &opt);

/// Loads every *.qasm file in dir (sorted by file name) and runs them.
/// Files that fail to parse are recorded as failures.
BatchReport run_batch(const std::string &dir, BatchPolicy policy, const CalibrationModel *model,
                      const BatchOptions &opt);

} // namespace maestro
