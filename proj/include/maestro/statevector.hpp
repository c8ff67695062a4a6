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
#include "maestro/gates.hpp"
#include "maestro/random.hpp"
#include "maestro/run_result.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace maestro {

/// Dense 2^n amplitude vector. Qubit 0 is the least significant index bit.
class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits);

    /// Takes ownership of amplitudes; size must be a power of two.
    static StateVector from_amplitudes(std::vector<complex_t> amplitudes);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::span<const complex_t> amplitudes() const noexcept { return amps_; }
    complex_t amplitude(std::uint64_t index) const { return amps_[index]; }

    double norm_squared() const noexcept;
    std::vector<double> probabilities() const;
    /// Probability that measuring `qubit` yields 1.
    double probability_one(std::size_t qubit) const;

    /// Applies a unitary instruction; barriers are no-ops.
    /// Throws BackendError for measure/reset.
    void apply(const Instruction &inst);
    void apply_1q(std::size_t qubit, const Mat2 &m);
    void apply_cx(std::size_t control, std::size_t target);
    void apply_cz(std::size_t a, std::size_t b);
    void apply_swap(std::size_t a, std::size_t b);

    /// Projective Z measurement with collapse. The branch is chosen with one
    /// uniform draw; the survivor is renormalized by 1/sqrt(p).
    int measure(std::size_t qubit, Rng &rng);
    /// Deterministic projection onto `outcome`; returns the branch probability.
    double project(std::size_t qubit, int outcome);
    /// Measure, then flip to |0> if the outcome was 1.
    void reset(std::size_t qubit, Rng &rng);

    /// Gates on states with at least this many qubits are applied with OpenMP.
    void set_parallel_threshold(std::size_t n) noexcept { parallel_threshold_ = n; }
    std::size_t parallel_threshold() const noexcept { return parallel_threshold_; }

  private:
    bool parallel() const noexcept { return n_qubits_ >= parallel_threshold_; }

    std::size_t n_qubits_;
    std::vector<complex_t> amps_;
    std::size_t parallel_threshold_ = 64;
};

/// Value-semantics form of StateVector::apply.
StateVector apply_gate(StateVector state, const Instruction &inst);

namespace sv {

struct Options {
    /// Hard cap on circuit width for the dense backend.
    std::size_t max_qubits = 26;
    /// Qubit count from which the prefix pass applies gates in parallel.
    std::size_t parallel_threshold = 64;
    RunOptions run;
};

/// Final state of the unitary part of c applied to |0...0>.
StateVector simulate(const Circuit &c, const Options &opt = {});

/// Runs the circuit once up to its first measure/reset. Terminal-measurement
/// circuits are then sampled from the cached state with an alias table; all
/// others clone the prefix state and replay the remainder once per shot.
/// Throws NoMeasurementsError if nothing is measured and BackendError when the
/// width exceeds opt.max_qubits.
RunResult run(const Circuit &c, std::size_t shots, std::uint64_t seed, const Options &opt = {});

/// <psi| Z^mask |psi> for the final state of the unitary part of c.
/// Bit q of z_mask selects Z on qubit q.
double expectation(const Circuit &c, std::uint64_t z_mask, const Options &opt = {});

/// Same, from an already computed state.
double expectation(const StateVector &state, std::uint64_t z_mask);

} // namespace sv

} // namespace maestro
