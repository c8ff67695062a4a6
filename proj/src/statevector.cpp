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

#include "maestro/statevector.hpp"

#include "maestro/alias.hpp"
#include "maestro/errors.hpp"
#include "shot_runner.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

namespace maestro {

namespace {

inline std::uint64_t insert_zero_bit(std::uint64_t i, std::size_t bit) {
    const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

// Inserts zero bits at positions lo < hi.
inline std::uint64_t insert_two_zero_bits(std::uint64_t i, std::size_t lo, std::size_t hi) {
    return insert_zero_bit(insert_zero_bit(i, lo), hi);
}

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<complex_t> amplitudes) {
    const std::size_t size = amplitudes.size();
    if (size == 0 || !std::has_single_bit(size)) {
        throw std::invalid_argument("amplitude vector length must be a power of two");
    }
    StateVector s(0);
    s.n_qubits_ = static_cast<std::size_t>(std::countr_zero(size));
    s.amps_ = std::move(amplitudes);
    return s;
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

double StateVector::probability_one(std::size_t qubit) const {
    const std::uint64_t half = amps_.size() / 2;
    double p1 = 0.0;
    for (std::uint64_t i = 0; i < half; ++i) {
        p1 += std::norm(amps_[insert_zero_bit(i, qubit) | (std::uint64_t{1} << qubit)]);
    }
    return p1;
}

void StateVector::apply_1q(std::size_t qubit, const Mat2 &m) {
    const std::int64_t half = static_cast<std::int64_t>(amps_.size() / 2);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    complex_t *a = amps_.data();
#pragma omp parallel for if (parallel())
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), qubit);
        const std::uint64_t i1 = i0 | bit;
        const complex_t v0 = a[i0], v1 = a[i1];
        a[i0] = m[0] * v0 + m[1] * v1;
        a[i1] = m[2] * v0 + m[3] * v1;
    }
}

void StateVector::apply_cx(std::size_t control, std::size_t target) {
    const std::int64_t quarter = static_cast<std::int64_t>(amps_.size() / 4);
    const auto [lo, hi] = std::minmax(control, target);
    const std::uint64_t cbit = std::uint64_t{1} << control, tbit = std::uint64_t{1} << target;
    complex_t *a = amps_.data();
#pragma omp parallel for if (parallel())
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_two_zero_bits(static_cast<std::uint64_t>(k), lo, hi) | cbit;
        std::swap(a[base], a[base | tbit]);
    }
}

void StateVector::apply_cz(std::size_t qa, std::size_t qb) {
    const std::int64_t quarter = static_cast<std::int64_t>(amps_.size() / 4);
    const auto [lo, hi] = std::minmax(qa, qb);
    const std::uint64_t both = (std::uint64_t{1} << qa) | (std::uint64_t{1} << qb);
    complex_t *a = amps_.data();
#pragma omp parallel for if (parallel())
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::uint64_t i = insert_two_zero_bits(static_cast<std::uint64_t>(k), lo, hi) | both;
        a[i] = -a[i];
    }
}

void StateVector::apply_swap(std::size_t qa, std::size_t qb) {
    const std::int64_t quarter = static_cast<std::int64_t>(amps_.size() / 4);
    const auto [lo, hi] = std::minmax(qa, qb);
    const std::uint64_t abit = std::uint64_t{1} << qa, bbit = std::uint64_t{1} << qb;
    complex_t *a = amps_.data();
#pragma omp parallel for if (parallel())
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_two_zero_bits(static_cast<std::uint64_t>(k), lo, hi);
        std::swap(a[base | abit], a[base | bbit]);
    }
}

void StateVector::apply(const Instruction &inst) {
    for (auto q : inst.qubits) {
        if (q >= n_qubits_) {
            throw ValidationError("qubit index " + std::to_string(q) + " out of range");
        }
    }
    switch (inst.kind) {
    case GateKind::Barrier:
        return;
    case GateKind::CX:
        apply_cx(inst.qubits[0], inst.qubits[1]);
        return;
    case GateKind::CZ:
        apply_cz(inst.qubits[0], inst.qubits[1]);
        return;
    case GateKind::Swap:
        apply_swap(inst.qubits[0], inst.qubits[1]);
        return;
    case GateKind::Measure:
    case GateKind::Reset:
        throw BackendError("apply() takes unitary instructions only; got " + std::string(gate_name(inst.kind)));
    default:
        apply_1q(inst.qubits[0], gate_matrix_1q(inst));
    }
}

double StateVector::project(std::size_t qubit, int outcome) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t want = outcome ? bit : 0;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & bit) == want) {
            p += std::norm(amps_[i]);
        }
    }
    if (p <= 0.0) {
        throw BackendError("projection onto a zero-probability branch");
    }
    const double scale = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & bit) == want) {
            amps_[i] *= scale;
        } else {
            amps_[i] = 0.0;
        }
    }
    return p;
}

int StateVector::measure(std::size_t qubit, Rng &rng) {
    const double p1 = probability_one(qubit);
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    project(qubit, outcome);
    return outcome;
}

void StateVector::reset(std::size_t qubit, Rng &rng) {
    if (measure(qubit, rng) == 1) {
        apply_1q(qubit, gate_matrix_1q(Instruction{GateKind::X, {}, {qubit}, std::nullopt}));
    }
}

StateVector apply_gate(StateVector state, const Instruction &inst) {
    state.apply(inst);
    return state;
}

namespace sv {

namespace {

void check_width(const Circuit &c, const Options &opt) {
    if (c.n_qubits > opt.max_qubits) {
        throw BackendError("circuit has " + std::to_string(c.n_qubits) + " qubits; state-vector limit is " +
                           std::to_string(opt.max_qubits));
    }
}

} // namespace

StateVector simulate(const Circuit &c, const Options &opt) {
    check_width(c, opt);
    StateVector state(c.n_qubits);
    state.set_parallel_threshold(opt.parallel_threshold);
    for (const auto &inst : c.ops) {
        if (is_unitary(inst.kind)) {
            state.apply(inst);
        }
    }
    return state;
}

RunResult run(const Circuit &c, std::size_t shots, std::uint64_t seed, const Options &opt) {
    const auto start = std::chrono::steady_clock::now();
    c.validate();
    if (shots == 0) {
        throw ValidationError("shots must be >= 1");
    }
    check_width(c, opt);
    if (!has_measurements(c)) {
        throw NoMeasurementsError();
    }

    RunResult result;
    result.backend = BackendKind::StateVector;
    result.shots = shots;
    result.seed = seed;

    if (is_terminal_measurement_only(c)) {
        const StateVector state = simulate(c, opt);
        result.counts = detail::sample_register(c, state.probabilities(), shots, seed, opt.run);
    } else {
        const std::size_t split = first_nonunitary_index(c);
        StateVector prefix(c.n_qubits);
        prefix.set_parallel_threshold(opt.parallel_threshold);
        for (std::size_t i = 0; i < split; ++i) {
            prefix.apply(c.ops[i]);
        }
        result.counts = detail::fan_out_shots(shots, seed, opt.run, [&](std::size_t, std::size_t n, Rng &rng,
                                                                        Counts &out) {
            detail::ClassicalBits bits(c.n_clbits);
            StateVector state = prefix;
            for (std::size_t s = 0; s < n; ++s) {
                // Copy-assignment reuses the clone's buffer.
                state = prefix;
                state.set_parallel_threshold(64);
                bits.clear();
                for (std::size_t i = split; i < c.ops.size(); ++i) {
                    const auto &inst = c.ops[i];
                    if (inst.kind == GateKind::Measure) {
                        bits.set(*inst.clbit, state.measure(inst.qubits[0], rng) == 1);
                    } else if (inst.kind == GateKind::Reset) {
                        state.reset(inst.qubits[0], rng);
                    } else {
                        state.apply(inst);
                    }
                }
                ++out[bits.str()];
            }
        });
    }
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

double expectation(const StateVector &state, std::uint64_t z_mask) {
    if (state.n_qubits() < 64 && (z_mask >> state.n_qubits()) != 0) {
        throw ValidationError("observable mask references a qubit outside the register");
    }
    double value = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        value += (std::popcount(i & z_mask) & 1) ? -p : p;
    }
    return value;
}

double expectation(const Circuit &c, std::uint64_t z_mask, const Options &opt) {
    c.validate();
    if (!is_terminal_measurement_only(c)) {
        throw ValidationError("expectation requires a circuit that is unitary up to terminal measurements");
    }
    return expectation(simulate(c, opt), z_mask);
}

} // namespace sv

} // namespace maestro
