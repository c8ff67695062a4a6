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
#include "maestro/run_result.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace maestro {

/// Pauli operator with a sign: (-1)^negative * prod_q X^x[q] Z^z[q], where x=z=1 denotes Y.
struct PauliString {
    std::vector<bool> x;
    std::vector<bool> z;
    bool negative = false;

    /// e.g. "+XZI" with qubit 0 leftmost.
    std::string str() const;
};

/// Aaronson-Gottesman stabilizer tableau: rows [0, n) are destabilizers,
/// rows [n, 2n) stabilizers, each a bit-packed X|Z pair plus a phase bit.
class Tableau {
  public:
    explicit Tableau(std::size_t n_qubits);

    std::size_t n_qubits() const noexcept { return n_; }

    /// Conjugates the tableau by a Clifford instruction; barriers are no-ops.
    /// Throws BackendError for anything outside the Clifford set.
    void apply(const Instruction &inst);
    void h(std::size_t q);
    void s(std::size_t q);
    void sdg(std::size_t q);
    void x(std::size_t q);
    void y(std::size_t q);
    void z(std::size_t q);
    void cx(std::size_t control, std::size_t target);
    void cz(std::size_t a, std::size_t b);
    void swap(std::size_t a, std::size_t b);

    struct Measurement {
        int bit;
        bool deterministic;
    };

    /// Z-basis measurement. Deterministic when Z_q is in the stabilizer group,
    /// otherwise a fair coin followed by the tableau update.
    Measurement measure(std::size_t q, Rng &rng);
    /// true iff measuring q now would give a fixed outcome.
    bool is_deterministic(std::size_t q) const;
    /// Measure, then X if the outcome was 1.
    void reset(std::size_t q, Rng &rng);

    PauliString stabilizer(std::size_t i) const { return row(n_ + i); }
    PauliString destabilizer(std::size_t i) const { return row(i); }

    /// Stabilizers pairwise commute, destabilizer i anticommutes exactly with
    /// stabilizer i, and the 2n rows are independent over GF(2).
    bool check_invariants() const;

  private:
    std::size_t words() const noexcept { return words_; }
    std::uint64_t *xs(std::size_t r) { return &bits_[r * 2 * words_]; }
    std::uint64_t *zs(std::size_t r) { return &bits_[r * 2 * words_ + words_]; }
    const std::uint64_t *xs(std::size_t r) const { return &bits_[r * 2 * words_]; }
    const std::uint64_t *zs(std::size_t r) const { return &bits_[r * 2 * words_ + words_]; }
    bool xbit(std::size_t r, std::size_t q) const { return (xs(r)[q / 64] >> (q % 64)) & 1U; }
    bool zbit(std::size_t r, std::size_t q) const { return (zs(r)[q / 64] >> (q % 64)) & 1U; }

    // row h <- row i * row h, with phase tracking
    void rowsum(std::size_t h, std::size_t i);
    PauliString row(std::size_t r) const;

    std::size_t n_;
    std::size_t words_;
    // 2n+1 rows (the last is scratch), each 2*words_ 64-bit words.
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint8_t> phase_;
};

namespace stab {

/// Clifford-only execution. Unitaries before the first measure/reset run once;
/// each shot replays the rest on a clone. Throws BackendError on non-Clifford input.
RunResult run(const Circuit &c, std::size_t shots, std::uint64_t seed, const RunOptions &opt = {});

} // namespace stab

} // namespace maestro
