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

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace maestro {

/// Open-boundary matrix product state with one site per qubit (site i = qubit i).
///
/// Each site holds two matrices A[s] of shape (chi_left, chi_right), one per
/// physical value s. The chain is kept in mixed canonical form around an
/// orthogonality center: sites left of it are left-orthonormal, sites right of
/// it right-orthonormal. Two-site updates move the center first, so the singular
/// values of the update are the true Schmidt coefficients of that cut.
class MpsState {
  public:
    using Matrix = Eigen::MatrixXcd;

    /// |0...0> with every bond dimension 1.
    MpsState(std::size_t n_qubits, std::size_t chi_max);

    std::size_t n_qubits() const noexcept { return sites_.size(); }
    std::size_t chi_max() const noexcept { return chi_max_; }
    std::size_t center() const noexcept { return center_; }
    double truncation_error() const noexcept { return truncation_error_; }

    /// Bond dimension between site i and i+1, for i < n-1.
    std::size_t bond_dimension(std::size_t i) const { return sites_[i][0].cols(); }
    std::vector<std::size_t> bond_dimensions() const;
    std::size_t max_bond_dimension() const;

    const Matrix &site(std::size_t i, int s) const { return sites_[i][static_cast<std::size_t>(s)]; }

    void apply(const Instruction &inst);
    void apply_1q(std::size_t qubit, const Mat2 &m);
    /// Two-qubit gate with matrix m in the basis bit(a) | bit(b) << 1. Non-adjacent
    /// pairs are brought together with a swap chain and swapped back afterwards.
    void apply_2q(std::size_t a, std::size_t b, const Mat4 &m);

    /// Moves the orthogonality center to `site` with QR sweeps.
    void move_center(std::size_t site);

    int measure(std::size_t qubit, Rng &rng);
    void reset(std::size_t qubit, Rng &rng);

    /// Draws one full computational-basis sample of sites [0, last] by sweeping
    /// left to right and sampling each site from its conditional marginal.
    /// Requires center() == 0; the state is not modified.
    std::uint64_t sample(Rng &rng, std::size_t last) const;

    double norm_squared() const;

    /// Full 2^n amplitude vector, qubit 0 least significant.
    std::vector<complex_t> to_amplitudes() const;

  private:
    // Gate m (basis s_i | s_{i+1} << 1) on adjacent sites i, i+1.
    void apply_adjacent(std::size_t i, const Mat4 &m);

    std::vector<std::array<Matrix, 2>> sites_;
    std::size_t chi_max_;
    std::size_t center_ = 0;
    double truncation_error_ = 0.0;
};

namespace mps {

struct Options {
    std::size_t chi_max = 64;
    RunOptions run;
};

/// Applies the unitary part of c to |0...0>.
MpsState simulate(const Circuit &c, std::size_t chi_max);

/// Terminal measurements are sampled sequentially from one shared state;
/// mid-circuit measurements clone the prefix state and replay per shot.
RunResult run(const Circuit &c, std::size_t shots, std::uint64_t seed, const Options &opt = {});

struct FidelityLoopOptions {
    double threshold = 0.95;
    std::size_t chi_init = 4;
    /// The loop gives up once chi would exceed this.
    std::size_t chi_cap = 1024;
    /// Shots used for each mirror-fidelity evaluation.
    std::size_t mirror_shots = 1000;
    RunOptions run;
};

struct FidelityLoopResult {
    RunResult result;
    std::size_t chi = 0;
    double fidelity = 0.0;
    std::size_t iterations = 0;
    /// Wall time of every iteration including mirror evaluations.
    double total_seconds = 0.0;
};

/// Tries chi = chi_init, 2*chi_init, ... and returns the first run whose mirror
/// fidelity reaches the threshold. Throws InfeasibleAtCapError past chi_cap.
FidelityLoopResult run_with_fidelity_loop(const Circuit &c, std::size_t shots, std::uint64_t seed,
                                          const FidelityLoopOptions &opt = {});

} // namespace mps

} // namespace maestro
