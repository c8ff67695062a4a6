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

#include "maestro/mps.hpp"

#include "maestro/errors.hpp"
#include "shot_runner.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

namespace maestro {

namespace {

using Matrix = MpsState::Matrix;

constexpr double kRelativeCutoff = 1e-14;

// Reorders a two-qubit matrix from basis bit(a)|bit(b)<<1 to bit(b)|bit(a)<<1.
Mat4 exchange_operands(const Mat4 &m) {
    auto flip = [](std::size_t i) { return ((i & 1U) << 1) | (i >> 1); };
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[flip(r) * 4 + flip(c)] = m[r * 4 + c];
        }
    }
    return out;
}

struct Svd {
    Eigen::VectorXd sigma;
    Eigen::MatrixXcd u;
    Eigen::MatrixXcd v;
};

// BDCSVD in Eigen 3.4 occasionally returns a wrong factorization for blocks
// with many exact zeros (Clifford+T states hit this). Accept its result only
// when it reconstructs the input; otherwise redo the block with JacobiSVD.
Svd factorize(const Eigen::MatrixXcd &block) {
    constexpr auto kOptions = Eigen::ComputeThinU | Eigen::ComputeThinV;
    {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(block, kOptions);
        Svd out{svd.singularValues(), svd.matrixU(), svd.matrixV()};
        const double scale = std::max(block.norm(), 1e-300);
        const double residual =
            (block - out.u * out.sigma.cast<complex_t>().asDiagonal() * out.v.adjoint()).norm() / scale;
        const Eigen::Index k = out.sigma.size();
        const double drift =
            (out.u.adjoint() * out.u - Eigen::MatrixXcd::Identity(k, k)).norm() +
            (out.v.adjoint() * out.v - Eigen::MatrixXcd::Identity(k, k)).norm();
        if (out.sigma.allFinite() && residual < 1e-10 && drift < 1e-10) {
            return out;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block, kOptions);
    return Svd{svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

const Mat4 &swap_matrix() {
    static const Mat4 m = gate_matrix_2q(Instruction{GateKind::Swap, {}, {0, 1}, std::nullopt});
    return m;
}

} // namespace

MpsState::MpsState(std::size_t n_qubits, std::size_t chi_max) : sites_(n_qubits), chi_max_(chi_max) {
    if (chi_max == 0) {
        throw ValidationError("chi_max must be >= 1");
    }
    for (auto &site : sites_) {
        site[0] = Matrix::Ones(1, 1);
        site[1] = Matrix::Zero(1, 1);
    }
}

std::vector<std::size_t> MpsState::bond_dimensions() const {
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i + 1 < sites_.size(); ++i) {
        dims.push_back(bond_dimension(i));
    }
    return dims;
}

std::size_t MpsState::max_bond_dimension() const {
    std::size_t best = 1;
    for (std::size_t i = 0; i + 1 < sites_.size(); ++i) {
        best = std::max(best, bond_dimension(i));
    }
    return best;
}

void MpsState::apply_1q(std::size_t qubit, const Mat2 &m) {
    auto &site = sites_[qubit];
    Matrix a0 = m[0] * site[0] + m[1] * site[1];
    Matrix a1 = m[2] * site[0] + m[3] * site[1];
    site[0] = std::move(a0);
    site[1] = std::move(a1);
}

void MpsState::move_center(std::size_t target) {
    while (center_ < target) {
        auto &site = sites_[center_];
        const Eigen::Index l = site[0].rows(), r = site[0].cols();
        Matrix stacked(2 * l, r);
        stacked.topRows(l) = site[0];
        stacked.bottomRows(l) = site[1];
        Eigen::HouseholderQR<Matrix> qr(stacked);
        const Eigen::Index k = std::min(2 * l, r);
        const Matrix q = qr.householderQ() * Matrix::Identity(2 * l, k);
        const Matrix rmat = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        site[0] = q.topRows(l);
        site[1] = q.bottomRows(l);
        auto &next = sites_[center_ + 1];
        next[0] = rmat * next[0];
        next[1] = rmat * next[1];
        ++center_;
    }
    while (center_ > target) {
        auto &site = sites_[center_];
        const Eigen::Index l = site[0].rows(), r = site[0].cols();
        Matrix wide(l, 2 * r);
        wide.leftCols(r) = site[0];
        wide.rightCols(r) = site[1];
        // wide = L Q with orthonormal rows, from the QR of its adjoint.
        Eigen::HouseholderQR<Matrix> qr(wide.adjoint());
        const Eigen::Index k = std::min(l, 2 * r);
        const Matrix q = (qr.householderQ() * Matrix::Identity(2 * r, k)).adjoint();
        const Matrix lmat = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>().toDenseMatrix().adjoint();
        site[0] = q.leftCols(r);
        site[1] = q.rightCols(r);
        auto &prev = sites_[center_ - 1];
        prev[0] = prev[0] * lmat;
        prev[1] = prev[1] * lmat;
        --center_;
    }
}

void MpsState::apply_adjacent(std::size_t i, const Mat4 &m) {
    move_center(i);
    auto &left = sites_[i];
    auto &right = sites_[i + 1];
    const Eigen::Index l = left[0].rows(), r = right[0].cols();

    std::array<Matrix, 4> theta;
    for (std::size_t s1 = 0; s1 < 2; ++s1) {
        for (std::size_t s2 = 0; s2 < 2; ++s2) {
            theta[s1 | (s2 << 1)] = left[s1] * right[s2];
        }
    }
    // Rows (t1, left bond), columns (t2, right bond).
    Matrix block = Matrix::Zero(2 * l, 2 * r);
    for (std::size_t t = 0; t < 4; ++t) {
        Matrix acc = Matrix::Zero(l, r);
        for (std::size_t s = 0; s < 4; ++s) {
            const complex_t g = m[t * 4 + s];
            if (g != complex_t(0.0)) {
                acc += g * theta[s];
            }
        }
        block.block(static_cast<Eigen::Index>(t & 1U) * l, static_cast<Eigen::Index>(t >> 1) * r, l, r) = acc;
    }

    const Svd svd = factorize(block);
    const Eigen::VectorXd &sigma = svd.sigma;
    if (!sigma.allFinite()) {
        throw BackendError("SVD produced non-finite singular values");
    }
    const Eigen::Index full = sigma.size();
    const double largest = full > 0 ? sigma(0) : 0.0;
    if (!(largest > 0.0)) {
        throw BackendError("SVD of a vanishing two-site block");
    }
    Eigen::Index keep = 0;
    while (keep < full && keep < static_cast<Eigen::Index>(chi_max_) && sigma(keep) > kRelativeCutoff * largest) {
        ++keep;
    }
    double kept = 0.0, dropped = 0.0;
    for (Eigen::Index j = 0; j < full; ++j) {
        (j < keep ? kept : dropped) += sigma(j) * sigma(j);
    }
    // The center sits on this block, so sigma^2 sums to the state norm.
    truncation_error_ += dropped / (kept + dropped);

    const Eigen::VectorXd scaled = sigma.head(keep) / std::sqrt(kept);
    const Matrix u = svd.u.leftCols(keep);
    const Matrix sv = scaled.asDiagonal() * svd.v.leftCols(keep).adjoint();
    left[0] = u.topRows(l);
    left[1] = u.bottomRows(l);
    right[0] = sv.leftCols(r);
    right[1] = sv.rightCols(r);
    center_ = i + 1;
}

void MpsState::apply_2q(std::size_t a, std::size_t b, const Mat4 &m) {
    if (a == b || a >= sites_.size() || b >= sites_.size()) {
        throw ValidationError("invalid two-qubit operands");
    }
    const Mat4 ordered = a < b ? m : exchange_operands(m);
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    for (std::size_t p = hi - 1; p > lo; --p) {
        apply_adjacent(p, swap_matrix());
    }
    apply_adjacent(lo, ordered);
    for (std::size_t p = lo + 1; p < hi; ++p) {
        apply_adjacent(p, swap_matrix());
    }
}

void MpsState::apply(const Instruction &inst) {
    for (auto q : inst.qubits) {
        if (q >= sites_.size()) {
            throw ValidationError("qubit index " + std::to_string(q) + " out of range");
        }
    }
    if (inst.kind == GateKind::Barrier) {
        return;
    }
    if (!is_unitary(inst.kind)) {
        throw BackendError("apply() takes unitary instructions only; got " + std::string(gate_name(inst.kind)));
    }
    if (is_two_qubit(inst.kind)) {
        apply_2q(inst.qubits[0], inst.qubits[1], gate_matrix_2q(inst));
    } else {
        apply_1q(inst.qubits[0], gate_matrix_1q(inst));
    }
}

int MpsState::measure(std::size_t qubit, Rng &rng) {
    move_center(qubit);
    auto &site = sites_[qubit];
    const double p0 = site[0].squaredNorm(), p1 = site[1].squaredNorm();
    const int outcome = rng.uniform() * (p0 + p1) < p1 ? 1 : 0;
    const double p = outcome ? p1 : p0;
    const double scale = 1.0 / std::sqrt(p);
    site[static_cast<std::size_t>(outcome)] *= scale;
    site[static_cast<std::size_t>(1 - outcome)].setZero();
    return outcome;
}

void MpsState::reset(std::size_t qubit, Rng &rng) {
    if (measure(qubit, rng) == 1) {
        std::swap(sites_[qubit][0], sites_[qubit][1]);
    }
}

std::uint64_t MpsState::sample(Rng &rng, std::size_t last) const {
    std::uint64_t bits = 0;
    Eigen::RowVectorXcd env = Eigen::RowVectorXcd::Ones(1);
    for (std::size_t i = 0; i <= last && i < sites_.size(); ++i) {
        Eigen::RowVectorXcd v0 = env * sites_[i][0];
        Eigen::RowVectorXcd v1 = env * sites_[i][1];
        const double p0 = v0.squaredNorm(), p1 = v1.squaredNorm();
        if (rng.uniform() * (p0 + p1) < p1) {
            bits |= std::uint64_t{1} << i;
            env = v1 / std::sqrt(p1);
        } else {
            env = v0 / std::sqrt(p0);
        }
    }
    return bits;
}

double MpsState::norm_squared() const {
    Matrix env = Matrix::Ones(1, 1);
    for (const auto &site : sites_) {
        env = site[0].adjoint() * env * site[0] + site[1].adjoint() * env * site[1];
    }
    return env(0, 0).real();
}

std::vector<complex_t> MpsState::to_amplitudes() const {
    const std::size_t n = sites_.size();
    // rows[b] holds the row vector for the partial bitstring b over sites [0, i).
    std::vector<Eigen::RowVectorXcd> rows{Eigen::RowVectorXcd::Ones(1)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Eigen::RowVectorXcd> next(rows.size() * 2);
        for (std::size_t b = 0; b < rows.size(); ++b) {
            next[b] = rows[b] * sites_[i][0];
            next[b | (std::size_t{1} << i)] = rows[b] * sites_[i][1];
        }
        rows = std::move(next);
    }
    std::vector<complex_t> amps(rows.size());
    for (std::size_t b = 0; b < rows.size(); ++b) {
        amps[b] = rows[b](0);
    }
    return amps;
}

namespace mps {

MpsState simulate(const Circuit &c, std::size_t chi_max) {
    MpsState state(c.n_qubits, chi_max);
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
    if (!has_measurements(c)) {
        throw NoMeasurementsError();
    }

    RunResult result;
    result.backend = BackendKind::Mps;
    result.shots = shots;
    result.seed = seed;
    result.chi = opt.chi_max;

    if (is_terminal_measurement_only(c)) {
        MpsState state = simulate(c, opt.chi_max);
        state.move_center(0);
        std::vector<std::pair<std::size_t, std::size_t>> measured;
        std::size_t last = 0;
        for (const auto &inst : c.ops) {
            if (inst.kind == GateKind::Measure) {
                measured.emplace_back(inst.qubits[0], *inst.clbit);
                last = std::max(last, inst.qubits[0]);
            }
        }
        result.counts = detail::fan_out_shots(shots, seed, opt.run, [&](std::size_t, std::size_t n, Rng &rng,
                                                                        Counts &out) {
            std::unordered_map<std::uint64_t, std::size_t> hits;
            for (std::size_t s = 0; s < n; ++s) {
                ++hits[state.sample(rng, last)];
            }
            detail::ClassicalBits bits(c.n_clbits);
            for (const auto &[sample, k] : hits) {
                bits.clear();
                for (const auto &[q, cl] : measured) {
                    bits.set(cl, (sample >> q) & 1U);
                }
                out[bits.str()] += k;
            }
        });
    } else {
        const std::size_t split = first_nonunitary_index(c);
        MpsState prefix(c.n_qubits, opt.chi_max);
        for (std::size_t i = 0; i < split; ++i) {
            prefix.apply(c.ops[i]);
        }
        result.counts = detail::fan_out_shots(shots, seed, opt.run, [&](std::size_t, std::size_t n, Rng &rng,
                                                                        Counts &out) {
            detail::ClassicalBits bits(c.n_clbits);
            for (std::size_t s = 0; s < n; ++s) {
                MpsState state = prefix;
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

} // namespace mps

} // namespace maestro
