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

#include "maestro/tableau.hpp"

#include "maestro/errors.hpp"
#include "shot_runner.hpp"

#include <bit>
#include <chrono>

namespace maestro {

std::string PauliString::str() const {
    std::string out(1, negative ? '-' : '+');
    for (std::size_t q = 0; q < x.size(); ++q) {
        out += x[q] ? (z[q] ? 'Y' : 'X') : (z[q] ? 'Z' : 'I');
    }
    return out;
}

Tableau::Tableau(std::size_t n_qubits)
    : n_(n_qubits), words_((n_qubits + 63) / 64), bits_((2 * n_qubits + 1) * 2 * words_, 0),
      phase_(2 * n_qubits + 1, 0) {
    for (std::size_t q = 0; q < n_; ++q) {
        xs(q)[q / 64] |= std::uint64_t{1} << (q % 64);
        zs(n_ + q)[q / 64] |= std::uint64_t{1} << (q % 64);
    }
}

void Tableau::h(std::size_t q) {
    const std::size_t w = q / 64;
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        std::uint64_t &xw = xs(r)[w];
        std::uint64_t &zw = zs(r)[w];
        const bool xb = xw & m, zb = zw & m;
        phase_[r] ^= static_cast<std::uint8_t>(xb && zb);
        if (xb != zb) {
            xw ^= m;
            zw ^= m;
        }
    }
}

void Tableau::s(std::size_t q) {
    const std::size_t w = q / 64;
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        const bool xb = xs(r)[w] & m, zb = zs(r)[w] & m;
        phase_[r] ^= static_cast<std::uint8_t>(xb && zb);
        if (xb) {
            zs(r)[w] ^= m;
        }
    }
}

void Tableau::sdg(std::size_t q) {
    const std::size_t w = q / 64;
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        const bool xb = xs(r)[w] & m, zb = zs(r)[w] & m;
        phase_[r] ^= static_cast<std::uint8_t>(xb && !zb);
        if (xb) {
            zs(r)[w] ^= m;
        }
    }
}

void Tableau::x(std::size_t q) {
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        phase_[r] ^= static_cast<std::uint8_t>(zbit(r, q));
    }
}

void Tableau::y(std::size_t q) {
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        phase_[r] ^= static_cast<std::uint8_t>(xbit(r, q) != zbit(r, q));
    }
}

void Tableau::z(std::size_t q) {
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        phase_[r] ^= static_cast<std::uint8_t>(xbit(r, q));
    }
}

void Tableau::cx(std::size_t a, std::size_t b) {
    const std::size_t wa = a / 64, wb = b / 64;
    const std::uint64_t ma = std::uint64_t{1} << (a % 64), mb = std::uint64_t{1} << (b % 64);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        const bool xa = xs(r)[wa] & ma, za = zs(r)[wa] & ma;
        const bool xb = xs(r)[wb] & mb, zb = zs(r)[wb] & mb;
        phase_[r] ^= static_cast<std::uint8_t>(xa && zb && (xb == za));
        if (xa) {
            xs(r)[wb] ^= mb;
        }
        if (zb) {
            zs(r)[wa] ^= ma;
        }
    }
}

void Tableau::cz(std::size_t a, std::size_t b) {
    h(b);
    cx(a, b);
    h(b);
}

void Tableau::swap(std::size_t a, std::size_t b) {
    cx(a, b);
    cx(b, a);
    cx(a, b);
}

void Tableau::apply(const Instruction &inst) {
    for (auto q : inst.qubits) {
        if (q >= n_) {
            throw ValidationError("qubit index " + std::to_string(q) + " out of range");
        }
    }
    const auto q0 = inst.qubits.empty() ? 0 : inst.qubits[0];
    switch (inst.kind) {
    case GateKind::H:
        return h(q0);
    case GateKind::X:
        return x(q0);
    case GateKind::Y:
        return y(q0);
    case GateKind::Z:
        return z(q0);
    case GateKind::S:
        return s(q0);
    case GateKind::Sdg:
        return sdg(q0);
    case GateKind::CX:
        return cx(q0, inst.qubits[1]);
    case GateKind::CZ:
        return cz(q0, inst.qubits[1]);
    case GateKind::Swap:
        return swap(q0, inst.qubits[1]);
    case GateKind::Barrier:
        return;
    default:
        throw BackendError("stabilizer backend cannot apply '" + std::string(gate_name(inst.kind)) + "'");
    }
}

void Tableau::rowsum(std::size_t h, std::size_t i) {
    // Exponent of i accumulated by the product, tracked mod 4.
    int sum = 2 * phase_[h] + 2 * phase_[i];
    std::uint64_t *hx = xs(h), *hz = zs(h);
    const std::uint64_t *ix = xs(i), *iz = zs(i);
    for (std::size_t w = 0; w < words_; ++w) {
        const std::uint64_t x1 = ix[w], z1 = iz[w], x2 = hx[w], z2 = hz[w];
        const std::uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & z2 & x2) | (~x1 & z1 & x2 & ~z2);
        const std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & z2 & ~x2) | (~x1 & z1 & x2 & z2);
        sum += std::popcount(plus) - std::popcount(minus);
        hx[w] ^= x1;
        hz[w] ^= z1;
    }
    sum = ((sum % 4) + 4) % 4;
    phase_[h] = static_cast<std::uint8_t>(sum == 2);
}

bool Tableau::is_deterministic(std::size_t q) const {
    for (std::size_t p = n_; p < 2 * n_; ++p) {
        if (xbit(p, q)) {
            return false;
        }
    }
    return true;
}

Tableau::Measurement Tableau::measure(std::size_t q, Rng &rng) {
    std::size_t p = 2 * n_;
    for (std::size_t r = n_; r < 2 * n_; ++r) {
        if (xbit(r, q)) {
            p = r;
            break;
        }
    }
    if (p < 2 * n_) {
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            if (r != p && xbit(r, q)) {
                rowsum(r, p);
            }
        }
        std::copy_n(xs(p), 2 * words_, xs(p - n_));
        phase_[p - n_] = phase_[p];
        std::fill_n(xs(p), 2 * words_, 0);
        zs(p)[q / 64] |= std::uint64_t{1} << (q % 64);
        const int bit = rng.coin() ? 1 : 0;
        phase_[p] = static_cast<std::uint8_t>(bit);
        return {bit, false};
    }
    const std::size_t scratch = 2 * n_;
    std::fill_n(xs(scratch), 2 * words_, 0);
    phase_[scratch] = 0;
    for (std::size_t r = 0; r < n_; ++r) {
        if (xbit(r, q)) {
            rowsum(scratch, r + n_);
        }
    }
    return {phase_[scratch], true};
}

void Tableau::reset(std::size_t q, Rng &rng) {
    if (measure(q, rng).bit == 1) {
        x(q);
    }
}

PauliString Tableau::row(std::size_t r) const {
    PauliString p;
    p.x.resize(n_);
    p.z.resize(n_);
    for (std::size_t q = 0; q < n_; ++q) {
        p.x[q] = xbit(r, q);
        p.z[q] = zbit(r, q);
    }
    p.negative = phase_[r] != 0;
    return p;
}

bool Tableau::check_invariants() const {
    auto anticommute = [&](std::size_t a, std::size_t b) {
        int parity = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            parity += std::popcount((xs(a)[w] & zs(b)[w]) ^ (zs(a)[w] & xs(b)[w]));
        }
        return (parity & 1) != 0;
    };
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (anticommute(n_ + i, n_ + j)) {
                return false;
            }
            if (anticommute(i, n_ + j) != (i == j)) {
                return false;
            }
        }
    }
    // Gaussian elimination over GF(2) on the 2n x 2n symplectic matrix.
    std::vector<std::vector<std::uint64_t>> m;
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        m.emplace_back(xs(r), xs(r) + 2 * words_);
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * words_ * 64 && rank < m.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < m.size() && !(m[pivot][w] & bit)) {
            ++pivot;
        }
        if (pivot == m.size()) {
            continue;
        }
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != rank && (m[r][w] & bit)) {
                for (std::size_t k = 0; k < m[r].size(); ++k) {
                    m[r][k] ^= m[rank][k];
                }
            }
        }
        ++rank;
    }
    return rank == 2 * n_;
}

namespace stab {

RunResult run(const Circuit &c, std::size_t shots, std::uint64_t seed, const RunOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    c.validate();
    if (shots == 0) {
        throw ValidationError("shots must be >= 1");
    }
    if (!is_clifford(c)) {
        throw BackendError("stabilizer backend requires a Clifford circuit");
    }
    if (!has_measurements(c)) {
        throw NoMeasurementsError();
    }
    RunResult result;
    result.backend = BackendKind::Stabilizer;
    result.shots = shots;
    result.seed = seed;

    const std::size_t split = first_nonunitary_index(c);
    Tableau prefix(c.n_qubits);
    for (std::size_t i = 0; i < split; ++i) {
        prefix.apply(c.ops[i]);
    }
    result.counts = detail::fan_out_shots(shots, seed, opt, [&](std::size_t, std::size_t n, Rng &rng,
                                                                Counts &out) {
        detail::ClassicalBits bits(c.n_clbits);
        Tableau state = prefix;
        for (std::size_t s = 0; s < n; ++s) {
            state = prefix;
            bits.clear();
            for (std::size_t i = split; i < c.ops.size(); ++i) {
                const auto &inst = c.ops[i];
                if (inst.kind == GateKind::Measure) {
                    bits.set(*inst.clbit, state.measure(inst.qubits[0], rng).bit == 1);
                } else if (inst.kind == GateKind::Reset) {
                    state.reset(inst.qubits[0], rng);
                } else {
                    state.apply(inst);
                }
            }
            ++out[bits.str()];
        }
    });
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace stab

} // namespace maestro
