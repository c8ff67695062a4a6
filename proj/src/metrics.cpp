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

#include "maestro/metrics.hpp"

#include "maestro/backend.hpp"
#include "maestro/errors.hpp"
#include "maestro/mps.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace maestro {

Distribution normalize(const Counts &counts) {
    std::size_t total = 0;
    for (const auto &[key, n] : counts) {
        total += n;
    }
    Distribution p;
    if (total == 0) {
        return p;
    }
    for (const auto &[key, n] : counts) {
        if (n > 0) {
            p[key] = static_cast<double>(n) / static_cast<double>(total);
        }
    }
    return p;
}

double hellinger_fidelity(const Distribution &p, const Distribution &q) {
    double overlap = 0.0;
    for (const auto &[key, pk] : p) {
        const auto it = q.find(key);
        if (it != q.end() && pk > 0.0 && it->second > 0.0) {
            overlap += std::sqrt(pk * it->second);
        }
    }
    return std::clamp(overlap * overlap, 0.0, 1.0);
}

double hellinger_fidelity(const Counts &p, const Counts &q) { return hellinger_fidelity(normalize(p), normalize(q)); }

double mirror_fidelity(const Circuit &c, BackendKind backend, std::optional<std::size_t> chi, std::size_t shots,
                       std::uint64_t seed, const RunOptions &opt) {
    Circuit mirror = unitary_part(c);
    const Circuit inverse = inverse_circuit(mirror);
    mirror.ops.insert(mirror.ops.end(), inverse.ops.begin(), inverse.ops.end());
    mirror.n_clbits = 0;
    mirror.measure_all();
    const RunResult r = run_on(mirror, backend, shots, seed, chi, opt);
    const auto it = r.counts.find(std::string(mirror.n_clbits, '0'));
    return it == r.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
}

double expected_sampling_fidelity(std::size_t n_qubits, std::size_t shots) {
    if (shots == 0 || shots < 10 * n_qubits) {
        throw std::domain_error("sampling bound needs shots >> qubits (shots >= 10 n)");
    }
    return 1.0 - static_cast<double>(n_qubits) / (8.0 * static_cast<double>(shots));
}

namespace mps {

FidelityLoopResult run_with_fidelity_loop(const Circuit &c, std::size_t shots, std::uint64_t seed,
                                          const FidelityLoopOptions &opt) {
    if (!(opt.threshold > 0.0 && opt.threshold <= 1.0)) {
        throw ValidationError("fidelity threshold must lie in (0, 1]");
    }
    if (opt.chi_init == 0) {
        throw ValidationError("chi_init must be >= 1");
    }
    const auto start = std::chrono::steady_clock::now();
    FidelityLoopResult out;
    for (std::size_t chi = opt.chi_init; chi <= opt.chi_cap; chi *= 2) {
        ++out.iterations;
        const double fidelity = mirror_fidelity(c, BackendKind::Mps, chi, opt.mirror_shots, seed, opt.run);
        if (fidelity >= opt.threshold) {
            Options run_opt;
            run_opt.chi_max = chi;
            run_opt.run = opt.run;
            out.result = run(c, shots, seed, run_opt);
            out.result.chi = chi;
            out.result.fidelity = fidelity;
            out.chi = chi;
            out.fidelity = fidelity;
            out.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return out;
        }
    }
    throw InfeasibleAtCapError("mirror fidelity stayed below " + std::to_string(opt.threshold) +
                               " up to chi = " + std::to_string(opt.chi_cap));
}

} // namespace mps

} // namespace maestro
