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

#include "maestro/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace maestro::gen {

namespace {

double angle(Rng &rng) { return (2.0 * rng.uniform() - 1.0) * std::numbers::pi; }

std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n, Rng &rng) {
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) {
        ++b;
    }
    return {a, b};
}

// Exact cp(theta); u(0, 0, l) is diag(1, e^{il}).
void controlled_phase(Circuit &c, double theta, std::size_t a, std::size_t b) {
    c.u(0, 0, theta / 2, a);
    c.cx(a, b);
    c.u(0, 0, -theta / 2, b);
    c.cx(a, b);
    c.u(0, 0, theta / 2, b);
}

} // namespace

Circuit ghz(std::size_t n) {
    Circuit c(n, 0, "ghz_" + std::to_string(n));
    c.h(0);
    for (std::size_t q = 0; q + 1 < n; ++q) {
        c.cx(q, q + 1);
    }
    return c;
}

Circuit domain_wall(std::size_t n) {
    Circuit c(n, 0, "domain_wall_" + std::to_string(n));
    for (std::size_t q = n / 2; q < n; ++q) {
        c.x(q);
    }
    return c;
}

Circuit w_state(std::size_t n) {
    Circuit c(n, 0, "w_" + std::to_string(n));
    c.x(0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // controlled-ry moving amplitude sqrt((n-k-1)/(n-k)) from q_k onto q_{k+1}
        const double theta = 2.0 * std::acos(std::sqrt(1.0 / static_cast<double>(n - k)));
        c.ry(theta / 2, k + 1);
        c.cx(k, k + 1);
        c.ry(-theta / 2, k + 1);
        c.cx(k, k + 1);
        c.cx(k + 1, k);
    }
    return c;
}

Circuit qft(std::size_t n) {
    Circuit c(n, 0, "qft_" + std::to_string(n));
    for (std::size_t i = n; i-- > 0;) {
        c.h(i);
        for (std::size_t j = i; j-- > 0;) {
            controlled_phase(c, std::numbers::pi / static_cast<double>(std::size_t{1} << (i - j)), j, i);
        }
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        c.swap(i, n - 1 - i);
    }
    return c;
}

Circuit random_clifford(std::size_t n, std::size_t gates, Rng &rng, bool nearest_neighbor) {
    static constexpr GateKind one[] = {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::X, GateKind::Y, GateKind::Z};
    static constexpr GateKind two[] = {GateKind::CX, GateKind::CZ, GateKind::Swap};
    Circuit c(n, 0, "clifford_" + std::to_string(n));
    for (std::size_t g = 0; g < gates; ++g) {
        if (n >= 2 && rng.below(3) == 0) {
            std::pair<std::size_t, std::size_t> qs;
            if (nearest_neighbor) {
                const std::size_t a = rng.below(n - 1);
                qs = rng.coin() ? std::make_pair(a, a + 1) : std::make_pair(a + 1, a);
            } else {
                qs = distinct_pair(n, rng);
            }
            c.add(two[rng.below(3)], {qs.first, qs.second});
        } else {
            c.add(one[rng.below(6)], {rng.below(n)});
        }
    }
    return c;
}

Circuit random_clifford_t(std::size_t n, std::size_t gates, Rng &rng) {
    static constexpr GateKind one[] = {GateKind::H, GateKind::S, GateKind::T, GateKind::Tdg, GateKind::H};
    Circuit c(n, 0, "clifford_t_" + std::to_string(n));
    for (std::size_t g = 0; g < gates; ++g) {
        if (n >= 2 && rng.coin()) {
            const auto [a, b] = distinct_pair(n, rng);
            c.cx(a, b);
        } else {
            c.add(one[rng.below(5)], {rng.below(n)});
        }
    }
    return c;
}

Circuit random_circuit(std::size_t n, std::size_t gates, Rng &rng) {
    Circuit c(n, 0, "random_" + std::to_string(n));
    for (std::size_t g = 0; g < gates; ++g) {
        const auto kind = static_cast<GateKind>(rng.below(static_cast<std::uint64_t>(GateKind::Swap) + 1));
        if (is_two_qubit(kind)) {
            if (n < 2) {
                continue;
            }
            const auto [a, b] = distinct_pair(n, rng);
            c.add(kind, {a, b});
            continue;
        }
        std::vector<double> params(param_count(kind));
        for (auto &p : params) {
            p = angle(rng);
        }
        c.add(kind, {rng.below(n)}, std::move(params));
    }
    return c;
}

Circuit qaoa_layer(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>> &edges, double gamma,
                   double beta) {
    Circuit c(n, 0, "qaoa_" + std::to_string(n));
    for (std::size_t q = 0; q < n; ++q) {
        c.h(q);
    }
    for (const auto &[a, b] : edges) {
        c.cx(a, b);
        c.rz(2 * gamma, b);
        c.cx(a, b);
    }
    for (std::size_t q = 0; q < n; ++q) {
        c.rx(2 * beta, q);
    }
    return c;
}

std::vector<std::pair<std::size_t, std::size_t>> ring_edges(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t q = 0; q + 1 < n; ++q) {
        edges.emplace_back(q, q + 1);
    }
    if (n > 2) {
        edges.emplace_back(n - 1, 0);
    }
    return edges;
}

Circuit hardware_efficient(std::size_t n, std::size_t layers, Rng &rng) {
    Circuit c(n, 0, "hea_" + std::to_string(n));
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            c.ry(angle(rng), q);
            c.rz(angle(rng), q);
        }
        for (std::size_t q = 0; q + 1 < n; ++q) {
            c.cx(q, q + 1);
        }
    }
    return c;
}

} // namespace maestro::gen
