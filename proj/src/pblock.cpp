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

#include "maestro/pblock.hpp"

#include "maestro/alias.hpp"
#include "maestro/errors.hpp"
#include "maestro/features.hpp"
#include "shot_runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

namespace maestro {

namespace {

// Spreads the bits of `local` to the positions listed in `pos`.
std::vector<std::uint64_t> scatter_table(const std::vector<std::size_t> &pos) {
    std::vector<std::uint64_t> table(std::size_t{1} << pos.size(), 0);
    for (std::uint64_t i = 0; i < table.size(); ++i) {
        std::uint64_t out = 0;
        for (std::size_t k = 0; k < pos.size(); ++k) {
            out |= ((i >> k) & 1U) << pos[k];
        }
        table[i] = out;
    }
    return table;
}

std::uint64_t insert_bit(std::uint64_t i, std::size_t bit, int value) {
    const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | (static_cast<std::uint64_t>(value) << bit) | low;
}

Instruction make(GateKind kind, std::vector<std::size_t> qubits) {
    return Instruction{kind, {}, std::move(qubits), std::nullopt};
}

} // namespace

PBlockState::PBlockState(std::size_t n_qubits) : qubit_to_block_(n_qubits) {
    for (std::size_t q = 0; q < n_qubits; ++q) {
        blocks_.emplace(next_id_, Block{next_id_, {q}, StateVector(1)});
        qubit_to_block_[q] = next_id_++;
    }
}

std::size_t PBlockState::max_block_dimension() const {
    std::size_t best = 0;
    for (const auto &[id, b] : blocks_) {
        best = std::max(best, b.dimension());
    }
    return best;
}

std::size_t PBlockState::local_index(const Block &block, std::size_t qubit) const {
    const auto it = std::lower_bound(block.qubits.begin(), block.qubits.end(), qubit);
    return static_cast<std::size_t>(it - block.qubits.begin());
}

std::size_t PBlockState::merge(std::size_t a, std::size_t b) {
    Block &first = blocks_.at(a);
    Block &second = blocks_.at(b);
    std::vector<std::size_t> merged;
    std::merge(first.qubits.begin(), first.qubits.end(), second.qubits.begin(), second.qubits.end(),
               std::back_inserter(merged));
    auto positions = [&](const std::vector<std::size_t> &qs) {
        std::vector<std::size_t> pos;
        for (auto q : qs) {
            pos.push_back(static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), q) - merged.begin()));
        }
        return pos;
    };
    const auto spread_a = scatter_table(positions(first.qubits));
    const auto spread_b = scatter_table(positions(second.qubits));
    const auto amps_a = first.state.amplitudes();
    const auto amps_b = second.state.amplitudes();
    std::vector<complex_t> amps(std::size_t{1} << merged.size());
    for (std::size_t ia = 0; ia < amps_a.size(); ++ia) {
        for (std::size_t ib = 0; ib < amps_b.size(); ++ib) {
            amps[spread_a[ia] | spread_b[ib]] = amps_a[ia] * amps_b[ib];
        }
    }
    first.qubits = std::move(merged);
    first.state = StateVector::from_amplitudes(std::move(amps));
    for (auto q : first.qubits) {
        qubit_to_block_[q] = a;
    }
    blocks_.erase(b);
    return a;
}

void PBlockState::apply(const Instruction &inst) {
    for (auto q : inst.qubits) {
        if (q >= n_qubits()) {
            throw ValidationError("qubit index " + std::to_string(q) + " out of range");
        }
    }
    if (inst.kind == GateKind::Barrier) {
        return;
    }
    if (!is_unitary(inst.kind)) {
        throw BackendError("apply() takes unitary instructions only; got " + std::string(gate_name(inst.kind)));
    }
    std::size_t id = qubit_to_block_[inst.qubits[0]];
    if (inst.qubits.size() == 2 && qubit_to_block_[inst.qubits[1]] != id) {
        id = merge(id, qubit_to_block_[inst.qubits[1]]);
    }
    Block &block = blocks_.at(id);
    Instruction local = inst;
    for (auto &q : local.qubits) {
        q = local_index(block, q);
    }
    block.state.apply(local);
}

int PBlockState::measure_and_factor(std::size_t qubit, Rng &rng) {
    Block &block = blocks_.at(qubit_to_block_.at(qubit));
    const std::size_t pos = local_index(block, qubit);
    const int outcome = block.state.measure(pos, rng);
    if (block.qubits.size() == 1) {
        return outcome;
    }
    const auto amps = block.state.amplitudes();
    std::vector<complex_t> rest(amps.size() / 2);
    for (std::uint64_t j = 0; j < rest.size(); ++j) {
        rest[j] = amps[insert_bit(j, pos, outcome)];
    }
    block.qubits.erase(block.qubits.begin() + static_cast<std::ptrdiff_t>(pos));
    block.state = StateVector::from_amplitudes(std::move(rest));

    StateVector single(1);
    if (outcome == 1) {
        single.apply(make(GateKind::X, {0}));
    }
    blocks_.emplace(next_id_, Block{next_id_, {qubit}, std::move(single)});
    qubit_to_block_[qubit] = next_id_++;
    return outcome;
}

void PBlockState::reset(std::size_t qubit, Rng &rng) {
    if (measure_and_factor(qubit, rng) == 1) {
        blocks_.at(qubit_to_block_[qubit]).state.apply(make(GateKind::X, {0}));
    }
}

std::vector<complex_t> PBlockState::to_amplitudes() const {
    std::vector<complex_t> amps{1.0};
    std::vector<std::size_t> covered;
    for (const auto &[id, block] : blocks_) {
        std::vector<std::size_t> merged;
        std::merge(covered.begin(), covered.end(), block.qubits.begin(), block.qubits.end(),
                   std::back_inserter(merged));
        auto positions = [&](const std::vector<std::size_t> &qs) {
            std::vector<std::size_t> pos;
            for (auto q : qs) {
                pos.push_back(
                    static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), q) - merged.begin()));
            }
            return pos;
        };
        const auto spread_a = scatter_table(positions(covered));
        const auto spread_b = scatter_table(positions(block.qubits));
        const auto amps_b = block.state.amplitudes();
        std::vector<complex_t> next(std::size_t{1} << merged.size());
        for (std::size_t ia = 0; ia < amps.size(); ++ia) {
            for (std::size_t ib = 0; ib < amps_b.size(); ++ib) {
                next[spread_a[ia] | spread_b[ib]] = amps[ia] * amps_b[ib];
            }
        }
        amps = std::move(next);
        covered = std::move(merged);
    }
    return amps;
}

bool PBlockState::check_partition() const {
    std::vector<int> seen(n_qubits(), 0);
    for (const auto &[id, block] : blocks_) {
        if (block.id != id || block.qubits.empty() || !std::is_sorted(block.qubits.begin(), block.qubits.end())) {
            return false;
        }
        if (block.state.n_qubits() != block.qubits.size()) {
            return false;
        }
        for (auto q : block.qubits) {
            if (q >= seen.size() || seen[q]++ || qubit_to_block_[q] != id) {
                return false;
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; });
}

namespace pblock {

RunResult run(const Circuit &c, std::size_t shots, std::uint64_t seed, const RunOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    c.validate();
    if (shots == 0) {
        throw ValidationError("shots must be >= 1");
    }
    if (!has_measurements(c)) {
        throw NoMeasurementsError();
    }
    RunResult result;
    result.backend = BackendKind::PBlock;
    result.shots = shots;
    result.seed = seed;

    if (is_terminal_measurement_only(c)) {
        PBlockState state(c.n_qubits);
        std::vector<std::pair<std::size_t, std::size_t>> measured;
        for (const auto &inst : c.ops) {
            if (inst.kind == GateKind::Measure) {
                measured.emplace_back(inst.qubits[0], *inst.clbit);
            } else if (is_unitary(inst.kind)) {
                state.apply(inst);
            }
        }
        // Only blocks holding a measured qubit need sampling.
        struct Sampled {
            const Block *block;
            AliasTable table;
            std::vector<std::pair<std::size_t, std::size_t>> local_measures; // (local qubit, clbit)
        };
        std::vector<Sampled> sampled;
        for (const auto &[id, block] : state.blocks()) {
            std::vector<std::pair<std::size_t, std::size_t>> local;
            for (const auto &[q, cl] : measured) {
                const auto it = std::lower_bound(block.qubits.begin(), block.qubits.end(), q);
                if (it != block.qubits.end() && *it == q) {
                    local.emplace_back(static_cast<std::size_t>(it - block.qubits.begin()), cl);
                }
            }
            if (!local.empty()) {
                sampled.push_back(Sampled{&block, AliasTable(block.state.probabilities()), std::move(local)});
            }
        }
        result.counts = detail::fan_out_shots(shots, seed, opt, [&](std::size_t, std::size_t n, Rng &rng,
                                                                    Counts &out) {
            detail::ClassicalBits bits(c.n_clbits);
            for (std::size_t s = 0; s < n; ++s) {
                bits.clear();
                for (const auto &smp : sampled) {
                    const std::size_t index = smp.table.sample(rng);
                    for (const auto &[lq, cl] : smp.local_measures) {
                        bits.set(cl, (index >> lq) & 1U);
                    }
                }
                ++out[bits.str()];
            }
        });
    } else {
        DistributedProgram program;
        program.n_qubits = program.n_computational = c.n_qubits;
        program.n_clbits = c.n_clbits;
        for (const auto &inst : c.ops) {
            if (inst.kind == GateKind::Measure) {
                program.ops.push_back(DistOp{DistOp::Type::Measure, inst, 0});
            } else if (inst.kind == GateKind::Reset) {
                program.ops.push_back(DistOp{DistOp::Type::Reset, inst, 0});
            } else if (inst.kind != GateKind::Barrier) {
                program.ops.push_back(DistOp{DistOp::Type::Gate, inst, 0});
            }
        }
        result.counts = execute(program, shots, seed, opt).result.counts;
    }
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<std::pair<std::size_t, std::size_t>> VqpuLayout::effective_links() const {
    if (!links.empty()) {
        return links;
    }
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            all.emplace_back(i, j);
        }
    }
    return all;
}

VqpuLayout layout_from_json(const std::string &text) {
    VqpuLayout layout;
    try {
        const auto j = nlohmann::json::parse(text);
        layout.k = j.at("k").get<std::size_t>();
        layout.capacity = j.at("capacity").get<std::size_t>();
        if (j.contains("links")) {
            for (const auto &link : j.at("links")) {
                const auto a = link.at(0).get<std::size_t>(), b = link.at(1).get<std::size_t>();
                if (a >= layout.k || b >= layout.k || a == b) {
                    throw ValidationError("invalid link [" + std::to_string(a) + ", " + std::to_string(b) + "]");
                }
                layout.links.emplace_back(a, b);
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed layout JSON: ") + e.what());
    }
    if (layout.k == 0 || layout.capacity == 0) {
        throw ValidationError("layout needs k >= 1 and capacity >= 1");
    }
    return layout;
}

namespace {

using WeightMatrix = std::vector<std::vector<std::size_t>>;

WeightMatrix weight_matrix(const Circuit &c) {
    WeightMatrix w(c.n_qubits, std::vector<std::size_t>(c.n_qubits, 0));
    for (const auto &[edge, weight] : extract_features(c).interaction_graph) {
        w[edge.first][edge.second] += weight;
        w[edge.second][edge.first] += weight;
    }
    return w;
}

} // namespace

std::size_t cut_size(const Circuit &c, const std::vector<std::size_t> &assignment) {
    std::size_t cut = 0;
    for (const auto &[edge, weight] : extract_features(c).interaction_graph) {
        if (assignment.at(edge.first) != assignment.at(edge.second)) {
            cut += weight;
        }
    }
    return cut;
}

Partition partition_circuit(const Circuit &c, const VqpuLayout &layout, std::uint64_t seed) {
    const std::size_t n = c.n_qubits;
    const std::size_t k = layout.k;
    if (k == 0 || n > k * layout.capacity) {
        throw ValidationError(std::to_string(n) + " qubits do not fit on " + std::to_string(k) + " vQPU(s) of capacity " +
                              std::to_string(layout.capacity));
    }
    const WeightMatrix w = weight_matrix(c);

    // Seeded tie-break ranks.
    std::vector<std::size_t> rank(n);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(rank[i - 1], rank[rng.below(i)]);
    }

    constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> part(n, kUnassigned);
    auto free_degree = [&](std::size_t v) {
        std::size_t d = 0;
        for (std::size_t u = 0; u < n; ++u) {
            if (u != v && part[u] == kUnassigned) {
                d += w[v][u];
            }
        }
        return d;
    };

    std::size_t remaining = n;
    for (std::size_t j = 0; j < k && remaining > 0; ++j) {
        const std::size_t target = n / k + (j < n % k ? 1 : 0);
        std::size_t size = 0;
        auto take = [&](std::size_t v) {
            part[v] = j;
            ++size;
            --remaining;
        };
        // Seed with the heaviest free edge, preferring peripheral endpoints.
        if (target >= 2) {
            std::size_t best_u = kUnassigned, best_v = kUnassigned;
            std::tuple<std::size_t, std::size_t, std::size_t> best_key{};
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = u + 1; v < n; ++v) {
                    if (part[u] != kUnassigned || part[v] != kUnassigned || w[u][v] == 0) {
                        continue;
                    }
                    // larger is better: weight, then fewer outside ties, then rank
                    const auto key = std::make_tuple(w[u][v], ~(free_degree(u) + free_degree(v)),
                                                     ~std::min(rank[u], rank[v]));
                    if (best_u == kUnassigned || key > best_key) {
                        best_key = key;
                        best_u = u;
                        best_v = v;
                    }
                }
            }
            if (best_u != kUnassigned) {
                take(best_u);
                take(best_v);
            }
        }
        while (size < target && remaining > 0) {
            std::size_t best = kUnassigned;
            std::tuple<std::size_t, std::size_t, std::size_t> best_key{};
            for (std::size_t v = 0; v < n; ++v) {
                if (part[v] != kUnassigned) {
                    continue;
                }
                std::size_t attach = 0;
                for (std::size_t u = 0; u < n; ++u) {
                    if (part[u] == j) {
                        attach += w[v][u];
                    }
                }
                const auto key = std::make_tuple(attach, ~free_degree(v), ~rank[v]);
                if (best == kUnassigned || key > best_key) {
                    best_key = key;
                    best = v;
                }
            }
            take(best);
        }
    }

    // conn[v][p] = weight from v into part p
    std::vector<std::vector<std::size_t>> conn(n, std::vector<std::size_t>(k, 0));
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            if (u != v) {
                conn[v][part[u]] += w[v][u];
            }
        }
    }
    for (;;) {
        long long best_gain = 0;
        std::size_t bu = 0, bv = 0;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                const std::size_t a = part[u], b = part[v];
                if (a == b) {
                    continue;
                }
                const long long gain = static_cast<long long>(conn[u][b]) - static_cast<long long>(conn[u][a]) +
                                       static_cast<long long>(conn[v][a]) - static_cast<long long>(conn[v][b]) -
                                       2 * static_cast<long long>(w[u][v]);
                if (gain > best_gain) {
                    best_gain = gain;
                    bu = u;
                    bv = v;
                }
            }
        }
        if (best_gain <= 0) {
            break;
        }
        const std::size_t a = part[bu], b = part[bv];
        for (std::size_t x = 0; x < n; ++x) {
            if (x != bu) {
                conn[x][a] -= w[x][bu];
                conn[x][b] += w[x][bu];
            }
            if (x != bv) {
                conn[x][b] -= w[x][bv];
                conn[x][a] += w[x][bv];
            }
        }
        std::swap(part[bu], part[bv]);
    }

    Partition result;
    result.assignment = part;
    result.permutation.assign(n, 0);
    std::size_t next = 0;
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t q = 0; q < n; ++q) {
            if (part[q] == j) {
                result.permutation[q] = next++;
            }
        }
    }
    result.cut = cut_size(c, part);
    return result;
}

Circuit remap(const Circuit &c, const std::vector<std::size_t> &permutation) {
    Circuit out = c;
    for (auto &inst : out.ops) {
        for (auto &q : inst.qubits) {
            q = permutation.at(q);
        }
    }
    return out;
}

DistributedProgram distribute(const Circuit &remapped, const std::vector<std::size_t> &assignment,
                              const VqpuLayout &layout) {
    DistributedProgram prog;
    prog.n_computational = remapped.n_qubits;
    prog.n_clbits = remapped.n_clbits;
    const auto links = layout.effective_links();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> link_index;
    for (std::size_t l = 0; l < links.size(); ++l) {
        link_index[std::minmax(links[l].first, links[l].second)] = l;
        prog.comm_qubits.emplace_back(remapped.n_qubits + 2 * l, remapped.n_qubits + 2 * l + 1);
    }
    prog.n_qubits = remapped.n_qubits + 2 * links.size();

    auto gate = [&](GateKind kind, std::vector<std::size_t> qs) {
        prog.ops.push_back(DistOp{DistOp::Type::Gate, make(kind, std::move(qs)), 0});
    };
    auto telegate_cx = [&](std::size_t control, std::size_t target) {
        const std::size_t va = assignment.at(control), vb = assignment.at(target);
        const auto it = link_index.find(std::minmax(va, vb));
        if (it == link_index.end()) {
            throw BackendError("no link between vQPU " + std::to_string(va) + " and vQPU " + std::to_string(vb));
        }
        const auto &pair = prog.comm_qubits[it->second];
        const bool forward = links[it->second].first == va;
        const std::size_t ca = forward ? pair.first : pair.second;
        const std::size_t cb = forward ? pair.second : pair.first;
        const std::size_t m1 = prog.n_slots++, m2 = prog.n_slots++;
        // shared Bell pair
        gate(GateKind::H, {ca});
        gate(GateKind::CX, {ca, cb});
        // cat-entangle the control onto cb
        gate(GateKind::CX, {control, ca});
        prog.ops.push_back(DistOp{DistOp::Type::MeasureSlot, make(GateKind::Measure, {ca}), m1});
        prog.ops.push_back(DistOp{DistOp::Type::Conditional, make(GateKind::X, {cb}), m1});
        gate(GateKind::CX, {cb, target});
        // disentangle
        gate(GateKind::H, {cb});
        prog.ops.push_back(DistOp{DistOp::Type::MeasureSlot, make(GateKind::Measure, {cb}), m2});
        prog.ops.push_back(DistOp{DistOp::Type::Conditional, make(GateKind::Z, {control}), m2});
        prog.ops.push_back(DistOp{DistOp::Type::Reset, make(GateKind::Reset, {ca}), 0});
        prog.ops.push_back(DistOp{DistOp::Type::Reset, make(GateKind::Reset, {cb}), 0});
        ++prog.remote_gates;
    };

    for (const auto &inst : remapped.ops) {
        switch (inst.kind) {
        case GateKind::Barrier:
            continue;
        case GateKind::Measure:
            prog.ops.push_back(DistOp{DistOp::Type::Measure, inst, 0});
            continue;
        case GateKind::Reset:
            prog.ops.push_back(DistOp{DistOp::Type::Reset, inst, 0});
            continue;
        default:
            break;
        }
        if (!is_two_qubit(inst.kind) || assignment.at(inst.qubits[0]) == assignment.at(inst.qubits[1])) {
            prog.ops.push_back(DistOp{DistOp::Type::Gate, inst, 0});
            continue;
        }
        const std::size_t a = inst.qubits[0], b = inst.qubits[1];
        if (inst.kind == GateKind::CX) {
            telegate_cx(a, b);
        } else if (inst.kind == GateKind::CZ) {
            gate(GateKind::H, {b});
            telegate_cx(a, b);
            gate(GateKind::H, {b});
        } else {
            telegate_cx(a, b);
            telegate_cx(b, a);
            telegate_cx(a, b);
        }
    }
    return prog;
}

DistributedResult execute(const DistributedProgram &program, std::size_t shots, std::uint64_t seed,
                          const RunOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    if (shots == 0) {
        throw ValidationError("shots must be >= 1");
    }
    const bool measures = std::any_of(program.ops.begin(), program.ops.end(),
                                      [](const DistOp &op) { return op.type == DistOp::Type::Measure; });
    if (!measures) {
        throw NoMeasurementsError();
    }
    DistributedResult out;
    std::size_t split = 0;
    while (split < program.ops.size() && program.ops[split].type == DistOp::Type::Gate) {
        ++split;
    }
    PBlockState prefix(program.n_qubits);
    std::vector<std::size_t> trace;
    for (std::size_t i = 0; i < split; ++i) {
        prefix.apply(program.ops[i].inst);
        trace.push_back(prefix.max_block_dimension());
    }

    out.result.counts = detail::fan_out_shots(shots, seed, opt, [&](std::size_t w, std::size_t n, Rng &rng,
                                                                    Counts &counts) {
        detail::ClassicalBits bits(program.n_clbits);
        std::vector<std::uint8_t> slots(program.n_slots, 0);
        for (std::size_t s = 0; s < n; ++s) {
            const bool traced = w == 0 && s == 0;
            PBlockState state = prefix;
            bits.clear();
            for (std::size_t i = split; i < program.ops.size(); ++i) {
                const DistOp &op = program.ops[i];
                switch (op.type) {
                case DistOp::Type::Gate:
                    state.apply(op.inst);
                    break;
                case DistOp::Type::Measure:
                    bits.set(*op.inst.clbit, state.measure_and_factor(op.inst.qubits[0], rng) == 1);
                    break;
                case DistOp::Type::Reset:
                    state.reset(op.inst.qubits[0], rng);
                    break;
                case DistOp::Type::MeasureSlot:
                    slots[op.slot] = static_cast<std::uint8_t>(state.measure_and_factor(op.inst.qubits[0], rng));
                    break;
                case DistOp::Type::Conditional:
                    if (slots[op.slot]) {
                        state.apply(op.inst);
                    }
                    break;
                }
                if (traced) {
                    trace.push_back(state.max_block_dimension());
                }
            }
            ++counts[bits.str()];
        }
    });
    out.max_block_dim_trace = std::move(trace);
    out.remote_gates = program.remote_gates;
    out.result.backend = BackendKind::PBlock;
    out.result.shots = shots;
    out.result.seed = seed;
    out.result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

DistributedResult run_distributed(const Circuit &c, const VqpuLayout &layout, std::size_t shots,
                                  std::uint64_t seed, const RunOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    c.validate();
    Partition partition = partition_circuit(c, layout, seed);
    const Circuit remapped = remap(c, partition.permutation);
    std::vector<std::size_t> assignment(c.n_qubits);
    for (std::size_t q = 0; q < c.n_qubits; ++q) {
        assignment[partition.permutation[q]] = partition.assignment[q];
    }
    const DistributedProgram program = distribute(remapped, assignment, layout);
    DistributedResult out;
    if (layout.k == 1 && is_terminal_measurement_only(c)) {
        // A single vQPU is one monolithic register: contract the blocks and
        // sample the whole register exactly as the state-vector backend does.
        PBlockState state(c.n_qubits);
        for (const auto &inst : c.ops) {
            if (is_unitary(inst.kind)) {
                state.apply(inst);
                out.max_block_dim_trace.push_back(state.max_block_dimension());
            }
        }
        const StateVector full = StateVector::from_amplitudes(state.to_amplitudes());
        out.result.counts = detail::sample_register(c, full.probabilities(), shots, seed, opt);
        out.result.backend = BackendKind::PBlock;
        out.result.shots = shots;
        out.result.seed = seed;
    } else if (program.remote_gates == 0 && is_terminal_measurement_only(remapped)) {
        // Nothing crosses a vQPU boundary: the plain p-block sampler applies.
        PBlockState state(remapped.n_qubits);
        for (const auto &inst : remapped.ops) {
            if (is_unitary(inst.kind)) {
                state.apply(inst);
                out.max_block_dim_trace.push_back(state.max_block_dimension());
            }
        }
        out.result = run(remapped, shots, seed, opt);
    } else {
        out = execute(program, shots, seed, opt);
    }
    out.partition = std::move(partition);
    out.result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace pblock

} // namespace maestro
