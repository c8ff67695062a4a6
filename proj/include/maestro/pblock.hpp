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
#include "maestro/statevector.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace maestro {

/// A group of qubits simulated together. Local qubit k of `state` is qubits[k].
struct Block {
    std::size_t id = 0;
    std::vector<std::size_t> qubits;
    StateVector state{0};

    std::size_t dimension() const noexcept { return std::size_t{1} << qubits.size(); }
};

/// Partitioned-block state: starts with one single-qubit block per qubit and
/// merges blocks only when a two-qubit gate spans them. A measured qubit is
/// split back out into its own block.
class PBlockState {
  public:
    explicit PBlockState(std::size_t n_qubits);

    std::size_t n_qubits() const noexcept { return qubit_to_block_.size(); }
    const std::map<std::size_t, Block> &blocks() const noexcept { return blocks_; }
    const Block &block_of(std::size_t qubit) const { return blocks_.at(qubit_to_block_.at(qubit)); }
    std::size_t max_block_dimension() const;
    std::size_t block_count() const noexcept { return blocks_.size(); }

    /// Applies a unitary instruction, merging the operand blocks first when needed.
    void apply(const Instruction &inst);

    /// Measures `qubit` inside its block, collapses, and moves the qubit into a
    /// new single-qubit block holding |outcome>. The former block shrinks by half.
    int measure_and_factor(std::size_t qubit, Rng &rng);
    /// measure_and_factor, then X on the singleton if the outcome was 1.
    void reset(std::size_t qubit, Rng &rng);

    /// Tensor product of all blocks in global qubit order (qubit 0 least significant).
    std::vector<complex_t> to_amplitudes() const;

    /// Block qubit sets partition {0..n-1} and agree with the qubit-to-block map.
    bool check_partition() const;

  private:
    std::size_t merge(std::size_t a, std::size_t b);
    std::size_t local_index(const Block &block, std::size_t qubit) const;

    std::map<std::size_t, Block> blocks_;
    std::vector<std::size_t> qubit_to_block_;
    std::size_t next_id_ = 0;
};

namespace pblock {

/// Prefix up to the first measure/reset runs once. Terminal-measurement circuits
/// are then sampled block by block (blocks are independent); otherwise every
/// shot replays the remainder on a clone.
RunResult run(const Circuit &c, std::size_t shots, std::uint64_t seed, const RunOptions &opt = {});

/// Network of virtual QPUs. Each link owns one pair of communication qubits.
struct VqpuLayout {
    std::size_t k = 1;
    std::size_t capacity = 0;
    /// Undirected links between vQPUs. Empty means fully connected.
    std::vector<std::pair<std::size_t, std::size_t>> links;

    /// Links as used: the explicit list, or every pair when none is given.
    std::vector<std::pair<std::size_t, std::size_t>> effective_links() const;
};

/// Parses {"k": .., "capacity": .., "links": [[i, j], ...]}; links optional.
VqpuLayout layout_from_json(const std::string &text);

struct Partition {
    /// qubit -> vQPU
    std::vector<std::size_t> assignment;
    /// old qubit index -> new index; vQPU j owns a contiguous index range.
    std::vector<std::size_t> permutation;
    /// Total interaction weight crossing vQPU boundaries.
    std::size_t cut = 0;
};

/// Total weight of interaction-graph edges whose endpoints lie on different vQPUs.
std::size_t cut_size(const Circuit &c, const std::vector<std::size_t> &assignment);

/// Balanced greedy growth seeded from the heaviest edges, then pairwise
/// Kernighan-Lin swaps until none lowers the cut. Ties are broken by a seeded
/// shuffle. Throws ValidationError when n_qubits > k * capacity.
Partition partition_circuit(const Circuit &c, const VqpuLayout &layout, std::uint64_t seed);

/// Relabels qubits by partition.permutation.
Circuit remap(const Circuit &c, const std::vector<std::size_t> &permutation);

/// One step of a distributed program: a gate, a real measurement/reset, a
/// measurement into a classical scratch slot, or a gate conditioned on a slot.
struct DistOp {
    enum class Type : std::uint8_t { Gate, Measure, Reset, MeasureSlot, Conditional };
    Type type = Type::Gate;
    Instruction inst;
    std::size_t slot = 0;
};

struct DistributedProgram {
    std::size_t n_qubits = 0;      ///< computational + communication qubits
    std::size_t n_computational = 0;
    std::size_t n_clbits = 0;
    std::size_t n_slots = 0;
    std::vector<DistOp> ops;
    /// Communication qubit pair (side of link.first, side of link.second) per link.
    std::vector<std::pair<std::size_t, std::size_t>> comm_qubits;
    std::size_t remote_gates = 0;
};

/// Rewrites a circuit (already remapped) so that every two-qubit gate between
/// vQPUs goes through a telegate gadget on the link's communication qubits.
/// cz and swap across vQPUs are first decomposed into cx.
DistributedProgram distribute(const Circuit &remapped, const std::vector<std::size_t> &assignment,
                              const VqpuLayout &layout);

struct DistributedResult {
    RunResult result;
    /// Largest block dimension after each program step of the first shot.
    std::vector<std::size_t> max_block_dim_trace;
    Partition partition;
    std::size_t remote_gates = 0;
};

/// Partitions, remaps, distributes and executes with one full replay per shot
/// after the measurement-free prefix. When no gate crosses a vQPU boundary and
/// all measurements are terminal, the plain p-block sampler runs instead; on a
/// single vQPU the contracted register is sampled like the state-vector backend.
DistributedResult run_distributed(const Circuit &c, const VqpuLayout &layout, std::size_t shots,
                                  std::uint64_t seed, const RunOptions &opt = {});

/// Executes a distributed program directly.
DistributedResult execute(const DistributedProgram &program, std::size_t shots, std::uint64_t seed,
                          const RunOptions &opt = {});

} // namespace pblock

} // namespace maestro
