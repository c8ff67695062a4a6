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

// Shot fan-out shared by the backends. Not part of the public API.

#include "maestro/alias.hpp"
#include "maestro/circuit.hpp"
#include "maestro/random.hpp"
#include "maestro/run_result.hpp"

#include <algorithm>
#include <exception>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace maestro::detail {

/// Number of OS threads to use for `streams` logical streams.
inline std::size_t thread_count(std::size_t streams, const RunOptions &opt) {
    std::size_t hw = opt.max_threads;
    if (hw == 0) {
        hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    return std::max<std::size_t>(1, std::min(streams, hw));
}

/// Splits `shots` over the logical streams of `opt` and runs
/// fn(stream_index, stream_shots, rng, counts) for each. Stream w owns Rng(seed + w).
/// Per-stream counts are merged in stream order.
template <class StreamFn>
Counts fan_out_shots(std::size_t shots, std::uint64_t seed, const RunOptions &opt, StreamFn &&fn) {
    const std::size_t streams = std::max<std::size_t>(1, std::min(opt.workers, shots));
    std::vector<Counts> partial(streams);
    std::vector<std::exception_ptr> errors(streams);

    auto work = [&](std::size_t w) {
        try {
            const std::size_t n = shots / streams + (w < shots % streams ? 1 : 0);
            Rng rng(seed + w);
            fn(w, n, rng, partial[w]);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    const std::size_t threads = thread_count(streams, opt);
    if (threads == 1) {
        for (std::size_t w = 0; w < streams; ++w) {
            work(w);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t w = t; w < streams; w += threads) {
                    work(w);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    Counts merged;
    for (const auto &p : partial) {
        for (const auto &[k, v] : p) {
            merged[k] += v;
        }
    }
    return merged;
}

/// Classical register of one shot, rendered with clbit 0 rightmost.
class ClassicalBits {
  public:
    explicit ClassicalBits(std::size_t n) : bits_(n, '0') {}

    void set(std::size_t clbit, bool value) { bits_[bits_.size() - 1 - clbit] = value ? '1' : '0'; }
    void clear() { std::fill(bits_.begin(), bits_.end(), '0'); }
    const std::string &str() const { return bits_; }

  private:
    std::string bits_;
};

/// Samples the terminal measurements of c from the full register distribution
/// `probabilities` (qubit 0 least significant).
inline Counts sample_register(const Circuit &c, std::span<const double> probabilities, std::size_t shots,
                              std::uint64_t seed, const RunOptions &opt) {
    const AliasTable table(probabilities);
    std::vector<std::pair<std::size_t, std::size_t>> measured;
    for (const auto &inst : c.ops) {
        if (inst.kind == GateKind::Measure) {
            measured.emplace_back(inst.qubits[0], *inst.clbit);
        }
    }
    return fan_out_shots(shots, seed, opt, [&](std::size_t, std::size_t n, Rng &rng, Counts &out) {
        std::unordered_map<std::uint64_t, std::size_t> hits;
        for (std::size_t s = 0; s < n; ++s) {
            ++hits[table.sample(rng)];
        }
        ClassicalBits bits(c.n_clbits);
        for (const auto &[index, k] : hits) {
            bits.clear();
            for (const auto &[q, cl] : measured) {
                bits.set(cl, (index >> q) & 1U);
            }
            out[bits.str()] += k;
        }
    });
}

} // namespace maestro::detail
