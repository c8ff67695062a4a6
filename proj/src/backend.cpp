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

#include "maestro/backend.hpp"

#include "maestro/errors.hpp"
#include "maestro/mps.hpp"
#include "maestro/pblock.hpp"
#include "maestro/statevector.hpp"
#include "maestro/tableau.hpp"

namespace maestro {

std::string_view backend_name(BackendKind kind) noexcept {
    switch (kind) {
    case BackendKind::StateVector:
        return "sv";
    case BackendKind::Mps:
        return "mps";
    case BackendKind::Stabilizer:
        return "stab";
    case BackendKind::PBlock:
        return "pblock";
    }
    return "?";
}

std::optional<BackendKind> backend_from_name(std::string_view name) noexcept {
    for (auto kind : {BackendKind::StateVector, BackendKind::Mps, BackendKind::Stabilizer, BackendKind::PBlock}) {
        if (backend_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

RunResult run_on(const Circuit &c, BackendKind backend, std::size_t shots, std::uint64_t seed,
                 std::optional<std::size_t> chi, const RunOptions &opt) {
    switch (backend) {
    case BackendKind::StateVector: {
        sv::Options o;
        o.run = opt;
        return sv::run(c, shots, seed, o);
    }
    case BackendKind::Mps: {
        mps::Options o;
        o.run = opt;
        if (chi) {
            o.chi_max = *chi;
        }
        RunResult r = mps::run(c, shots, seed, o);
        r.chi = o.chi_max;
        return r;
    }
    case BackendKind::Stabilizer:
        return stab::run(c, shots, seed, opt);
    case BackendKind::PBlock:
        return pblock::run(c, shots, seed, opt);
    }
    throw BackendError("unknown backend");
}

} // namespace maestro
