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

#include "maestro/predictor.hpp"

#include "json_util.hpp"
#include "maestro/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace maestro {

namespace {

struct Split {
    std::vector<const Instruction *> once;
    std::vector<const Instruction *> per_shot;
    std::size_t measures = 0;
};

// Which instructions run once and which run once per shot, following each
// backend's execution strategy.
Split split_ops(const Circuit &c, bool sample_terminal) {
    Split s;
    const bool terminal = sample_terminal && is_terminal_measurement_only(c);
    const std::size_t first = first_nonunitary_index(c);
    for (std::size_t i = 0; i < c.ops.size(); ++i) {
        const Instruction &inst = c.ops[i];
        if (inst.kind == GateKind::Barrier) {
            continue;
        }
        if (inst.kind == GateKind::Measure) {
            ++s.measures;
        }
        if (terminal) {
            if (is_unitary(inst.kind)) {
                s.once.push_back(&inst);
            }
        } else if (i < first) {
            s.once.push_back(&inst);
        } else {
            s.per_shot.push_back(&inst);
        }
    }
    return s;
}

std::size_t hardware_threads(std::size_t requested) {
    return requested ? requested : std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

double sv_estimate(const Circuit &c, const CalibrationModel &m, double shots, const EstimateOptions &opt) {
    const double n = static_cast<double>(c.n_qubits);
    const double dim = std::ldexp(1.0, static_cast<int>(c.n_qubits));
    auto cost = [&](const Instruction &inst) {
        if (!is_unitary(inst.kind)) {
            return m.sv_coefficient("measure", n) * dim;
        }
        return m.sv_coefficient(is_two_qubit(inst.kind) ? "2q" : "1q", n) * dim;
    };
    const Split s = split_ops(c, true);
    double total = 0.0;
    for (const auto *inst : s.once) {
        total += cost(*inst);
    }
    if (s.measures > 0) {
        total += m.sv_coefficient("sample", n) * dim;
    }
    double replay = 0.0;
    for (const auto *inst : s.per_shot) {
        replay += cost(*inst);
    }
    // Streams beyond the shot count sit idle, and no speedup exceeds the thread count.
    const std::size_t threads = std::max<std::size_t>(
        1, std::min({opt.workers, hardware_threads(opt.max_threads), static_cast<std::size_t>(shots)}));
    total += shots * replay / std::clamp(m.alpha_at(threads), 1.0, static_cast<double>(threads));
    return total + m.shot_fit(BackendKind::StateVector)(shots);
}

double mps_estimate(const Circuit &c, const CalibrationModel &m, double shots, std::size_t chi_in) {
    const double n = static_cast<double>(c.n_qubits);
    const double chi = static_cast<double>(chi_in);
    const double c1q = m.mps_coefficient("1q", n, chi) * chi * chi;
    const double c2q = m.mps_coefficient("2q", n, chi) * n * chi * chi * chi;
    const double cmeas = m.mps_coefficient("measure", n, chi) * n * chi * chi * chi;
    auto cost = [&](const Instruction &inst) {
        if (!is_unitary(inst.kind)) {
            return cmeas;
        }
        if (!is_two_qubit(inst.kind)) {
            return c1q;
        }
        // A gate at distance d runs 2d - 1 two-site updates through the swap chain.
        const std::size_t d = inst.qubits[0] > inst.qubits[1] ? inst.qubits[0] - inst.qubits[1]
                                                              : inst.qubits[1] - inst.qubits[0];
        return c2q * static_cast<double>(2 * d - 1);
    };
    const Split s = split_ops(c, true);
    double total = 0.0;
    for (const auto *inst : s.once) {
        total += cost(*inst);
    }
    double per_shot = 0.0;
    if (is_terminal_measurement_only(c)) {
        per_shot = static_cast<double>(s.measures) * cmeas;
    } else {
        for (const auto *inst : s.per_shot) {
            per_shot += cost(*inst);
        }
    }
    total += shots * per_shot;
    return total + m.shot_fit(BackendKind::Mps)(shots);
}

double stab_estimate(const Circuit &c, const CalibrationModel &m, double shots) {
    const double n = static_cast<double>(c.n_qubits);
    const double n2 = n * n;
    auto cost = [&](const Instruction &inst) {
        return m.stab_coefficient(is_unitary(inst.kind) ? "gate" : "measure", n) * n2;
    };
    const Split s = split_ops(c, false);
    double total = 0.0;
    for (const auto *inst : s.once) {
        total += cost(*inst);
    }
    double per_shot = 0.0;
    for (const auto *inst : s.per_shot) {
        per_shot += cost(*inst);
    }
    total += shots * per_shot;
    return total + m.shot_fit(BackendKind::Stabilizer)(shots);
}

} // namespace

std::size_t default_chi(const CircuitFeatures &features, const CalibrationModel &model) {
    const std::size_t exponent = std::min<std::size_t>(features.entanglement_proxy, features.n_qubits / 2);
    const double bound = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(exponent, 62)));
    return static_cast<std::size_t>(std::max(1.0, std::min(model.max_chi(), bound)));
}

double estimate(const Circuit &c, BackendKind backend, const CalibrationModel &model, std::size_t shots,
                std::optional<std::size_t> chi, const EstimateOptions &opt) {
    const double s = static_cast<double>(shots);
    switch (backend) {
    case BackendKind::StateVector:
        return sv_estimate(c, model, s, opt);
    case BackendKind::Mps:
        return mps_estimate(c, model, s, chi ? *chi : default_chi(extract_features(c), model));
    case BackendKind::Stabilizer:
        if (!is_clifford(c)) {
            throw BackendError("stabilizer backend cannot run a non-Clifford circuit");
        }
        return stab_estimate(c, model, s);
    case BackendKind::PBlock:
        break;
    }
    throw BackendError("no runtime model for backend " + std::string(backend_name(backend)));
}

PredictionReport select_backend(const Circuit &c, const CalibrationModel &model, std::size_t shots,
                                const SelectOptions &opt) {
    PredictionReport report;
    report.features = extract_features(c);
    report.chi = default_chi(report.features, model);
    if (report.features.is_clifford) {
        report.estimates[BackendKind::Stabilizer] = estimate(c, BackendKind::Stabilizer, model, shots);
    }
    if (c.n_qubits <= opt.mps_max_qubits) {
        report.estimates[BackendKind::Mps] = estimate(c, BackendKind::Mps, model, shots, report.chi);
    }
    if (c.n_qubits <= opt.sv_max_qubits) {
        report.estimates[BackendKind::StateVector] =
            estimate(c, BackendKind::StateVector, model, shots, std::nullopt, opt.estimate);
    }
    if (report.estimates.empty()) {
        throw BackendError("no backend can run a " + std::to_string(c.n_qubits) + "-qubit non-Clifford circuit");
    }
    bool found = false;
    double best = 0.0;
    for (const auto kind : {BackendKind::Stabilizer, BackendKind::Mps, BackendKind::StateVector}) {
        const auto it = report.estimates.find(kind);
        if (it != report.estimates.end() && (!found || it->second < best)) {
            found = true;
            best = it->second;
            report.chosen = kind;
        }
    }
    return report;
}

std::string PredictionReport::to_json() const {
    nlohmann::json est = nlohmann::json::object();
    for (const auto &[kind, seconds] : estimates) {
        est[std::string(backend_name(kind))] = seconds;
    }
    nlohmann::json j{{"estimates", est},
                     {"chosen", std::string(backend_name(chosen))},
                     {"chi", chi},
                     {"features", detail::features_json(features)}};
    return j.dump(2);
}

} // namespace maestro
