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

#include "maestro/batch.hpp"

#include "json_util.hpp"
#include "maestro/errors.hpp"
#include "maestro/generators.hpp"
#include "maestro/mps.hpp"
#include "maestro/statevector.hpp"
#include "maestro/tableau.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace maestro {

namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string label(const char *family, std::size_t index, std::size_t n, const char *kind) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%02zu_n%02zu_%s", family, index, n, kind);
    return buf;
}

} // namespace

std::string_view policy_name(BatchPolicy policy) noexcept {
    switch (policy) {
    case BatchPolicy::FixedSvThreshold:
        return "fixed-sv-threshold";
    case BatchPolicy::FixedMps:
        return "fixed-mps";
    case BatchPolicy::Auto:
        return "auto";
    case BatchPolicy::FixedStab:
        return "fixed-stab";
    }
    return "?";
}

std::optional<BatchPolicy> policy_from_name(std::string_view name) noexcept {
    for (auto p : {BatchPolicy::FixedSvThreshold, BatchPolicy::FixedMps, BatchPolicy::Auto, BatchPolicy::FixedStab}) {
        if (policy_name(p) == name) {
            return p;
        }
    }
    return std::nullopt;
}

std::vector<Circuit> generate_torture_suite(std::uint64_t seed) {
    constexpr std::size_t kPerFamily = 30;
    Rng rng(seed);
    std::vector<Circuit> suite;
    for (std::size_t i = 0; i < kPerFamily; ++i) {
        const std::size_t n = 4 + (i * 20 + kPerFamily / 2) / (kPerFamily - 1);
        Circuit c = gen::random_clifford(std::min<std::size_t>(n, 24), 3 * n, rng, true);
        c.name = label("a_clifford", i, c.n_qubits, "word");
        suite.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < kPerFamily; ++i) {
        const std::size_t n = std::min<std::size_t>(24, 4 + (i * 20 + kPerFamily / 2) / (kPerFamily - 1));
        Circuit c;
        switch (i % 3) {
        case 0:
            c = gen::ghz(n);
            c.name = label("b_lowent", i, n, "ghz");
            break;
        case 1: {
            const double gamma = rng.uniform() * std::numbers::pi;
            const double beta = rng.uniform() * std::numbers::pi;
            c = gen::qaoa_layer(n, gen::ring_edges(n), gamma, beta);
            c.name = label("b_lowent", i, n, "qaoa");
            break;
        }
        default:
            c = gen::hardware_efficient(n, 1, rng);
            c.name = label("b_lowent", i, n, "hea");
            break;
        }
        suite.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < kPerFamily; ++i) {
        const std::size_t n = std::min<std::size_t>(12, 4 + (i * 8 + kPerFamily / 2) / (kPerFamily - 1));
        Circuit c = gen::random_clifford_t(n, 10 * n, rng);
        c.name = label("c_highent", i, n, "cliffordt");
        suite.push_back(std::move(c));
    }
    for (auto &c : suite) {
        c.measure_all();
    }
    return suite;
}

std::vector<std::string> write_torture_suite(const std::string &dir, std::uint64_t seed) {
    fs::create_directories(dir);
    std::vector<std::string> paths;
    for (const auto &c : generate_torture_suite(seed)) {
        const fs::path path = fs::path(dir) / (c.name + ".qasm");
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw Error("cannot write " + path.string());
        }
        out << to_qasm(c);
        paths.push_back(path.string());
    }
    return paths;
}

BatchRecord run_policy(const Circuit &c, BatchPolicy policy, const CalibrationModel *model,
                       const BatchOptions &opt) {
    BatchRecord rec;
    rec.name = c.name;
    rec.features = extract_features(c);
    const auto start = std::chrono::steady_clock::now();
    try {
        BackendKind backend = BackendKind::StateVector;
        switch (policy) {
        case BatchPolicy::FixedSvThreshold:
            backend = c.n_qubits <= opt.sv_threshold ? BackendKind::StateVector : BackendKind::Mps;
            break;
        case BatchPolicy::FixedMps:
            backend = BackendKind::Mps;
            break;
        case BatchPolicy::FixedStab:
            backend = BackendKind::Stabilizer;
            break;
        case BatchPolicy::Auto: {
            if (model == nullptr) {
                throw CalibrationError("the auto policy needs a calibration file");
            }
            const auto t0 = std::chrono::steady_clock::now();
            const PredictionReport report = select_backend(c, *model, opt.shots, opt.select);
            rec.prediction_seconds = seconds_since(t0);
            backend = report.chosen;
            rec.predicted_seconds = report.estimates.at(backend);
            break;
        }
        }
        rec.backend = backend;

        const auto t0 = std::chrono::steady_clock::now();
        RunResult result;
        switch (backend) {
        case BackendKind::StateVector: {
            sv::Options o;
            o.run = opt.run;
            if (model != nullptr) {
                o.parallel_threshold = model->sv.parallel_threshold;
            }
            o.max_qubits = std::max(o.max_qubits, opt.sv_threshold);
            result = sv::run(c, opt.shots, opt.seed, o);
            break;
        }
        case BackendKind::Mps: {
            mps::FidelityLoopOptions o;
            o.threshold = opt.fidelity_threshold;
            o.chi_init = opt.chi_init;
            o.chi_cap = opt.chi_cap;
            o.mirror_shots = opt.mirror_shots;
            o.run = opt.run;
            const auto loop = mps::run_with_fidelity_loop(c, opt.shots, opt.seed, o);
            result = loop.result;
            rec.chi = loop.chi;
            rec.fidelity = loop.fidelity;
            break;
        }
        case BackendKind::Stabilizer:
            result = stab::run(c, opt.shots, opt.seed, opt.run);
            break;
        case BackendKind::PBlock:
            throw BackendError("p-block is not a batch routing target");
        }
        rec.wall_seconds = seconds_since(t0);
        rec.counts = std::move(result.counts);
    } catch (const std::exception &e) {
        rec.error = e.what();
        rec.wall_seconds = seconds_since(start) - rec.prediction_seconds;
    }
    return rec;
}

namespace {

void require_model(BatchPolicy policy, const CalibrationModel *model) {
    if (policy == BatchPolicy::Auto && model == nullptr) {
        throw CalibrationError("the auto policy needs a calibration file; run `maestro calibrate` first");
    }
}

} // namespace

BatchReport run_batch(const std::vector<Circuit> &circuits, BatchPolicy policy, const CalibrationModel *model,
                      const BatchOptions &opt) {
    require_model(policy, model);
    BatchReport report;
    report.policy = policy;
    for (const auto &c : circuits) {
        report.circuits.push_back(run_policy(c, policy, model, opt));
    }
    return report;
}

BatchReport run_batch(const std::string &dir, BatchPolicy policy, const CalibrationModel *model,
                      const BatchOptions &opt) {
    require_model(policy, model);
    if (!fs::is_directory(dir)) {
        throw Error("batch directory " + dir + " does not exist");
    }
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".qasm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    BatchReport report;
    report.policy = policy;
    for (const auto &path : files) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        Circuit c;
        try {
            c = parse_qasm(buf.str());
        } catch (const std::exception &e) {
            BatchRecord rec;
            rec.name = path.stem().string();
            rec.error = e.what();
            report.circuits.push_back(std::move(rec));
            continue;
        }
        c.name = path.stem().string();
        report.circuits.push_back(run_policy(c, policy, model, opt));
    }
    return report;
}

double BatchReport::wall_seconds() const {
    double total = 0.0;
    for (const auto &r : circuits) {
        total += r.wall_seconds;
    }
    return total;
}

double BatchReport::prediction_seconds() const {
    double total = 0.0;
    for (const auto &r : circuits) {
        total += r.prediction_seconds;
    }
    return total;
}

double BatchReport::total_seconds() const { return wall_seconds() + prediction_seconds(); }

std::size_t BatchReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(circuits.begin(), circuits.end(), [](const BatchRecord &r) { return !r.error.empty(); }));
}

std::string BatchReport::to_json() const {
    using nlohmann::json;
    json records = json::array();
    for (const auto &r : circuits) {
        json j{{"name", r.name},
               {"features", detail::features_json(r.features)},
               {"backend", r.backend ? json(std::string(backend_name(*r.backend))) : json(nullptr)},
               {"chi", r.chi ? json(*r.chi) : json(nullptr)},
               {"wall_seconds", r.wall_seconds},
               {"predicted_seconds", r.predicted_seconds ? json(*r.predicted_seconds) : json(nullptr)},
               {"prediction_seconds", r.prediction_seconds},
               {"fidelity", r.fidelity ? json(*r.fidelity) : json(nullptr)},
               {"counts", r.counts}};
        if (!r.error.empty()) {
            j["error"] = r.error;
        }
        records.push_back(std::move(j));
    }
    json out{{"version", 1},
             {"policy", std::string(policy_name(policy))},
             {"circuits", records},
             {"totals",
              {{"wall_seconds", wall_seconds()},
               {"prediction_overhead_seconds", prediction_seconds()},
               {"total_seconds", total_seconds()},
               {"circuits", circuits.size()},
               {"failures", failures()}}}};
    return out.dump(2);
}

} // namespace maestro
