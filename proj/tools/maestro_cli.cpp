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

// maestro command-line front end: run, batch, calibrate, predict, gen-suite.

#include "maestro/batch.hpp"
#include "maestro/errors.hpp"
#include "maestro/mps.hpp"
#include "maestro/pblock.hpp"
#include "maestro/predictor.hpp"
#include "maestro/statevector.hpp"
#include "maestro/tableau.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace maestro;

enum Exit { kOk = 0, kUsage = 2, kInput = 3, kBackend = 4 };

// Bad files, unreadable paths and the like.
class InputError : public Error {
  public:
    using Error::Error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text << '\n';
}

CalibrationModel load_model(const std::string &flag) {
    const char *env = std::getenv("MAESTRO_CALIB");
    const std::string path = env != nullptr && *env != '\0' ? std::string(env) : flag;
    if (path.empty()) {
        throw CalibrationError("no calibration file; pass --calib or set MAESTRO_CALIB");
    }
    return CalibrationModel::load(path);
}

json result_json(const RunResult &r) {
    json j{{"version", 1},
           {"backend", std::string(backend_name(r.backend))},
           {"shots", r.shots},
           {"seed", r.seed},
           {"wall_time", r.wall_time},
           {"counts", r.counts}};
    if (r.predicted_time) {
        j["predicted_time"] = *r.predicted_time;
    }
    if (r.chi) {
        j["chi"] = *r.chi;
    }
    if (r.fidelity) {
        j["fidelity"] = *r.fidelity;
    }
    return j;
}

struct RunArgs {
    std::string input, backend = "auto", layout, output, calib;
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    std::size_t chi = 0;
    double threshold = 0.95;
    bool threshold_set = false;
};

json cmd_run(const RunArgs &a, const RunOptions &run) {
    const Circuit c = parse_qasm(read_file(a.input));
    std::optional<BackendKind> backend;
    std::optional<double> predicted;
    if (a.backend == "auto") {
        const CalibrationModel model = load_model(a.calib);
        SelectOptions so;
        so.estimate.workers = run.workers;
        so.estimate.max_threads = run.max_threads;
        const PredictionReport report = select_backend(c, model, a.shots, so);
        backend = report.chosen;
        predicted = report.estimates.at(report.chosen);
    } else {
        backend = backend_from_name(a.backend);
        if (!backend) {
            throw InputError("unknown backend '" + a.backend + "'");
        }
    }

    RunResult result;
    json extra = json::object();
    switch (*backend) {
    case BackendKind::StateVector: {
        sv::Options o;
        o.run = run;
        result = sv::run(c, a.shots, a.seed, o);
        break;
    }
    case BackendKind::Mps:
        if (a.chi > 0 && !a.threshold_set) {
            mps::Options o;
            o.chi_max = a.chi;
            o.run = run;
            result = mps::run(c, a.shots, a.seed, o);
            result.chi = a.chi;
        } else {
            mps::FidelityLoopOptions o;
            o.threshold = a.threshold;
            if (a.chi > 0) {
                o.chi_init = a.chi;
            }
            o.run = run;
            const auto loop = mps::run_with_fidelity_loop(c, a.shots, a.seed, o);
            result = loop.result;
            extra["iterations"] = loop.iterations;
            extra["loop_seconds"] = loop.total_seconds;
        }
        break;
    case BackendKind::Stabilizer:
        result = stab::run(c, a.shots, a.seed, run);
        break;
    case BackendKind::PBlock:
        if (a.layout.empty()) {
            result = pblock::run(c, a.shots, a.seed, run);
        } else {
            const auto layout = pblock::layout_from_json(read_file(a.layout));
            const auto dist = pblock::run_distributed(c, layout, a.shots, a.seed, run);
            result = dist.result;
            extra["cut"] = dist.partition.cut;
            extra["remote_gates"] = dist.remote_gates;
            extra["assignment"] = dist.partition.assignment;
        }
        break;
    }
    result.predicted_time = predicted;
    json j = result_json(result);
    j.update(extra);
    return j;
}

json error_json(const std::string &kind, const std::exception &e) {
    json j{{"error", {{"kind", kind}, {"message", e.what()}}}};
    if (const auto *pe = dynamic_cast<const ParseError *>(&e)) {
        j["error"]["line"] = pe->line();
        j["error"]["column"] = pe->column();
    }
    return j;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"maestro: multi-backend quantum circuit simulation with runtime-based backend selection"};
    app.require_subcommand(1);
    app.fallthrough();
    bool error_json_flag = false;
    RunOptions run;
    app.add_flag("--error-json", error_json_flag, "Print failures as a JSON object on stdout");
    app.add_option("--workers", run.workers, "Logical shot streams")->capture_default_str()->check(CLI::PositiveNumber);

    RunArgs ra;
    auto *run_cmd = app.add_subcommand("run", "Execute one QASM circuit");
    run_cmd->add_option("--input", ra.input, "OpenQASM 2 file")->required();
    run_cmd->add_option("--backend", ra.backend, "auto|sv|mps|stab|pblock")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "sv", "mps", "stab", "pblock"}));
    run_cmd->add_option("--shots", ra.shots)->capture_default_str()->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", ra.seed)->capture_default_str();
    run_cmd->add_option("--chi", ra.chi, "MPS bond dimension (fixed, or the loop start with --fidelity-threshold)");
    run_cmd->add_option("--fidelity-threshold", ra.threshold)->check(CLI::Range(0.0, 1.0))->each([&](const std::string &) {
        ra.threshold_set = true;
    });
    run_cmd->add_option("--layout", ra.layout, "vQPU layout JSON for distributed p-block runs");
    run_cmd->add_option("--output", ra.output, "Result JSON path (default stdout)");
    run_cmd->add_option("--calib", ra.calib, "Calibration JSON for --backend auto");

    std::string dir, policy = "auto", calib, report_path;
    BatchOptions bo;
    auto *batch_cmd = app.add_subcommand("batch", "Run every .qasm file in a directory under one routing policy");
    batch_cmd->add_option("--dir", dir)->required();
    batch_cmd->add_option("--policy", policy)
        ->capture_default_str()
        ->check(CLI::IsMember({"fixed-sv-threshold", "fixed-mps", "auto", "fixed-stab"}));
    batch_cmd->add_option("--calib", calib);
    batch_cmd->add_option("--report", report_path, "Report JSON path (default stdout)");
    batch_cmd->add_option("--shots", bo.shots)->capture_default_str()->check(CLI::PositiveNumber);
    batch_cmd->add_option("--seed", bo.seed)->capture_default_str();
    batch_cmd->add_option("--fidelity-threshold", bo.fidelity_threshold)->capture_default_str();

    std::string calib_out;
    std::uint64_t calib_seed = 0;
    CalibrationConfig config;
    auto *calib_cmd = app.add_subcommand("calibrate", "Benchmark this machine and write a calibration file");
    calib_cmd->add_option("--out", calib_out)->required();
    calib_cmd->add_option("--seed", calib_seed)->capture_default_str();
    calib_cmd->add_option("--repetitions", config.repetitions)->capture_default_str()->check(CLI::PositiveNumber);

    std::string predict_input, predict_calib;
    std::size_t predict_shots = 1000;
    auto *predict_cmd = app.add_subcommand("predict", "Print per-backend runtime estimates without executing");
    predict_cmd->add_option("--input", predict_input)->required();
    predict_cmd->add_option("--calib", predict_calib);
    predict_cmd->add_option("--shots", predict_shots)->capture_default_str()->check(CLI::PositiveNumber);

    std::string suite_out;
    std::uint64_t suite_seed = 0;
    auto *suite_cmd = app.add_subcommand("gen-suite", "Write the 90-circuit torture suite");
    suite_cmd->add_option("--out", suite_out)->required();
    suite_cmd->add_option("--seed", suite_seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    auto fail = [&](int code, const std::string &kind, const std::exception &e) {
        if (error_json_flag) {
            std::cout << error_json(kind, e).dump(2) << '\n';
        } else {
            std::cerr << "maestro: " << e.what() << '\n';
        }
        return code;
    };

    try {
        if (*run_cmd) {
            write_output(ra.output, cmd_run(ra, run).dump(2));
        } else if (*batch_cmd) {
            bo.run = run;
            const auto p = *policy_from_name(policy);
            std::optional<CalibrationModel> model;
            const char *env = std::getenv("MAESTRO_CALIB");
            if (p == BatchPolicy::Auto || !calib.empty() || (env != nullptr && *env != '\0')) {
                model = load_model(calib);
            }
            const BatchReport report = run_batch(dir, p, model ? &*model : nullptr, bo);
            write_output(report_path, report.to_json());
        } else if (*calib_cmd) {
            calibrate(config, calib_seed).save(calib_out);
        } else if (*predict_cmd) {
            const Circuit c = parse_qasm(read_file(predict_input));
            SelectOptions so;
            so.estimate.workers = run.workers;
            std::cout << select_backend(c, load_model(predict_calib), predict_shots, so).to_json() << '\n';
        } else if (*suite_cmd) {
            const auto paths = write_torture_suite(suite_out, suite_seed);
            std::cout << "wrote " << paths.size() << " circuits to " << suite_out << '\n';
        }
    } catch (const ParseError &e) {
        return fail(kInput, "parse", e);
    } catch (const ValidationError &e) {
        return fail(kInput, "validation", e);
    } catch (const CalibrationError &e) {
        return fail(kInput, "calibration", e);
    } catch (const InputError &e) {
        return fail(kInput, "input", e);
    } catch (const BackendError &e) {
        return fail(kBackend, "backend", e);
    } catch (const std::exception &e) {
        return fail(kBackend, "internal", e);
    }
    return kOk;
}
