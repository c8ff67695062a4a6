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

#include "maestro/alias.hpp"
#include "maestro/errors.hpp"
#include "maestro/generators.hpp"
#include "maestro/mps.hpp"
#include "maestro/predictor.hpp"
#include "maestro/statevector.hpp"
#include "maestro/tableau.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

namespace maestro {

namespace {

using nlohmann::json;

const std::vector<std::string> kSvClasses{"1q", "2q", "measure", "sample"};
const std::vector<std::string> kMpsClasses{"1q", "2q", "measure"};
const std::vector<std::string> kStabClasses{"gate", "measure"};
const std::vector<std::string> kShotBackends{"sv", "mps", "stab"};

void check_grid(const std::vector<double> &grid, const std::string &what) {
    if (grid.empty()) {
        throw CalibrationError(what + " grid is empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw CalibrationError(what + " grid is not strictly increasing");
        }
    }
}

void check_values(const std::vector<double> &values, std::size_t expected, const std::string &what) {
    if (values.size() != expected) {
        throw CalibrationError(what + " has " + std::to_string(values.size()) + " values, expected " +
                               std::to_string(expected));
    }
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw CalibrationError(what + " contains a non-positive coefficient");
        }
    }
}

template <class Map> const auto &lookup(const Map &map, const std::string &key, const std::string &what) {
    const auto it = map.find(key);
    if (it == map.end()) {
        throw CalibrationError("calibration has no " + what + " '" + key + "'");
    }
    return it->second;
}

// Median wall time of fn(k) over `reps` runs, growing k until the median
// clears the timer floor. Returns seconds per unit of k.
template <class Fn> double time_per_op(Fn &&fn, std::size_t reps, double min_seconds, std::size_t k = 1) {
    for (;;) {
        std::vector<double> samples;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            fn(k);
            samples.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2),
                         samples.end());
        const double median = samples[samples.size() / 2];
        if (median >= min_seconds || k >= (std::size_t{1} << 30)) {
            return std::max(median, 1e-12) / static_cast<double>(k);
        }
        k *= 4;
    }
}

Instruction random_1q(Rng &rng, std::size_t n) {
    const double a = rng.uniform() * 6.0, b = rng.uniform() * 6.0, c = rng.uniform() * 6.0;
    return Instruction{GateKind::U, {a, b, c}, {rng.below(n)}, std::nullopt};
}

Instruction random_2q(Rng &rng, std::size_t n) {
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    b += b >= a ? 1 : 0;
    return Instruction{rng.coin() ? GateKind::CX : GateKind::CZ, {}, {a, b}, std::nullopt};
}

// MPS whose bonds have grown to min(chi, 2^min(i+1, n-i-1)), or as close as a
// bounded number of brickwork layers gets.
MpsState saturated_mps(std::size_t n, std::size_t chi, Rng &rng) {
    MpsState state(n, chi);
    for (std::size_t layer = 0; layer < 4 * n; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            state.apply(Instruction{GateKind::U, {rng.uniform() * 3, rng.uniform() * 6, rng.uniform() * 6}, {q}, {}});
        }
        for (std::size_t q = layer % 2; q + 1 < n; q += 2) {
            state.apply(Instruction{GateKind::CX, {}, {q, q + 1}, {}});
        }
        bool full = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const std::size_t cut = std::min(i + 1, n - i - 1);
            const std::size_t bound = cut >= 63 ? chi : std::min<std::size_t>(chi, std::size_t{1} << cut);
            full = full && state.bond_dimension(i) >= bound;
        }
        if (full) {
            break;
        }
    }
    return state;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

double CalibrationModel::sv_coefficient(const std::string &cls, double n) const {
    return interpolate_1d(sv.grid_n, lookup(sv.curves, cls, "sv class"), n);
}

double CalibrationModel::mps_coefficient(const std::string &cls, double n, double chi) const {
    return interpolate_2d(mps.grid_n, mps.grid_chi, lookup(mps.surfaces, cls, "mps class"), n, chi);
}

double CalibrationModel::stab_coefficient(const std::string &cls, double n) const {
    return interpolate_1d(stab.grid_n, lookup(stab.curves, cls, "stab class"), n);
}

const ShotFit &CalibrationModel::shot_fit(BackendKind backend) const {
    return lookup(shots, std::string(backend_name(backend)), "shot fit for backend");
}

double CalibrationModel::alpha_at(std::size_t threads) const {
    std::size_t i = 0;
    while (i + 1 < alpha.size() && (std::size_t{2} << i) <= threads) {
        ++i;
    }
    return alpha.empty() ? 1.0 : alpha[i];
}

CalibrationModel CalibrationModel::scaled(double factor) const {
    CalibrationModel out = *this;
    for (auto &[cls, curve] : out.sv.curves) {
        for (auto &v : curve) {
            v *= factor;
        }
    }
    for (auto &[cls, surface] : out.mps.surfaces) {
        for (auto &row : surface) {
            for (auto &v : row) {
                v *= factor;
            }
        }
    }
    for (auto &[cls, curve] : out.stab.curves) {
        for (auto &v : curve) {
            v *= factor;
        }
    }
    for (auto &[name, fit] : out.shots) {
        fit.c1 *= factor;
        fit.c2 *= factor;
    }
    return out;
}

void CalibrationModel::validate() const {
    check_grid(sv.grid_n, "sv n");
    for (const auto &cls : kSvClasses) {
        check_values(lookup(sv.curves, cls, "sv class"), sv.grid_n.size(), "sv curve " + cls);
    }
    check_grid(mps.grid_n, "mps n");
    check_grid(mps.grid_chi, "mps chi");
    for (const auto &cls : kMpsClasses) {
        const auto &surface = lookup(mps.surfaces, cls, "mps class");
        if (surface.size() != mps.grid_n.size()) {
            throw CalibrationError("mps surface " + cls + " is not rectangular");
        }
        for (const auto &row : surface) {
            check_values(row, mps.grid_chi.size(), "mps surface " + cls);
        }
    }
    check_grid(stab.grid_n, "stab n");
    for (const auto &cls : kStabClasses) {
        check_values(lookup(stab.curves, cls, "stab class"), stab.grid_n.size(), "stab curve " + cls);
    }
    for (const auto &name : kShotBackends) {
        const auto &fit = lookup(shots, name, "shot fit for backend");
        check_values({fit.c1, fit.c2}, 2, "shot fit " + name);
    }
    if (alpha.empty() || alpha.front() != 1.0) {
        throw CalibrationError("thread scaling must start with alpha(1) = 1");
    }
    check_values(alpha, alpha.size(), "alpha");
}

std::string CalibrationModel::to_json() const {
    json j;
    j["version"] = version;
    j["created"] = created;
    j["sv"] = {{"grid_n", sv.grid_n}, {"curves", sv.curves}, {"parallel_threshold", sv.parallel_threshold}};
    j["mps"] = {{"grid_n", mps.grid_n}, {"grid_chi", mps.grid_chi}, {"surfaces", mps.surfaces}};
    j["stab"] = {{"grid_n", stab.grid_n}, {"curves", stab.curves}};
    json shot_json = json::object();
    for (const auto &[name, fit] : shots) {
        shot_json[name] = {{"c1", fit.c1}, {"c2", fit.c2}};
    }
    j["shots"] = shot_json;
    j["alpha"] = alpha;
    return j.dump(2);
}

CalibrationModel CalibrationModel::from_json(const std::string &text) {
    CalibrationModel m;
    try {
        const json j = json::parse(text);
        m.version = j.at("version").get<int>();
        m.created = j.value("created", std::string{});
        const auto &sv = j.at("sv");
        sv.at("grid_n").get_to(m.sv.grid_n);
        sv.at("curves").get_to(m.sv.curves);
        m.sv.parallel_threshold = sv.value("parallel_threshold", std::size_t{64});
        const auto &mps = j.at("mps");
        mps.at("grid_n").get_to(m.mps.grid_n);
        mps.at("grid_chi").get_to(m.mps.grid_chi);
        mps.at("surfaces").get_to(m.mps.surfaces);
        const auto &stab = j.at("stab");
        stab.at("grid_n").get_to(m.stab.grid_n);
        stab.at("curves").get_to(m.stab.curves);
        for (const auto &[name, fit] : j.at("shots").items()) {
            m.shots[name] = ShotFit{fit.at("c1").get<double>(), fit.at("c2").get<double>()};
        }
        j.at("alpha").get_to(m.alpha);
    } catch (const json::exception &e) {
        throw CalibrationError(std::string("malformed calibration JSON: ") + e.what());
    }
    if (m.version != 1) {
        throw CalibrationError("unsupported calibration version " + std::to_string(m.version));
    }
    m.validate();
    return m;
}

void CalibrationModel::save(const std::string &path) const {
    std::ofstream out(path);
    if (!out) {
        throw CalibrationError("cannot write calibration file " + path);
    }
    out << to_json() << '\n';
}

CalibrationModel CalibrationModel::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CalibrationError("calibration file " + path + " not found; run `maestro calibrate` first");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

CalibrationModel calibrate(const CalibrationConfig &config, std::uint64_t seed) {
    CalibrationModel model;
    model.created = utc_timestamp();
    model.sv.grid_n = config.sv_n;
    model.mps.grid_n = config.mps_n;
    model.mps.grid_chi = config.mps_chi;
    model.stab.grid_n = config.stab_n;
    const std::size_t reps = std::max<std::size_t>(1, config.repetitions);
    const double floor = config.min_seconds;
    Rng rng(seed);

    // State vector: the parallel kernels are off during coefficient timing.
    for (const double nd : config.sv_n) {
        const auto n = static_cast<std::size_t>(nd);
        const double ops = std::ldexp(1.0, static_cast<int>(n));
        StateVector base(n);
        for (std::size_t q = 0; q < n; ++q) {
            base.apply(random_1q(rng, n));
        }
        StateVector work = base;
        model.sv.curves["1q"].push_back(time_per_op(
                                            [&](std::size_t k) {
                                                for (std::size_t i = 0; i < k; ++i) {
                                                    work.apply(random_1q(rng, n));
                                                }
                                            },
                                            reps, floor) /
                                        ops);
        model.sv.curves["2q"].push_back(n < 2 ? model.sv.curves["1q"].back()
                                              : time_per_op(
                                                    [&](std::size_t k) {
                                                        for (std::size_t i = 0; i < k; ++i) {
                                                            work.apply(random_2q(rng, n));
                                                        }
                                                    },
                                                    reps, floor) /
                                                    ops);
        model.sv.curves["measure"].push_back(time_per_op(
                                                 [&](std::size_t k) {
                                                     for (std::size_t i = 0; i < k; ++i) {
                                                         work = base;
                                                         work.measure(rng.below(n), rng);
                                                     }
                                                 },
                                                 reps, floor) /
                                             ops);
        model.sv.curves["sample"].push_back(time_per_op(
                                                [&](std::size_t k) {
                                                    for (std::size_t i = 0; i < k; ++i) {
                                                        const auto p = base.probabilities();
                                                        const AliasTable table(p);
                                                        (void)table;
                                                    }
                                                },
                                                reps, floor) /
                                            ops);
    }

    // Smallest grid width at which the OpenMP kernels beat the serial ones.
    model.sv.parallel_threshold = 64;
    for (const double nd : config.sv_n) {
        const auto n = static_cast<std::size_t>(nd);
        if (n < 10) {
            continue;
        }
        StateVector work(n);
        auto gate_time = [&](std::size_t threshold) {
            work.set_parallel_threshold(threshold);
            return time_per_op(
                [&](std::size_t k) {
                    for (std::size_t i = 0; i < k; ++i) {
                        work.apply(random_1q(rng, n));
                    }
                },
                reps, floor);
        };
        if (gate_time(n) < 0.9 * gate_time(64)) {
            model.sv.parallel_threshold = n;
            break;
        }
    }

    // MPS: coefficients use the bond dimension actually reached, so nodes with
    // chi above 2^(n/2) repeat the saturated value.
    for (const double nd : config.mps_n) {
        const auto n = static_cast<std::size_t>(nd);
        std::vector<double> row_1q, row_2q, row_meas;
        for (const double cd : config.mps_chi) {
            const auto chi = static_cast<std::size_t>(cd);
            MpsState base = saturated_mps(n, chi, rng);
            const double eff = static_cast<double>(std::max<std::size_t>(1, base.max_bond_dimension()));
            MpsState work = base;
            row_1q.push_back(time_per_op(
                                 [&](std::size_t k) {
                                     for (std::size_t i = 0; i < k; ++i) {
                                         work.apply(random_1q(rng, n));
                                     }
                                 },
                                 reps, floor) /
                             (eff * eff));
            work = base;
            row_2q.push_back(time_per_op(
                                 [&](std::size_t k) {
                                     for (std::size_t i = 0; i < k; ++i) {
                                         const std::size_t q = rng.below(n - 1);
                                         work.apply(Instruction{GateKind::CX, {}, {q, q + 1}, {}});
                                     }
                                 },
                                 reps, floor) /
                             (static_cast<double>(n) * eff * eff * eff));
            base.move_center(0);
            row_meas.push_back(time_per_op(
                                   [&](std::size_t k) {
                                       for (std::size_t i = 0; i < k; ++i) {
                                           (void)base.sample(rng, n - 1);
                                       }
                                   },
                                   reps, floor) /
                               (static_cast<double>(n) * static_cast<double>(n) * eff * eff * eff));
        }
        model.mps.surfaces["1q"].push_back(std::move(row_1q));
        model.mps.surfaces["2q"].push_back(std::move(row_2q));
        model.mps.surfaces["measure"].push_back(std::move(row_meas));
    }

    // Stabilizer tableau.
    for (const double nd : config.stab_n) {
        const auto n = static_cast<std::size_t>(nd);
        const double ops = nd * nd;
        Tableau base(n);
        const Circuit scramble = gen::random_clifford(n, 4 * n, rng);
        for (const auto &inst : scramble.ops) {
            base.apply(inst);
        }
        Tableau work = base;
        model.stab.curves["gate"].push_back(time_per_op(
                                                [&](std::size_t k) {
                                                    for (std::size_t i = 0; i < k; ++i) {
                                                        if (rng.coin()) {
                                                            work.h(rng.below(n));
                                                        } else {
                                                            const auto g = random_2q(rng, n);
                                                            work.cx(g.qubits[0], g.qubits[1]);
                                                        }
                                                    }
                                                },
                                                reps, floor) /
                                            ops);
        model.stab.curves["measure"].push_back(time_per_op(
                                                   [&](std::size_t k) {
                                                       for (std::size_t i = 0; i < k; ++i) {
                                                           work = base;
                                                           (void)work.measure(rng.below(n), rng);
                                                       }
                                                   },
                                                   reps, floor) /
                                               ops);
    }

    // Fixed per-run and per-shot overhead on a one-qubit measurement.
    Circuit probe(1, 1);
    probe.measure(0, 0);
    for (const auto &name : kShotBackends) {
        const BackendKind backend = *backend_from_name(name);
        std::vector<double> seconds;
        for (const double s : config.shot_counts) {
            const auto shots = static_cast<std::size_t>(s);
            seconds.push_back(time_per_op(
                [&](std::size_t k) {
                    for (std::size_t i = 0; i < k; ++i) {
                        switch (backend) {
                        case BackendKind::StateVector:
                            (void)sv::run(probe, shots, i);
                            break;
                        case BackendKind::Mps:
                            (void)mps::run(probe, shots, i);
                            break;
                        default:
                            (void)stab::run(probe, shots, i);
                            break;
                        }
                    }
                },
                reps, floor));
        }
        ShotFit fit = fit_shots(config.shot_counts, seconds);
        // Noise can push an intercept below zero; the model needs positive terms.
        fit.c1 = std::max(fit.c1, 1e-9);
        fit.c2 = std::max(fit.c2, 1e-12);
        model.shots[name] = fit;
    }

    // Thread scaling on a fixed replay workload.
    std::size_t max_threads = config.max_threads;
    if (max_threads == 0) {
        max_threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    Circuit replay(10, 10);
    for (std::size_t q = 0; q < 10; ++q) {
        replay.h(q);
    }
    replay.measure(0, 0).h(0);
    replay.measure_all();
    double base_time = 0.0;
    model.alpha.clear();
    for (std::size_t t = 1; t <= max_threads; t *= 2) {
        sv::Options o;
        o.run.workers = std::max<std::size_t>(max_threads, 1);
        o.run.max_threads = t;
        const double seconds = time_per_op(
            [&](std::size_t k) {
                for (std::size_t i = 0; i < k; ++i) {
                    (void)sv::run(replay, 2000, i, o);
                }
            },
            reps, floor);
        if (t == 1) {
            base_time = seconds;
            model.alpha.push_back(1.0);
        } else {
            model.alpha.push_back(base_time / seconds);
        }
    }
    model.validate();
    return model;
}

} // namespace maestro
