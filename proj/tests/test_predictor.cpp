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

#include "maestro/errors.hpp"
#include "maestro/generators.hpp"
#include "maestro/predictor.hpp"
#include "maestro/statevector.hpp"

#include "models.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

using namespace maestro;

namespace {

Circuit random_mixed(std::size_t n, Rng &rng) {
    return rng.coin() ? gen::random_circuit(n, 1 + rng.below(6 * n), rng)
                      : gen::random_clifford(n, 1 + rng.below(6 * n), rng);
}

} // namespace

TEST(Interpolate, NodesAreExact) {
    const std::vector<double> xs{1, 2, 4, 8, 16}, ys{0.3, 0.1, 0.7, 0.2, 5.0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_EQ(interpolate_1d(xs, ys, xs[i]), ys[i]);
    }
}

TEST(Interpolate, MonotoneDataStaysMonotone) {
    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + rng.below(9);
        std::vector<double> xs(m), ys(m);
        double x = 0, y = 0;
        for (std::size_t i = 0; i < m; ++i) {
            x += 0.1 + rng.uniform() * 3;
            y += rng.coin() ? 0.0 : rng.uniform() * std::pow(10.0, double(rng.below(4)));
            xs[i] = x;
            ys[i] = y;
        }
        for (std::size_t i = 0; i + 1 < m; ++i) {
            double previous = ys[i];
            for (int k = 1; k <= 100; ++k) {
                const double v = interpolate_1d(xs, ys, xs[i] + (xs[i + 1] - xs[i]) * k / 101.0);
                ASSERT_GE(v, previous - 1e-12 * std::abs(previous));
                ASSERT_LE(v, ys[i + 1] + 1e-12 * std::abs(ys[i + 1]));
                previous = v;
            }
        }
    }
}

TEST(Interpolate, TwoPointsIsLinear) {
    const std::vector<double> xs{2, 6}, ys{1, 9};
    for (double x = 2; x <= 6; x += 0.25) {
        EXPECT_NEAR(interpolate_1d(xs, ys, x), 1 + 2 * (x - 2), 1e-14);
    }
}

TEST(Interpolate, ClampsOutsideGrid) {
    const std::vector<double> xs{1, 2, 3}, ys{5, 6, 8};
    EXPECT_EQ(interpolate_1d(xs, ys, -10), 5.0);
    EXPECT_EQ(interpolate_1d(xs, ys, 99), 8.0);
}

TEST(Interpolate, ReproducesLinearData) {
    const std::vector<double> xs{0, 1, 3, 4, 7}, ys{1, 3, 7, 9, 15};
    for (double x = 0; x <= 7; x += 0.1) {
        EXPECT_NEAR(interpolate_1d(xs, ys, x), 1 + 2 * x, 1e-12);
    }
}

TEST(Interpolate, SeparableSurface) {
    const std::vector<double> grid_n{4, 8, 12, 16, 20, 24}, grid_chi{2, 4, 8, 16, 32, 64};
    auto f = [](double n) { return 1 + n * n; };
    auto g = [](double chi) { return chi * chi; };
    std::vector<std::vector<double>> surface;
    for (double n : grid_n) {
        std::vector<double> row;
        for (double chi : grid_chi) {
            row.push_back(f(n) * g(chi));
        }
        surface.push_back(row);
    }
    for (std::size_t i = 0; i < grid_n.size(); ++i) {
        for (std::size_t j = 0; j < grid_chi.size(); ++j) {
            EXPECT_EQ(interpolate_2d(grid_n, grid_chi, surface, grid_n[i], grid_chi[j]), surface[i][j]);
        }
    }
    double worst = 0;
    for (double n = 4; n <= 24; n += 1.3) {
        for (double chi = 2; chi <= 64; chi *= 1.3) {
            const double v = interpolate_2d(grid_n, grid_chi, surface, n, chi);
            worst = std::max(worst, std::abs(v - f(n) * g(chi)) / (f(n) * g(chi)));
        }
    }
    EXPECT_LT(worst, 0.05);
    EXPECT_EQ(interpolate_2d(grid_n, grid_chi, surface, 12, 1000), surface[2][5]);
}

TEST(ShotFit, RecoversSyntheticLine) {
    const std::vector<double> s{1, 10, 100, 1000, 5000};
    std::vector<double> t;
    for (double x : s) {
        t.push_back(3.5e-4 + 2.25e-7 * x);
    }
    const ShotFit fit = fit_shots(s, t);
    EXPECT_NEAR(fit.c1, 3.5e-4, 3.5e-4 * 1e-9);
    EXPECT_NEAR(fit.c2, 2.25e-7, 2.25e-7 * 1e-9);
    EXPECT_THROW(fit_shots(std::vector<double>{5, 5}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Estimate, ConstantCoefficientArithmetic) {
    const double gamma = 3e-9, c1 = 2e-3, c2 = 5e-7;
    const auto model = models::constant(gamma, c1, c2);
    Circuit c(7, 0);
    for (int k = 0; k < 13; ++k) {
        c.h(std::size_t(k) % 7);
    }
    EXPECT_NEAR(estimate(c, BackendKind::StateVector, model, 400), 13 * gamma * 128 + c1 + c2 * 400, 1e-18);
    EXPECT_NEAR(estimate(Circuit(7, 0), BackendKind::StateVector, model, 400), c1 + c2 * 400, 1e-18);
    EXPECT_NEAR(estimate(Circuit(7, 0), BackendKind::Mps, model, 400, 4), c1 + c2 * 400, 1e-18);
    EXPECT_NEAR(estimate(Circuit(7, 0), BackendKind::Stabilizer, model, 400), c1 + c2 * 400, 1e-18);
    EXPECT_NEAR(estimate(c, BackendKind::Mps, model, 400, 4), 13 * gamma * 16 + c1 + c2 * 400, 1e-18);
    EXPECT_NEAR(estimate(c, BackendKind::Stabilizer, model, 400), 13 * gamma * 49 + c1 + c2 * 400, 1e-18);
}

TEST(Estimate, MpsTwoQubitScaling) {
    const double gamma = 1e-9;
    const auto model = models::constant(gamma);
    const double overhead = model.shot_fit(BackendKind::Mps)(1);
    Circuit near(8, 0), far(8, 0);
    near.cx(2, 3);
    far.cx(1, 4);
    const double unit = gamma * 8 * 64;
    EXPECT_NEAR(estimate(near, BackendKind::Mps, model, 1, 4) - overhead, unit, 1e-15);
    EXPECT_NEAR(estimate(far, BackendKind::Mps, model, 1, 4) - overhead, 5 * unit, 1e-15);
}

TEST(Estimate, RejectsInapplicableBackends) {
    const auto model = models::constant(1e-9);
    Circuit t(2, 0);
    t.t(0);
    EXPECT_THROW(estimate(t, BackendKind::Stabilizer, model, 10), BackendError);
    EXPECT_THROW(estimate(t, BackendKind::PBlock, model, 10), BackendError);
}

TEST(Estimate, AdditiveOverMeasurementFreePrefix) {
    const auto model = models::shaped();
    Rng rng(62);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(12);
        const std::size_t shots = 1 + rng.below(2000);
        const Circuit a = random_mixed(n, rng);
        Circuit b = random_mixed(n, rng);
        if (rng.coin()) {
            b.n_clbits = n;
            b.measure(rng.below(n), 0);
            b.h(rng.below(n));
        }
        b.measure_all();
        Circuit both = a;
        both.n_clbits = b.n_clbits;
        both.ops.insert(both.ops.end(), b.ops.begin(), b.ops.end());
        std::vector<BackendKind> kinds{BackendKind::StateVector, BackendKind::Mps};
        if (is_clifford(both)) {
            kinds.push_back(BackendKind::Stabilizer);
        }
        for (auto k : kinds) {
            const double overhead = model.shot_fit(k)(double(shots));
            const double lhs = estimate(both, k, model, shots, 8);
            const double rhs = estimate(a, k, model, shots, 8) + estimate(b, k, model, shots, 8) - overhead;
            ASSERT_NEAR(lhs, rhs, 1e-12 * lhs) << backend_name(k);
        }
    }
}

TEST(Estimate, MonotoneInGatesAndShots) {
    const auto model = models::shaped();
    Rng rng(63);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(14);
        Circuit c = gen::random_clifford(n, rng.below(5 * n), rng);
        c.measure_all();
        const std::size_t shots = 1 + rng.below(1000);
        Circuit more = c;
        const std::size_t at = rng.below(more.ops.size() + 1);
        const Circuit g = gen::random_clifford(n, 1, rng);
        more.ops.insert(more.ops.begin() + std::ptrdiff_t(at), g.ops.front());
        for (auto k : {BackendKind::StateVector, BackendKind::Mps, BackendKind::Stabilizer}) {
            const double base = estimate(c, k, model, shots, 8);
            ASSERT_GE(estimate(more, k, model, shots, 8), base) << backend_name(k);
            ASSERT_GE(estimate(c, k, model, shots + 1 + rng.below(100), 8), base) << backend_name(k);
        }
    }
}

TEST(Select, StabilizerPresentIffClifford) {
    const auto model = models::shaped();
    Rng rng(64);
    for (int trial = 0; trial < 200; ++trial) {
        Circuit c = random_mixed(2 + rng.below(10), rng);
        c.measure_all();
        const auto report = select_backend(c, model, 100);
        EXPECT_EQ(report.estimates.count(BackendKind::Stabilizer) == 1, is_clifford(c));
    }
}

TEST(Select, ScaleInvariant) {
    const auto model = models::shaped();
    Rng rng(65);
    for (int trial = 0; trial < 200; ++trial) {
        Circuit c = random_mixed(2 + rng.below(20), rng);
        c.measure_all();
        const double factor = std::pow(10.0, rng.uniform() * 6 - 3);
        EXPECT_EQ(select_backend(c, model, 1000).chosen, select_backend(c, model.scaled(factor), 1000).chosen);
    }
}

TEST(Select, WideCliffordGoesToStabilizer) {
    Circuit c = gen::ghz(30);
    c.measure_all();
    const auto report = select_backend(c, models::shaped(), 1000);
    EXPECT_EQ(report.chosen, BackendKind::Stabilizer);
    EXPECT_EQ(report.estimates.count(BackendKind::StateVector), 0u);
}

TEST(Select, TiesPreferCheapMemory) {
    auto model = models::constant(1e-9);
    // No instructions: every estimate is the same shot overhead.
    const Circuit empty(2, 0);
    const auto report = select_backend(empty, model, 10);
    ASSERT_EQ(report.estimates.size(), 3u);
    EXPECT_EQ(report.chosen, BackendKind::Stabilizer);
    Circuit t(2, 0);
    t.t(0);
    EXPECT_EQ(select_backend(t, models::constant(1e-30), 10).chosen, BackendKind::Mps);
}

TEST(Select, NothingApplies) {
    Circuit c(80, 80);
    c.t(0);
    c.measure_all();
    EXPECT_THROW(select_backend(c, models::shaped(), 10), BackendError);
}

TEST(CalibrationModel, JsonRoundTrip) {
    const auto model = models::shaped();
    const auto path = std::filesystem::temp_directory_path() / "maestro_calib_roundtrip.json";
    model.save(path.string());
    const auto back = CalibrationModel::load(path.string());
    std::filesystem::remove(path);
    EXPECT_EQ(back.sv.curves, model.sv.curves);
    EXPECT_EQ(back.mps.surfaces, model.mps.surfaces);
    EXPECT_EQ(back.stab.curves, model.stab.curves);
    EXPECT_EQ(back.alpha, model.alpha);
    EXPECT_EQ(back.shots.at("mps").c2, model.shots.at("mps").c2);
    EXPECT_EQ(back.to_json(), model.to_json());
}

TEST(CalibrationModel, MissingFileAndBadContent) {
    EXPECT_THROW(CalibrationModel::load("/nonexistent/calib.json"), CalibrationError);
    EXPECT_THROW(CalibrationModel::from_json("{}"), CalibrationError);
    auto bad = models::shaped();
    bad.sv.curves["1q"][1] = -1;
    EXPECT_THROW(bad.validate(), CalibrationError);
    bad = models::shaped();
    bad.alpha = {2.0};
    EXPECT_THROW(bad.validate(), CalibrationError);
}

TEST(Calibration, QuickRunProducesUsableModel) {
    CalibrationConfig cfg;
    cfg.sv_n = {8, 10, 12, 14, 16};
    cfg.mps_n = {4, 8};
    cfg.mps_chi = {2, 4, 8};
    cfg.stab_n = {4, 16};
    cfg.repetitions = 3;
    const CalibrationModel model = calibrate(cfg, 1);
    EXPECT_NO_THROW(model.validate());
    EXPECT_EQ(model.alpha.front(), 1.0);

    // 14-qubit QFT on sv: predicted vs median of five measured runs.
    Circuit c = gen::qft(14);
    c.measure_all();
    std::vector<double> times;
    for (int rep = 0; rep < 5; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        sv::run(c, 1000, rep);
        times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(times.begin(), times.end());
    const double predicted = estimate(c, BackendKind::StateVector, model, 1000);
    EXPECT_NEAR(predicted, times[2], 0.5 * times[2]) << "predicted " << predicted << " measured " << times[2];
}
