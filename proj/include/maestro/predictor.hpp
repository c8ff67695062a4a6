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
#include "maestro/features.hpp"
#include "maestro/run_result.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maestro {

/// Monotone piecewise cubic Hermite interpolation (Fritsch-Carlson slopes).
/// xs must be strictly increasing and the same length as ys. Queries outside
/// [xs.front(), xs.back()] return the nearest endpoint value.
double interpolate_1d(std::span<const double> xs, std::span<const double> ys, double x);

/// Tensor-product interpolate_1d: along chi within each row, then along n.
/// surface[i][j] is the value at (grid_n[i], grid_chi[j]).
double interpolate_2d(std::span<const double> grid_n, std::span<const double> grid_chi,
                      const std::vector<std::vector<double>> &surface, double n, double chi);

/// T(S) = c1 + c2 S.
struct ShotFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double operator()(double shots) const { return c1 + c2 * shots; }
};

/// Ordinary least squares over (shots, seconds) pairs; needs two distinct shot counts.
ShotFit fit_shots(std::span<const double> shots, std::span<const double> seconds);

/// Hardware-measured cost coefficients.
///
/// sv curves: "1q", "2q", "measure" (per replayed measure/reset, including the
/// state copy), "sample" (probabilities plus alias build); all against 2^n.
/// mps surfaces: "1q" against chi^2, "2q" and "measure" against n chi^3.
/// stab curves: "gate" and "measure", both against n^2.
struct CalibrationModel {
    int version = 1;
    std::string created;

    struct Sv {
        std::vector<double> grid_n;
        std::map<std::string, std::vector<double>> curves;
        std::size_t parallel_threshold = 64;
    } sv;
    struct Mps {
        std::vector<double> grid_n;
        std::vector<double> grid_chi;
        std::map<std::string, std::vector<std::vector<double>>> surfaces;
    } mps;
    struct Stab {
        std::vector<double> grid_n;
        std::map<std::string, std::vector<double>> curves;
    } stab;
    /// Keyed by backend short name.
    std::map<std::string, ShotFit> shots;
    /// alpha[i] is the speedup with 2^i threads; alpha[0] == 1.
    std::vector<double> alpha{1.0};

    double sv_coefficient(const std::string &cls, double n) const;
    double mps_coefficient(const std::string &cls, double n, double chi) const;
    double stab_coefficient(const std::string &cls, double n) const;
    const ShotFit &shot_fit(BackendKind backend) const;
    /// alpha at the largest calibrated power of two not above `threads`.
    double alpha_at(std::size_t threads) const;
    double max_chi() const { return mps.grid_chi.empty() ? 1.0 : mps.grid_chi.back(); }

    /// Every coefficient multiplied by `factor` (alpha untouched).
    CalibrationModel scaled(double factor) const;

    /// Throws CalibrationError on missing classes, non-positive coefficients or
    /// grids that are not strictly increasing.
    void validate() const;

    std::string to_json() const;
    static CalibrationModel from_json(const std::string &text);
    void save(const std::string &path) const;
    /// Throws CalibrationError when the file is missing or malformed.
    static CalibrationModel load(const std::string &path);
};

struct CalibrationConfig {
    std::vector<double> sv_n{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::vector<double> mps_n{4, 8, 12, 16, 20, 24};
    std::vector<double> mps_chi{2, 4, 8, 16, 32, 64};
    std::vector<double> stab_n{4, 8, 16, 32, 64, 128};
    std::size_t repetitions = 5;
    std::vector<double> shot_counts{1, 10, 100, 1000};
    /// Largest thread count for alpha; 0 = hardware concurrency.
    std::size_t max_threads = 0;
    /// A timed sample shorter than this is repeated with more operations.
    double min_seconds = 2e-4;
};

CalibrationModel calibrate(const CalibrationConfig &config, std::uint64_t seed);

struct EstimateOptions {
    /// Logical shot streams; only the sv replay term is divided by alpha.
    std::size_t workers = 8;
    /// Threads available to those streams; 0 = hardware concurrency.
    std::size_t max_threads = 0;
};

/// min(max calibrated chi, 2^min(entanglement_proxy, n/2)).
std::size_t default_chi(const CircuitFeatures &features, const CalibrationModel &model);

/// Predicted seconds for one run. Throws BackendError when the backend cannot
/// run c (stabilizer on a non-Clifford circuit, p-block).
double estimate(const Circuit &c, BackendKind backend, const CalibrationModel &model, std::size_t shots,
                std::optional<std::size_t> chi = std::nullopt, const EstimateOptions &opt = {});

struct PredictionReport {
    /// Only backends applicable to the circuit appear.
    std::map<BackendKind, double> estimates;
    BackendKind chosen = BackendKind::StateVector;
    /// Bond dimension used for the mps estimate.
    std::size_t chi = 0;
    CircuitFeatures features;

    std::string to_json() const;
};

struct SelectOptions {
    std::size_t sv_max_qubits = 26;
    std::size_t mps_max_qubits = 64;
    EstimateOptions estimate;
};

/// Estimates every applicable backend and picks the cheapest; exact ties go to
/// stab, then mps, then sv. Throws BackendError when nothing applies.
PredictionReport select_backend(const Circuit &c, const CalibrationModel &model, std::size_t shots,
                                const SelectOptions &opt = {});

} // namespace maestro
