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

#include "maestro/predictor.hpp"

// Calibration models with hand-set coefficients, so estimates can be checked
// by arithmetic.
namespace models {

inline maestro::CalibrationModel constant(double gamma, double c1 = 1e-3, double c2 = 1e-6) {
    maestro::CalibrationModel m;
    m.created = "synthetic";
    m.sv.grid_n = {2, 10, 20};
    for (const char *cls : {"1q", "2q", "measure", "sample"}) {
        m.sv.curves[cls] = std::vector<double>(3, gamma);
    }
    m.mps.grid_n = {4, 16, 64};
    m.mps.grid_chi = {2, 16, 256};
    for (const char *cls : {"1q", "2q", "measure"}) {
        m.mps.surfaces[cls] = std::vector<std::vector<double>>(3, std::vector<double>(3, gamma));
    }
    m.stab.grid_n = {4, 64, 1024};
    for (const char *cls : {"gate", "measure"}) {
        m.stab.curves[cls] = std::vector<double>(3, gamma);
    }
    for (const char *b : {"sv", "mps", "stab"}) {
        m.shots[b] = maestro::ShotFit{c1, c2};
    }
    m.alpha = {1.0};
    m.validate();
    return m;
}

// Coefficients that vary along the grids, loosely shaped like a real machine.
inline maestro::CalibrationModel shaped() {
    maestro::CalibrationModel m = constant(1e-9);
    m.sv.curves["1q"] = {4e-9, 1.5e-9, 1.2e-9};
    m.sv.curves["2q"] = {6e-9, 2e-9, 1.6e-9};
    m.sv.curves["measure"] = {2e-8, 4e-9, 3e-9};
    m.sv.curves["sample"] = {5e-8, 1e-8, 8e-9};
    m.mps.surfaces["1q"] = {{5e-8, 2e-9, 1e-10}, {6e-8, 2.5e-9, 1.2e-10}, {7e-8, 3e-9, 1.5e-10}};
    m.mps.surfaces["2q"] = {{2e-7, 5e-10, 2e-11}, {1e-7, 3e-10, 1e-11}, {8e-8, 2e-10, 1e-11}};
    m.mps.surfaces["measure"] = {{3e-7, 8e-10, 3e-11}, {2e-7, 5e-10, 2e-11}, {1e-7, 4e-10, 2e-11}};
    m.stab.curves["gate"] = {2e-8, 1e-9, 1e-10};
    m.stab.curves["measure"] = {5e-8, 3e-9, 5e-10};
    m.shots["sv"] = {2e-5, 4e-8};
    m.shots["mps"] = {3e-5, 6e-8};
    m.shots["stab"] = {1e-5, 5e-8};
    m.alpha = {1.0, 1.8, 3.2};
    m.validate();
    return m;
}

} // namespace models
