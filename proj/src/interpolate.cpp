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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maestro {

namespace {

double sign(double v) { return (v > 0) - (v < 0); }

// Three-point end slope, limited so the interpolant stays monotone.
double end_slope(double h0, double h1, double d0, double d1) {
    double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign(d) != sign(d0)) {
        d = 0.0;
    } else if (sign(d0) != sign(d1) && std::abs(d) > 3 * std::abs(d0)) {
        d = 3 * d0;
    }
    return d;
}

} // namespace

double interpolate_1d(std::span<const double> xs, std::span<const double> ys, double x) {
    if (xs.empty() || xs.size() != ys.size()) {
        throw std::invalid_argument("interpolate_1d: grid and values must be nonempty and equally long");
    }
    const std::size_t m = xs.size();
    if (m == 1 || x <= xs.front()) {
        return ys.front();
    }
    if (x >= xs.back()) {
        return ys.back();
    }
    const std::size_t k =
        static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
    if (x == xs[k]) {
        return ys[k];
    }

    auto h = [&](std::size_t i) { return xs[i + 1] - xs[i]; };
    auto delta = [&](std::size_t i) { return (ys[i + 1] - ys[i]) / h(i); };
    auto slope = [&](std::size_t i) {
        if (m == 2) {
            return delta(0);
        }
        if (i == 0) {
            return end_slope(h(0), h(1), delta(0), delta(1));
        }
        if (i == m - 1) {
            return end_slope(h(m - 2), h(m - 3), delta(m - 2), delta(m - 3));
        }
        const double a = delta(i - 1), b = delta(i);
        if (a * b <= 0.0) {
            return 0.0;
        }
        const double w1 = 2 * h(i) + h(i - 1);
        const double w2 = h(i) + 2 * h(i - 1);
        return (w1 + w2) / (w1 / a + w2 / b);
    };

    const double hk = h(k);
    const double t = (x - xs[k]) / hk;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * ys[k] + h10 * hk * slope(k) + h01 * ys[k + 1] + h11 * hk * slope(k + 1);
}

double interpolate_2d(std::span<const double> grid_n, std::span<const double> grid_chi,
                      const std::vector<std::vector<double>> &surface, double n, double chi) {
    if (surface.size() != grid_n.size()) {
        throw std::invalid_argument("interpolate_2d: surface rows do not match the n grid");
    }
    std::vector<double> along_chi;
    along_chi.reserve(surface.size());
    for (const auto &row : surface) {
        along_chi.push_back(interpolate_1d(grid_chi, row, chi));
    }
    return interpolate_1d(grid_n, along_chi, n);
}

ShotFit fit_shots(std::span<const double> shots, std::span<const double> seconds) {
    if (shots.size() != seconds.size() || shots.size() < 2) {
        throw std::invalid_argument("fit_shots: need at least two (shots, seconds) pairs");
    }
    const double m = static_cast<double>(shots.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < shots.size(); ++i) {
        mx += shots[i];
        my += seconds[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < shots.size(); ++i) {
        sxx += (shots[i] - mx) * (shots[i] - mx);
        sxy += (shots[i] - mx) * (seconds[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_shots: shot counts must not all be equal");
    }
    ShotFit fit;
    fit.c2 = sxy / sxx;
    fit.c1 = my - fit.c2 * mx;
    return fit;
}

} // namespace maestro
