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

#include <cmath>
#include <stdexcept>

namespace maestro {

AliasTable::AliasTable(std::span<const double> weights) {
    const std::size_t m = weights.size();
    if (m == 0) {
        throw std::invalid_argument("alias table needs at least one outcome");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("alias table weights must be finite and nonnegative");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("alias table weights sum to zero");
    }

    prob_.assign(m, 1.0);
    alias_.resize(m);
    std::vector<double> scaled(m);
    std::vector<std::size_t> small, large;
    small.reserve(m);
    large.reserve(m);
    const double scale = static_cast<double>(m) / total;
    for (std::size_t i = 0; i < m; ++i) {
        alias_[i] = i;
        scaled[i] = weights[i] * scale;
        (scaled[i] <= 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        small.pop_back();
        const std::size_t l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] <= 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding.
    for (auto i : small) {
        prob_[i] = 1.0;
    }
    for (auto i : large) {
        prob_[i] = 1.0;
    }
}

std::vector<double> AliasTable::reconstruct() const {
    const std::size_t m = prob_.size();
    std::vector<double> p(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        p[i] += prob_[i];
        p[alias_[i]] += 1.0 - prob_[i];
    }
    for (auto &v : p) {
        v /= static_cast<double>(m);
    }
    return p;
}

AliasTable build_alias(const Distribution &p) {
    if (p.empty()) {
        throw std::invalid_argument("empty distribution");
    }
    std::vector<double> weights;
    std::vector<std::string> labels;
    weights.reserve(p.size());
    labels.reserve(p.size());
    double total = 0.0;
    for (const auto &[k, v] : p) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("negative probability for outcome '" + k + "'");
        }
        weights.push_back(v);
        labels.push_back(k);
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("distribution is not normalized (sum = " + std::to_string(total) + ")");
    }
    AliasTable table(weights);
    table.labels_ = std::move(labels);
    return table;
}

} // namespace maestro
