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

#include "maestro/random.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace maestro {

/// Outcome bitstring -> probability.
using Distribution = std::map<std::string, double>;

/// Walker/Vose alias table. Built in O(m); each sample costs one uniform draw
/// and one comparison, independent of m.
class AliasTable {
  public:
    /// Builds from nonnegative weights, normalizing by their sum.
    /// Throws std::invalid_argument on empty input, negative or non-finite
    /// weights, or a zero total.
    explicit AliasTable(std::span<const double> weights);

    std::size_t size() const noexcept { return prob_.size(); }

    std::size_t sample(Rng &rng) const {
        const double x = rng.uniform() * static_cast<double>(prob_.size());
        std::size_t i = static_cast<std::size_t>(x);
        if (i >= prob_.size()) {
            i = prob_.size() - 1;
        }
        return (x - static_cast<double>(i)) < prob_[i] ? i : alias_[i];
    }

    /// Outcome label of index i; only meaningful for tables built by build_alias.
    const std::string &label(std::size_t i) const { return labels_.at(i); }
    const std::string &sample_label(Rng &rng) const { return labels_.at(sample(rng)); }

    std::span<const double> probability_row() const noexcept { return prob_; }
    std::span<const std::size_t> alias_row() const noexcept { return alias_; }

    /// Probabilities implied by the (prob, alias) rows.
    std::vector<double> reconstruct() const;

  private:
    friend AliasTable build_alias(const Distribution &p);

    std::vector<double> prob_;
    std::vector<std::size_t> alias_;
    std::vector<std::string> labels_;
};

/// Alias table over the outcomes of a Distribution, in key order.
/// Throws std::invalid_argument when p is empty, has negative entries or does
/// not sum to 1 within 1e-9.
AliasTable build_alias(const Distribution &p);

} // namespace maestro
