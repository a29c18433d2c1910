// Copyright 2026 The pqt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>

namespace pqt::stats {

/// `1/2 sum |p_i - q_i|`. Throws on length mismatch.
[[nodiscard]] double tv_distance(std::span<const double> p,
                                 std::span<const double> q);

struct ChiSquareResult {
    double statistic;
    std::size_t degrees_of_freedom;
    double p_value;
};

/**
 * Pearson goodness-of-fit of observed `counts` against `expected`
 * probabilities. Categories with zero expected probability are skipped
 * (a nonzero count there gives an infinite statistic and p = 0).
 */
[[nodiscard]] ChiSquareResult
chi_square_gof(std::span<const std::size_t> counts,
               std::span<const double> expected);

struct Interval {
    double lo;
    double hi;
};

/// Wilson score interval for `k` successes in `n` trials.
[[nodiscard]] Interval wilson_interval(std::size_t k, std::size_t n,
                                       double z = 1.96);

} // namespace pqt::stats
