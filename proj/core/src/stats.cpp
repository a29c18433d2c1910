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

#include "pqt/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "pqt/errors.hpp"

namespace pqt::stats {

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw InvalidArgument("tv_distance: length mismatch (" +
                              std::to_string(p.size()) + " vs " +
                              std::to_string(q.size()) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p[i] - q[i]);
    }
    return 0.5 * sum;
}

ChiSquareResult chi_square_gof(std::span<const std::size_t> counts,
                               std::span<const double> expected) {
    if (counts.size() != expected.size()) {
        throw InvalidArgument("chi_square_gof: length mismatch");
    }
    std::size_t n = 0;
    for (std::size_t c : counts) {
        n += c;
    }
    if (n == 0) {
        throw InvalidArgument("chi_square_gof: no observations");
    }
    double statistic = 0.0;
    std::size_t categories = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double e = expected[i] * static_cast<double>(n);
        if (!(e > 0.0)) {
            if (counts[i] > 0) {
                return {std::numeric_limits<double>::infinity(),
                        counts.size() - 1, 0.0};
            }
            continue;
        }
        const double diff = static_cast<double>(counts[i]) - e;
        statistic += diff * diff / e;
        ++categories;
    }
    if (categories < 2) {
        return {statistic, 0, 1.0};
    }
    const std::size_t dof = categories - 1;
    const double p = boost::math::gamma_q(0.5 * static_cast<double>(dof),
                                          0.5 * statistic);
    return {statistic, dof, p};
}

Interval wilson_interval(std::size_t k, std::size_t n, double z) {
    if (n == 0) {
        throw InvalidArgument("wilson_interval: n must be positive");
    }
    if (k > n) {
        throw InvalidArgument("wilson_interval: k exceeds n");
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {centre - half, centre + half};
}

} // namespace pqt::stats
