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

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "pqt/hilbert.hpp"
#include "pqt/measurement.hpp"

namespace pqt {

enum class Side { A, B };

[[nodiscard]] std::string_view to_string(Side side) noexcept;

/// An observable on one factor of a bipartite system.
struct LocalSetting {
    Side side;
    Observable observable;
};

/// `A (x) I` or `I (x) B` with projectors `P_r (x) I` / `I (x) P_r`.
[[nodiscard]] Observable lift_local(const LocalSetting &setting,
                                    const Shape &shape);

struct JointRow {
    double a;
    double b;
    std::size_t count;
};

/// Counts for every (a, b) eigenvalue pair, `a` major, both ascending.
struct JointFrequencyTable {
    std::vector<JointRow> rows;
    std::size_t total = 0;

    [[nodiscard]] std::vector<double> frequencies() const;
    /// Relative frequency of (a, b); zero when the pair is absent.
    [[nodiscard]] double frequency(double a, double b) const;
};

/// Exact joint probabilities with the same row layout as the tables.
struct JointDistribution {
    std::vector<double> a_values;
    std::vector<double> b_values;
    /// Row-major, `a_values.size() x b_values.size()`.
    std::vector<double> probabilities;

    [[nodiscard]] double probability(std::size_t ia, std::size_t ib) const {
        return probabilities.at(ia * b_values.size() + ib);
    }
};

/// `Tr[(P_a (x) Q_b) rho]`: one global device measuring the product family.
[[nodiscard]] JointDistribution
global_joint_distribution(const QuantumState &state, const Observable &a,
                          const Observable &b);

/// Product of the two local marginals, computed from the reduced states.
/// This is the joint law of simultaneous local passive measurements, which
/// do not correlate the two sides.
[[nodiscard]] JointDistribution
local_passive_joint_distribution(const QuantumState &state,
                                 const Observable &a, const Observable &b);

/// Passive systems only; quantum mode throws ("ensemble required").
[[nodiscard]] JointFrequencyTable global_joint_sample(PSystem &sys,
                                                      const Observable &a,
                                                      const Observable &b,
                                                      std::size_t shots);

/// One fresh copy per shot (either mode).
[[nodiscard]] JointFrequencyTable global_joint_sample(Ensemble &ensemble,
                                                      const Observable &a,
                                                      const Observable &b,
                                                      std::size_t shots);

/// Per shot: `a` drawn from `A (x) I`, then `b` independently from
/// `I (x) B`, both on the unchanged state. Passive systems only.
[[nodiscard]] JointFrequencyTable
local_passive_joint_sample(PSystem &sys, const LocalSetting &a,
                           const LocalSetting &b, std::size_t shots);

[[nodiscard]] double tv_distance(const JointDistribution &p,
                                 const JointDistribution &q);
[[nodiscard]] double tv_distance(const JointFrequencyTable &p,
                                 const JointFrequencyTable &q);
[[nodiscard]] double tv_distance(const JointFrequencyTable &p,
                                 const JointDistribution &q);

/// `sum a b count / total`; outcomes must be +-1.
[[nodiscard]] double correlator(const JointFrequencyTable &table);
[[nodiscard]] double correlator(const JointDistribution &dist);

struct ChshSettings {
    Observable a1;
    Observable a2;
    Observable b1;
    Observable b2;

    /// A: Z, X. B: (Z + X)/sqrt2, (Z - X)/sqrt2. Reaches 2 sqrt2 on Phi+.
    [[nodiscard]] static ChshSettings optimal();
};

enum class ChshSource { global, local_passive };

[[nodiscard]] std::string_view to_string(ChshSource source) noexcept;
[[nodiscard]] ChshSource parse_chsh_source(std::string_view text);

struct ChshResult {
    double value;
    /// E(A1B1), E(A1B2), E(A2B1), E(A2B2).
    std::array<double, 4> correlators;
};

/// `S = E(A1B1) + E(A1B2) + E(A2B1) - E(A2B2)` with `shots` per pair.
[[nodiscard]] ChshResult chsh_value(PSystem &sys, const ChshSettings &settings,
                                    ChshSource source, std::size_t shots);
[[nodiscard]] ChshResult chsh_value_exact(const QuantumState &state,
                                          const ChshSettings &settings,
                                          ChshSource source);

enum class EntanglementVerdict { product, entangled, inconclusive };

[[nodiscard]] std::string_view to_string(EntanglementVerdict v) noexcept;

struct EntanglementReport {
    EntanglementVerdict verdict;
    DensityOperator reduced_estimate;
    double purity;
};

inline constexpr double kProductPurity = 0.95;
inline constexpr double kEntangledPurity = 0.90;

/**
 * Single-copy tomography of side A using local observables only. Purity of
 * the estimate >= 0.95 reads as product, <= 0.90 as entangled; anything in
 * between is reported as inconclusive.
 */
[[nodiscard]] EntanglementReport
detect_entanglement_single_copy(PSystem &sys, std::size_t shots);

enum class RemoteAction { none, passive_measure, quantum_nonselective };

[[nodiscard]] std::string_view to_string(RemoteAction action) noexcept;
[[nodiscard]] RemoteAction parse_remote_action(std::string_view text);

struct SignallingReport {
    OutcomeDistribution without_action;
    OutcomeDistribution with_action;
    double tv;
};

/**
 * B's outcome distribution for `b_obs` with and without A acting with
 * `a_obs` first, evaluated exactly (no sampling).
 */
[[nodiscard]] SignallingReport signalling_check(const QuantumState &state,
                                                RemoteAction action,
                                                const Observable &a_obs,
                                                const Observable &b_obs);

} // namespace pqt
