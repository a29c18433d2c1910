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

#include "pqt/composite.hpp"

#include <cmath>
#include <string>

#include "pqt/errors.hpp"
#include "pqt/stats.hpp"
#include "pqt/tomography.hpp"

namespace pqt {

namespace {

constexpr std::size_t index_of(Side side) {
    return side == Side::A ? 0 : 1;
}

void require_bipartite(const Shape &shape) {
    if (shape.size() != 2) {
        throw InvalidArgument("expected a bipartite shape, got " +
                              std::to_string(shape.size()) + " factors");
    }
}

// Observable on the full space whose k-th projector is P_a (x) Q_b with
// k = ia * |B| + ib, eigenvalue k.
Observable joint_observable(const Observable &a, const Observable &b) {
    SpectralDecomposition joint;
    Matrix m = Matrix::Zero(
        static_cast<Eigen::Index>(a.dimension() * b.dimension()),
        static_cast<Eigen::Index>(a.dimension() * b.dimension()));
    double k = 0.0;
    for (const auto &p : a.decomposition().projectors) {
        for (const auto &q : b.decomposition().projectors) {
            Matrix pq = tensor(p, q);
            m += k * pq;
            joint.eigenvalues.push_back(k);
            joint.projectors.push_back(std::move(pq));
            k += 1.0;
        }
    }
    return Observable(a.name() + "," + b.name(), std::move(m),
                      std::move(joint));
}

JointFrequencyTable empty_table(const Observable &a, const Observable &b) {
    JointFrequencyTable table;
    for (double va : a.decomposition().eigenvalues) {
        for (double vb : b.decomposition().eigenvalues) {
            table.rows.push_back({va, vb, 0});
        }
    }
    return table;
}

void require_bipartite_dims(const QuantumState &state, const Observable &a,
                            const Observable &b) {
    const Shape &s = shape(state);
    require_bipartite(s);
    if (s[0] != a.dimension() || s[1] != b.dimension()) {
        throw InvalidArgument("local observables do not match the "
                              "subsystem dimensions");
    }
}

bool dichotomic(double v) {
    return std::abs(v - 1.0) <= 1e-9 || std::abs(v + 1.0) <= 1e-9;
}

std::vector<double> frequencies_of(const JointDistribution &d) {
    return d.probabilities;
}

} // namespace

std::string_view to_string(Side side) noexcept {
    return side == Side::A ? "A" : "B";
}

Observable lift_local(const LocalSetting &setting, const Shape &shape) {
    require_bipartite(shape);
    return embed(setting.observable, index_of(setting.side), shape);
}

// ---------------------------------------------------------------------------
// Tables

std::vector<double> JointFrequencyTable::frequencies() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) {
        out.push_back(total == 0 ? 0.0
                                 : static_cast<double>(r.count) /
                                       static_cast<double>(total));
    }
    return out;
}

double JointFrequencyTable::frequency(double a, double b) const {
    for (const auto &r : rows) {
        if (std::abs(r.a - a) <= 1e-9 && std::abs(r.b - b) <= 1e-9) {
            return total == 0 ? 0.0
                              : static_cast<double>(r.count) /
                                    static_cast<double>(total);
        }
    }
    return 0.0;
}

JointDistribution global_joint_distribution(const QuantumState &state,
                                            const Observable &a,
                                            const Observable &b) {
    require_bipartite_dims(state, a, b);
    const Observable joint = joint_observable(a, b);
    return {a.decomposition().eigenvalues, b.decomposition().eigenvalues,
            born_distribution(joint, state).probabilities()};
}

JointDistribution local_passive_joint_distribution(const QuantumState &state,
                                                   const Observable &a,
                                                   const Observable &b) {
    require_bipartite_dims(state, a, b);
    const DensityOperator rho = to_density(state);
    const auto pa = born_distribution(a, partial_trace(rho, 0));
    const auto pb = born_distribution(b, partial_trace(rho, 1));
    JointDistribution out{a.decomposition().eigenvalues,
                          b.decomposition().eigenvalues,
                          {}};
    out.probabilities.reserve(pa.size() * pb.size());
    for (const auto &oa : pa.outcomes) {
        for (const auto &ob : pb.outcomes) {
            out.probabilities.push_back(oa.probability * ob.probability);
        }
    }
    return out;
}

JointFrequencyTable global_joint_sample(PSystem &sys, const Observable &a,
                                        const Observable &b,
                                        std::size_t shots) {
    if (sys.mode() == Mode::quantum) {
        throw PreconditionError(
            "ensemble required in quantum mode: a single collapsing system "
            "cannot supply joint statistics");
    }
    require_bipartite_dims(sys.state(), a, b);
    const Observable joint = joint_observable(a, b);
    JointFrequencyTable table = empty_table(a, b);
    for (std::size_t k : sys.measure_indices(joint, shots)) {
        ++table.rows[k].count;
    }
    table.total = shots;
    return table;
}

JointFrequencyTable global_joint_sample(Ensemble &ensemble,
                                        const Observable &a,
                                        const Observable &b,
                                        std::size_t shots) {
    require_bipartite_dims(ensemble.prototype(), a, b);
    const Observable joint = joint_observable(a, b);
    JointFrequencyTable table = empty_table(a, b);
    for (std::size_t s = 0; s < shots; ++s) {
        PSystem copy = ensemble.fresh();
        ++table.rows[copy.measure_index(joint)].count;
    }
    table.total = shots;
    return table;
}

JointFrequencyTable local_passive_joint_sample(PSystem &sys,
                                               const LocalSetting &a,
                                               const LocalSetting &b,
                                               std::size_t shots) {
    if (sys.mode() != Mode::passive) {
        throw PreconditionError(
            "local passive sampling requires passive mode; local quantum "
            "measurements collapse the joint state");
    }
    if (a.side == b.side) {
        throw InvalidArgument("local settings must act on different sides");
    }
    const LocalSetting &on_a = a.side == Side::A ? a : b;
    const LocalSetting &on_b = a.side == Side::A ? b : a;
    require_bipartite_dims(sys.state(), on_a.observable, on_b.observable);
    const Observable lifted_a = lift_local(on_a, sys.shape());
    const Observable lifted_b = lift_local(on_b, sys.shape());
    JointFrequencyTable table =
        empty_table(on_a.observable, on_b.observable);
    const std::size_t nb = on_b.observable.outcome_count();
    for (std::size_t s = 0; s < shots; ++s) {
        const std::size_t ia = sys.measure_index(lifted_a);
        const std::size_t ib = sys.measure_index(lifted_b);
        ++table.rows[ia * nb + ib].count;
    }
    table.total = shots;
    return table;
}

double tv_distance(const JointDistribution &p, const JointDistribution &q) {
    return stats::tv_distance(p.probabilities, q.probabilities);
}

double tv_distance(const JointFrequencyTable &p,
                   const JointFrequencyTable &q) {
    return stats::tv_distance(p.frequencies(), q.frequencies());
}

double tv_distance(const JointFrequencyTable &p, const JointDistribution &q) {
    return stats::tv_distance(p.frequencies(), frequencies_of(q));
}

double correlator(const JointFrequencyTable &table) {
    if (table.total == 0) {
        throw InvalidArgument("correlator of an empty table");
    }
    double sum = 0.0;
    for (const auto &r : table.rows) {
        if (!dichotomic(r.a) || !dichotomic(r.b)) {
            throw InvalidArgument("correlator needs +-1 valued outcomes");
        }
        sum += r.a * r.b * static_cast<double>(r.count);
    }
    return sum / static_cast<double>(table.total);
}

double correlator(const JointDistribution &dist) {
    double sum = 0.0;
    for (std::size_t ia = 0; ia < dist.a_values.size(); ++ia) {
        for (std::size_t ib = 0; ib < dist.b_values.size(); ++ib) {
            const double a = dist.a_values[ia];
            const double b = dist.b_values[ib];
            if (!dichotomic(a) || !dichotomic(b)) {
                throw InvalidArgument("correlator needs +-1 valued outcomes");
            }
            sum += a * b * dist.probability(ia, ib);
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// CHSH

ChshSettings ChshSettings::optimal() {
    const Matrix z = gates::pauli_z();
    const Matrix x = gates::pauli_x();
    return {Observable::pauli("Z"), Observable::pauli("X"),
            Observable("(Z+X)/sqrt2", (z + x) * M_SQRT1_2),
            Observable("(Z-X)/sqrt2", (z - x) * M_SQRT1_2)};
}

std::string_view to_string(ChshSource source) noexcept {
    return source == ChshSource::global ? "global" : "local-passive";
}

ChshSource parse_chsh_source(std::string_view text) {
    if (text == "global") {
        return ChshSource::global;
    }
    if (text == "local-passive") {
        return ChshSource::local_passive;
    }
    throw InvalidArgument("unknown CHSH source '" + std::string(text) +
                          "' (expected global|local-passive)");
}

namespace {

ChshResult combine(const std::array<double, 4> &e) {
    return {e[0] + e[1] + e[2] - e[3], e};
}

} // namespace

ChshResult chsh_value(PSystem &sys, const ChshSettings &settings,
                      ChshSource source, std::size_t shots) {
    const std::array<std::pair<const Observable *, const Observable *>, 4>
        pairs{{{&settings.a1, &settings.b1},
               {&settings.a1, &settings.b2},
               {&settings.a2, &settings.b1},
               {&settings.a2, &settings.b2}}};
    std::array<double, 4> e{};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto &[a, b] = pairs[i];
        const JointFrequencyTable table =
            source == ChshSource::global
                ? global_joint_sample(sys, *a, *b, shots)
                : local_passive_joint_sample(sys, {Side::A, *a},
                                             {Side::B, *b}, shots);
        e[i] = correlator(table);
    }
    return combine(e);
}

ChshResult chsh_value_exact(const QuantumState &state,
                            const ChshSettings &settings, ChshSource source) {
    auto dist = [&](const Observable &a, const Observable &b) {
        return source == ChshSource::global
                   ? global_joint_distribution(state, a, b)
                   : local_passive_joint_distribution(state, a, b);
    };
    return combine({correlator(dist(settings.a1, settings.b1)),
                    correlator(dist(settings.a1, settings.b2)),
                    correlator(dist(settings.a2, settings.b1)),
                    correlator(dist(settings.a2, settings.b2))});
}

// ---------------------------------------------------------------------------
// Entanglement detection

std::string_view to_string(EntanglementVerdict v) noexcept {
    switch (v) {
    case EntanglementVerdict::product:
        return "product";
    case EntanglementVerdict::entangled:
        return "entangled";
    case EntanglementVerdict::inconclusive:
        break;
    }
    return "inconclusive";
}

EntanglementReport detect_entanglement_single_copy(PSystem &sys,
                                                   std::size_t shots) {
    if (sys.mode() != Mode::passive) {
        throw PreconditionError(
            "single-copy estimation requires passive mode");
    }
    const Shape shape = sys.shape();
    require_bipartite(shape);
    const ICSet local = ICSet::for_shape({shape[0]}).embedded(0, shape);
    auto rec = reconstruct_single_copy(sys, local, shots);
    const double purity = rec.estimate.purity();
    EntanglementVerdict verdict = EntanglementVerdict::inconclusive;
    if (purity >= kProductPurity) {
        verdict = EntanglementVerdict::product;
    } else if (purity <= kEntangledPurity) {
        verdict = EntanglementVerdict::entangled;
    }
    return {verdict, std::move(rec.estimate), purity};
}

// ---------------------------------------------------------------------------
// Signalling

std::string_view to_string(RemoteAction action) noexcept {
    switch (action) {
    case RemoteAction::none:
        return "none";
    case RemoteAction::passive_measure:
        return "passive-measure";
    case RemoteAction::quantum_nonselective:
        break;
    }
    return "quantum-measure-nonselective";
}

RemoteAction parse_remote_action(std::string_view text) {
    if (text == "none") {
        return RemoteAction::none;
    }
    if (text == "passive-measure") {
        return RemoteAction::passive_measure;
    }
    if (text == "quantum-measure-nonselective") {
        return RemoteAction::quantum_nonselective;
    }
    throw InvalidArgument("unknown remote action '" + std::string(text) +
                          "'");
}

SignallingReport signalling_check(const QuantumState &state,
                                  RemoteAction action,
                                  const Observable &a_obs,
                                  const Observable &b_obs) {
    require_bipartite_dims(state, a_obs, b_obs);
    const Shape &s = shape(state);
    const Observable lifted_b = embed(b_obs, 1, s);
    auto without = born_distribution(lifted_b, state);

    OutcomeDistribution with;
    switch (action) {
    case RemoteAction::none:
    case RemoteAction::passive_measure:
        // A passive measurement leaves the joint state as it was, whatever
        // the outcome, so B's distribution is evaluated on the same state.
        with = born_distribution(lifted_b, state);
        break;
    case RemoteAction::quantum_nonselective: {
        const DensityOperator rho = to_density(state);
        const Observable lifted_a = embed(a_obs, 0, s);
        Matrix averaged = Matrix::Zero(rho.matrix().rows(),
                                       rho.matrix().cols());
        for (std::size_t r = 0; r < lifted_a.outcome_count(); ++r) {
            averaged += luders_map(rho, lifted_a.projector(r)).unnormalized;
        }
        averaged = hermitian_part(averaged);
        averaged /= averaged.trace().real();
        with = born_distribution(lifted_b, DensityOperator(averaged, s));
        break;
    }
    }
    const double tv =
        stats::tv_distance(without.probabilities(), with.probabilities());
    return {std::move(without), std::move(with), tv};
}

} // namespace pqt
