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

#include "pqt/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "pqt/errors.hpp"

namespace pqt {

namespace {

using Index = Eigen::Index;

std::size_t checked_qubits(const OracleSpec &spec) {
    spec.validate();
    if (spec.n > 5) {
        throw InvalidArgument("oracle size limit: n <= 5, got " +
                              std::to_string(spec.n));
    }
    return spec.n + 1;
}

StateVector uniform_input(std::size_t n) {
    const std::size_t inputs = std::size_t{1} << n;
    Vector v = Vector::Zero(static_cast<Index>(2 * inputs));
    const double amp = 1.0 / std::sqrt(static_cast<double>(inputs));
    for (std::size_t x = 0; x < inputs; ++x) {
        v(static_cast<Index>(2 * x)) = amp;
    }
    return StateVector::normalized(std::move(v), Shape(n + 1, 2));
}

Matrix hadamard_layer(std::size_t qubits, bool skip_last) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t q = 0; q < qubits; ++q) {
        const bool last = q + 1 == qubits;
        out = tensor(out, (skip_last && last) ? gates::identity(2)
                                              : gates::hadamard());
    }
    return out;
}

JointFrequencyTable outcome_table(const Observable &first,
                                  const Observable &second) {
    JointFrequencyTable t;
    for (double a : first.decomposition().eigenvalues) {
        for (double b : second.decomposition().eigenvalues) {
            t.rows.push_back({a, b, 0});
        }
    }
    return t;
}

StateVector reshape(const QuantumState &state, const Shape &shape) {
    const auto *psi = std::get_if<StateVector>(&state);
    if (psi == nullptr) {
        throw InvalidArgument("library entries must be pure states");
    }
    return StateVector(psi->amplitudes(), shape);
}

std::string format_bits(const std::vector<int> &bits) {
    std::string s;
    for (int b : bits) {
        s += static_cast<char>('0' + b);
    }
    return s;
}

StateVector top_eigenvector(const DensityOperator &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(rho.matrix()));
    const Index top = solver.eigenvalues().size() - 1;
    return StateVector::normalized(solver.eigenvectors().col(top),
                                   rho.shape());
}

} // namespace

// ---------------------------------------------------------------------------
// Oracles

std::string_view to_string(Promise promise) noexcept {
    switch (promise) {
    case Promise::constant:
        return "constant";
    case Promise::balanced:
        return "balanced";
    case Promise::none:
        break;
    }
    return "none";
}

Promise parse_promise(std::string_view text) {
    if (text == "none") {
        return Promise::none;
    }
    if (text == "constant") {
        return Promise::constant;
    }
    if (text == "balanced") {
        return Promise::balanced;
    }
    throw InvalidArgument("unknown promise '" + std::string(text) + "'");
}

void OracleSpec::validate() const {
    if (n < 1 || n > 16) {
        throw InvalidArgument("oracle input size must be at least 1");
    }
    if (truth_table.size() != (std::size_t{1} << n)) {
        throw InvalidArgument("truth table has " +
                              std::to_string(truth_table.size()) +
                              " entries, expected 2^" + std::to_string(n));
    }
    std::size_t ones = 0;
    for (int v : truth_table) {
        if (v != 0 && v != 1) {
            throw InvalidArgument("truth table entries must be 0 or 1");
        }
        ones += static_cast<std::size_t>(v);
    }
    if (promise == Promise::constant && ones != 0 &&
        ones != truth_table.size()) {
        throw InvalidArgument("function declared constant is not constant");
    }
    if (promise == Promise::balanced && 2 * ones != truth_table.size()) {
        throw InvalidArgument("function declared balanced is not balanced");
    }
}

UnitaryOperator oracle_unitary(const OracleSpec &spec) {
    const std::size_t qubits = checked_qubits(spec);
    const auto d = static_cast<Index>(std::size_t{1} << qubits);
    Matrix u = Matrix::Zero(d, d);
    for (Index x = 0; x < d / 2; ++x) {
        const int fx = spec.truth_table[static_cast<std::size_t>(x)];
        for (Index y = 0; y < 2; ++y) {
            u(2 * x + (y ^ fx), 2 * x + y) = 1.0;
        }
    }
    return UnitaryOperator(std::move(u));
}

double coupon_collector_expectation(std::size_t n) {
    double harmonic = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        harmonic += 1.0 / static_cast<double>(k);
    }
    return static_cast<double>(n) * harmonic;
}

FunctionRecoveryResult function_recovery(const OracleSpec &spec, Mode mode,
                                         std::size_t shots, Rng rng) {
    const std::size_t qubits = checked_qubits(spec);
    const UnitaryOperator uf = oracle_unitary(spec);
    const std::size_t inputs = std::size_t{1} << spec.n;
    const StateVector input = uniform_input(spec.n);

    FunctionRecoveryResult out{{"function-recovery", mode, {}, {}, {}, {}},
                               std::vector<int>(inputs, -1)};
    ProtocolReport &report = out.report;

    if (mode == Mode::passive) {
        PSystem sys(input, Mode::passive, rng.derive("system"));
        sys.evolve(uf);
        const ICSet ic = ICSet::pauli(qubits);
        auto rec = reconstruct_single_copy(sys, ic, shots);
        const double threshold = 0.25 / static_cast<double>(inputs);
        const Matrix &rho = rec.estimate.matrix();
        for (std::size_t x = 0; x < inputs; ++x) {
            const double w0 =
                rho(static_cast<Index>(2 * x), static_cast<Index>(2 * x))
                    .real();
            const double w1 = rho(static_cast<Index>(2 * x + 1),
                                  static_cast<Index>(2 * x + 1))
                                  .real();
            const bool zero = w0 >= threshold;
            const bool one = w1 >= threshold;
            if (zero == one) {
                throw InsufficientShotsError(
                    "insufficient shots: cannot decode f(" +
                    std::to_string(x) + ")");
            }
            out.recovered[x] = one ? 1 : 0;
        }
        const StateVector exact = evolve(input, uf);
        report.resources["oracle_calls"] = 1;
        report.resources["copies_consumed"] = 1;
        report.resources["shots"] = ic.size() * shots;
        report.fidelities["output_state"] = fidelity(exact, rec.estimate);
        report.log.push_back("one oracle call on the uniform superposition");
        report.log.push_back("single-copy tomography with " +
                             std::to_string(ic.size()) +
                             " Pauli observables");
    } else {
        Ensemble ensemble(input, Mode::quantum, rng.derive("copies"));
        const Observable basis =
            Observable::computational_basis(Shape(qubits, 2));
        std::size_t seen = 0;
        std::uint64_t calls = 0;
        while (seen < inputs) {
            PSystem copy = ensemble.fresh();
            copy.evolve(uf);
            ++calls;
            const std::size_t k = copy.measure_index(basis);
            const std::size_t x = k >> 1;
            if (out.recovered[x] < 0) {
                out.recovered[x] = static_cast<int>(k & 1U);
                ++seen;
            }
        }
        report.resources["oracle_calls"] = calls;
        report.resources["copies_consumed"] = ensemble.copies_consumed();
        report.resources["shots"] = calls;
        report.log.push_back("coupon collection over " +
                             std::to_string(inputs) + " inputs");
    }
    report.verdicts["truth_table"] = format_bits(out.recovered);
    report.verdicts["recovered_exactly"] =
        out.recovered == spec.truth_table ? "true" : "false";
    return out;
}

DeutschJozsaResult deutsch_jozsa_verdict(const OracleSpec &spec, Mode mode,
                                         std::size_t shots, Rng rng) {
    if (spec.promise == Promise::none) {
        throw PreconditionError("Deutsch-Jozsa needs a declared promise");
    }
    const std::size_t qubits = checked_qubits(spec);
    if (mode == Mode::passive) {
        auto fr = function_recovery(spec, Mode::passive, shots, rng);
        const bool constant =
            std::all_of(fr.recovered.begin(), fr.recovered.end(),
                        [&](int v) { return v == fr.recovered.front(); });
        DeutschJozsaResult out{std::move(fr.report),
                               constant ? Promise::constant
                                        : Promise::balanced};
        out.report.protocol = "deutsch-jozsa";
        out.report.verdicts["verdict"] = std::string(to_string(out.verdict));
        return out;
    }

    const UnitaryOperator uf = oracle_unitary(spec);
    const std::size_t inputs = std::size_t{1} << spec.n;
    Ensemble ensemble(StateVector::basis(1, Shape(qubits, 2)), Mode::quantum,
                      rng.derive("copies"));
    PSystem copy = ensemble.fresh();
    copy.evolve(UnitaryOperator(hadamard_layer(qubits, false)));
    copy.evolve(uf);
    copy.evolve(UnitaryOperator(hadamard_layer(qubits, true)));
    const Observable first_register = embed(
        Observable::computational_basis({inputs}), 0, Shape{inputs, 2});
    const double x = measure(copy, first_register);

    DeutschJozsaResult out{{"deutsch-jozsa", mode, {}, {}, {}, {}},
                           x == 0.0 ? Promise::constant : Promise::balanced};
    out.report.resources["oracle_calls"] = 1;
    out.report.resources["copies_consumed"] = ensemble.copies_consumed();
    out.report.resources["shots"] = 1;
    out.report.verdicts["verdict"] = std::string(to_string(out.verdict));
    out.report.log.push_back("phase kickback, first register read " +
                             std::to_string(static_cast<long>(x)));
    return out;
}

// ---------------------------------------------------------------------------
// Cloning

CloneResult clone_via_reconstruction(PSystem &sys, std::size_t shots) {
    const QuantumState before = sys.state();
    const ICSet ic = ICSet::for_shape(sys.shape());
    auto rec = reconstruct_single_copy(sys, ic, shots);
    const std::uint64_t clone_seed = sys.rng().next_u64();
    PSystem clone(rec.estimate, Mode::passive, Rng(clone_seed));
    const double fid = fidelity(before, clone.state());
    const bool unchanged = bit_identical(before, sys.state());

    ProtocolReport report{"clone", sys.mode(), {}, {}, {}, {}};
    report.resources["copies_consumed"] = 1;
    report.resources["shots"] = ic.size() * shots;
    report.fidelities["clone"] = fid;
    report.verdicts["original_unchanged"] = unchanged ? "true" : "false";
    return {std::move(clone), fid, unchanged, std::move(report)};
}

NoCloningReport no_cloning_check(const UnitaryOperator &u,
                                 const StateVector &psi,
                                 const StateVector &phi) {
    if (psi.dimension() != phi.dimension()) {
        throw InvalidArgument("test states differ in dimension");
    }
    const std::size_t d = psi.dimension();
    if (u.dimension() != d * d) {
        throw InvalidArgument("candidate must act on H (x) H");
    }
    const StateVector blank = StateVector::basis(0, {d});
    auto cloned_fidelity = [&](const StateVector &s) {
        return fidelity(evolve(tensor(s, blank), u), tensor(s, s));
    };
    NoCloningReport r{};
    r.fidelity_psi = cloned_fidelity(psi);
    r.fidelity_phi = cloned_fidelity(phi);
    r.overlap = std::abs(psi.amplitudes().dot(phi.amplitudes()));
    r.obstruction = std::abs(r.overlap - r.overlap * r.overlap);
    r.both_cloned = std::abs(1.0 - r.fidelity_psi) <= 1e-10 &&
                    std::abs(1.0 - r.fidelity_phi) <= 1e-10;
    r.consistent = !(r.both_cloned && r.obstruction > 1e-10);
    return r;
}

// ---------------------------------------------------------------------------
// Proper versus improper mixtures

std::string_view to_string(MixtureKind kind) noexcept {
    return kind == MixtureKind::proper ? "proper" : "improper";
}

DensityOperator average_state(const MixturePresentation &presentation) {
    if (const auto *mixture =
            std::get_if<std::vector<MixtureComponent>>(&presentation)) {
        if (mixture->empty()) {
            throw InvalidArgument("empty mixture");
        }
        const std::size_t d = mixture->front().state.dimension();
        Matrix rho = Matrix::Zero(static_cast<Index>(d), static_cast<Index>(d));
        double total = 0.0;
        for (const auto &c : *mixture) {
            if (c.state.dimension() != d || !(c.weight >= 0.0)) {
                throw InvalidArgument("mixture components must share a "
                                      "dimension and have weights >= 0");
            }
            rho += c.weight * c.state.projector();
            total += c.weight;
        }
        if (!(std::abs(total - 1.0) <= 1e-9)) {
            throw InvalidArgument("mixture weights must sum to 1");
        }
        rho = hermitian_part(rho);
        rho /= rho.trace().real();
        return DensityOperator(std::move(rho), mixture->front().state.shape());
    }
    return partial_trace(std::get<StateVector>(presentation), 0);
}

ProperImproperResult
proper_vs_improper(const MixturePresentation &presentation, std::size_t trials,
                   std::size_t shots, Rng rng) {
    if (trials == 0) {
        throw InvalidArgument("trials must be positive");
    }
    const DensityOperator avg = average_state(presentation);
    const double avg_purity = avg.purity();
    if (avg_purity >= 1.0 - 1e-9) {
        throw PreconditionError("average state is pure; proper and improper "
                                "presentations are indistinguishable");
    }
    const double threshold = 0.5 * (1.0 + avg_purity);
    const auto *mixture =
        std::get_if<std::vector<MixtureComponent>>(&presentation);

    ProperImproperResult out{MixtureKind::proper, {}, {}, 0.0, threshold,
                             avg_purity, {}};
    out.report = {"proper-vs-improper", Mode::passive, {}, {}, {}, {}};
    std::vector<double> weights;
    if (mixture != nullptr) {
        for (const auto &c : *mixture) {
            weights.push_back(c.weight);
        }
    }
    Rng draw = rng.derive("draw");
    std::uint64_t total_shots = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        double purity = 0.0;
        if (mixture != nullptr) {
            const auto &component = (*mixture)[sample_index(weights, draw)];
            PSystem sys(component.state, Mode::passive, rng.derive(t));
            const ICSet ic = ICSet::for_shape(component.state.shape());
            purity = reconstruct_single_copy(sys, ic, shots).estimate.purity();
            total_shots += ic.size() * shots;
        } else {
            const auto &joint = std::get<StateVector>(presentation);
            PSystem sys(joint, Mode::passive, rng.derive(t));
            const ICSet ic = ICSet::for_shape({joint.shape().at(0)})
                                 .embedded(0, joint.shape());
            purity = reconstruct_single_copy(sys, ic, shots).estimate.purity();
            total_shots += ic.size() * shots;
        }
        out.purities.push_back(purity);
        out.trial_verdicts.push_back(purity >= threshold ? MixtureKind::proper
                                                         : MixtureKind::improper);
    }
    out.mean_purity =
        std::accumulate(out.purities.begin(), out.purities.end(), 0.0) /
        static_cast<double>(trials);
    out.verdict = out.mean_purity >= threshold ? MixtureKind::proper
                                               : MixtureKind::improper;
    out.report.resources["copies_consumed"] = trials;
    out.report.resources["shots"] = total_shots;
    out.report.verdicts["verdict"] = std::string(to_string(out.verdict));
    return out;
}

// ---------------------------------------------------------------------------
// Collapse simulation

EigenstateLibrary eigenstate_library(const Observable &obs) {
    EigenstateLibrary library;
    for (std::size_t r = 0; r < obs.outcome_count(); ++r) {
        const Matrix &p = obs.projector(r);
        if (std::abs(p.trace().real() - 1.0) > 1e-9) {
            continue; // degenerate outcome: no unique eigenstate
        }
        Index best = 0;
        p.colwise().norm().maxCoeff(&best);
        library.emplace(r, StateVector::normalized(p.col(best)));
    }
    return library;
}

ReplacementStep simulate_qt_with_pqt(PSystem &sys, const Observable &obs,
                                     const EigenstateLibrary &library) {
    if (sys.mode() != Mode::passive) {
        throw PreconditionError("collapse simulation runs on passive systems");
    }
    const std::size_t r = sys.measure_index(obs);
    const auto it = library.find(r);
    if (it == library.end()) {
        throw PreconditionError("no prepared system for outcome " +
                                std::to_string(obs.eigenvalue(r)));
    }
    PSystem replacement(reshape(it->second, sys.shape()), Mode::passive,
                        Rng(sys.rng().next_u64()));
    return {r, obs.eigenvalue(r), std::move(replacement)};
}

BipartiteCollapseSimulator::BipartiteCollapseSimulator(PSystem &reference,
                                                       LocalSetting setting,
                                                       std::size_t shots)
    : lifted_(lift_local(setting, reference.shape())),
      reconstructed_([&] {
          if (reference.mode() != Mode::passive) {
              throw PreconditionError(
                  "collapse simulation runs on passive systems");
          }
          const ICSet ic = ICSet::for_shape(reference.shape());
          return top_eigenvector(
              reconstruct_single_copy(reference, ic, shots).estimate);
      }()) {
    for (std::size_t r = 0; r < lifted_.outcome_count(); ++r) {
        Vector v = lifted_.projector(r) * reconstructed_.amplitudes();
        if (v.squaredNorm() > kZeroProbability) {
            collapsed_.emplace_back(
                StateVector::normalized(std::move(v), reconstructed_.shape()));
        } else {
            collapsed_.emplace_back(std::nullopt);
        }
    }
}

ReplacementStep BipartiteCollapseSimulator::step(PSystem &sys) const {
    if (sys.mode() != Mode::passive) {
        throw PreconditionError("collapse simulation runs on passive systems");
    }
    const std::size_t r = sys.measure_index(lifted_);
    if (!collapsed_[r]) {
        throw Error("reconstruction failure: outcome " +
                    std::to_string(lifted_.eigenvalue(r)) +
                    " has no weight in the estimated state");
    }
    PSystem replacement(*collapsed_[r], Mode::passive,
                        Rng(sys.rng().next_u64()));
    return {r, lifted_.eigenvalue(r), std::move(replacement)};
}

namespace {

JointFrequencyTable quantum_followup(const QuantumState &state,
                                     const Observable &obs,
                                     const Observable &follow_up,
                                     std::size_t shots, Rng rng,
                                     std::uint64_t &copies) {
    Ensemble ensemble(state, Mode::quantum, std::move(rng));
    JointFrequencyTable table = outcome_table(obs, follow_up);
    const std::size_t nf = follow_up.outcome_count();
    for (std::size_t s = 0; s < shots; ++s) {
        PSystem copy = ensemble.fresh();
        const std::size_t r = copy.measure_index(obs);
        const std::size_t f = copy.measure_index(follow_up);
        ++table.rows[r * nf + f].count;
    }
    table.total = shots;
    copies = ensemble.copies_consumed();
    return table;
}

} // namespace

CollapseComparison compare_collapse_simulation(const QuantumState &state,
                                               const Observable &obs,
                                               const Observable &follow_up,
                                               std::size_t shots, Rng rng) {
    const EigenstateLibrary library = eigenstate_library(obs);
    std::uint64_t quantum_copies = 0;
    JointFrequencyTable quantum = quantum_followup(
        state, obs, follow_up, shots, rng.derive("quantum"), quantum_copies);

    Ensemble passive(state, Mode::passive, rng.derive("passive"));
    JointFrequencyTable simulated = outcome_table(obs, follow_up);
    const std::size_t nf = follow_up.outcome_count();
    for (std::size_t s = 0; s < shots; ++s) {
        PSystem sys = passive.fresh();
        ReplacementStep step = simulate_qt_with_pqt(sys, obs, library);
        const std::size_t f = step.replacement.measure_index(follow_up);
        ++simulated.rows[step.outcome_index * nf + f].count;
    }
    simulated.total = shots;

    const double tv = tv_distance(simulated, quantum);
    ProtocolReport report{"simulate-qt", Mode::passive, {}, {}, {}, {}};
    report.resources["quantum_copies"] = quantum_copies;
    report.resources["passive_copies"] = passive.copies_consumed();
    report.resources["library_systems"] = shots;
    report.resources["shots"] = shots;
    return {std::move(simulated), std::move(quantum), tv, std::move(report)};
}

CollapseComparison compare_collapse_simulation_bipartite(
    const QuantumState &state, const LocalSetting &setting,
    const Observable &follow_up, std::size_t shots,
    std::size_t tomography_shots, Rng rng) {
    PSystem reference(state, Mode::passive, rng.derive("reference"));
    const BipartiteCollapseSimulator simulator(reference, setting,
                                               tomography_shots);
    const Observable &obs = simulator.measured();

    std::uint64_t quantum_copies = 0;
    JointFrequencyTable quantum = quantum_followup(
        state, obs, follow_up, shots, rng.derive("quantum"), quantum_copies);

    Ensemble passive(state, Mode::passive, rng.derive("passive"));
    JointFrequencyTable simulated = outcome_table(obs, follow_up);
    const std::size_t nf = follow_up.outcome_count();
    for (std::size_t s = 0; s < shots; ++s) {
        PSystem sys = passive.fresh();
        ReplacementStep step = simulator.step(sys);
        const std::size_t f = step.replacement.measure_index(follow_up);
        ++simulated.rows[step.outcome_index * nf + f].count;
    }
    simulated.total = shots;

    const double tv = tv_distance(simulated, quantum);
    ProtocolReport report{"simulate-qt", Mode::passive, {}, {}, {}, {}};
    report.resources["quantum_copies"] = quantum_copies;
    report.resources["passive_copies"] = passive.copies_consumed();
    report.resources["tomography_shots"] =
        ICSet::for_shape(shape(state)).size() * tomography_shots;
    report.resources["shots"] = shots;
    report.fidelities["reconstruction"] =
        fidelity(to_density(state), DensityOperator::pure(
                                        simulator.reconstructed()));
    return {std::move(simulated), std::move(quantum), tv, std::move(report)};
}

// ---------------------------------------------------------------------------
// Teleportation

TeleportationResult teleportation_demo(const StateVector &input, Mode mode,
                                       Rng rng) {
    if (input.dimension() != 2) {
        throw InvalidArgument("teleportation input must be a qubit");
    }
    const StateVector qubit(input.amplitudes());
    const StateVector resource = states::bell(states::Bell::phi_plus);
    const StateVector joint = tensor(qubit, resource);
    const Shape &shape = joint.shape();

    PSystem sys(joint, mode, std::move(rng));
    sys.evolve(UnitaryOperator(tensor(gates::cnot(), gates::identity(2))));
    sys.evolve(UnitaryOperator(on_subsystem(gates::hadamard(), 0, shape)));

    const Observable z = Observable::pauli("Z");
    const auto bit = [](double eigenvalue) { return eigenvalue < 0 ? 1 : 0; };
    const int m0 = bit(measure(sys, embed(z, 0, shape)));
    const int m1 = bit(measure(sys, embed(z, 1, shape)));

    Matrix correction = gates::identity(2);
    if (m1 == 1) {
        correction = gates::pauli_x() * correction;
    }
    if (m0 == 1) {
        correction = gates::pauli_z() * correction;
    }
    const UnitaryOperator bob_correction(correction);
    sys.evolve(UnitaryOperator(on_subsystem(correction, 2, shape)));

    const DensityOperator bob = partial_trace(to_density(sys.state()), 2);
    TeleportationResult out{fidelity(qubit, bob), 0.0, {m0, m1}, {}};
    if (mode == Mode::quantum) {
        out.analytic_fidelity = out.fidelity;
    } else {
        // Nothing acting on qubits 0 and 1 changes Bob's reduced state, and
        // passive measurements change no state at all.
        const DensityOperator untouched =
            evolve(partial_trace(resource, 1), bob_correction);
        out.analytic_fidelity = fidelity(qubit, untouched);
    }
    out.report = {"teleportation", mode, {}, {}, {}, {}};
    out.report.resources["copies_consumed"] = 1;
    out.report.resources["shots"] = 2;
    out.report.fidelities["output"] = out.fidelity;
    out.report.fidelities["analytic"] = out.analytic_fidelity;
    std::ostringstream log;
    log << "Bell outcome bits (" << m0 << ", " << m1 << ")";
    out.report.log.push_back(log.str());
    return out;
}

// ---------------------------------------------------------------------------
// Repeatability

RepeatabilityResult repeatability_experiment(const QuantumState &state,
                                             const Observable &obs, Mode mode,
                                             std::size_t trials, Rng rng) {
    if (trials == 0) {
        throw InvalidArgument("trials must be positive");
    }
    std::size_t agreements = 0;
    std::uint64_t copies = 0;
    if (mode == Mode::quantum) {
        Ensemble ensemble(state, Mode::quantum, rng.derive("copies"));
        for (std::size_t t = 0; t < trials; ++t) {
            PSystem copy = ensemble.fresh();
            const std::size_t first = copy.measure_index(obs);
            const std::size_t second = copy.measure_index(obs);
            agreements += first == second ? 1 : 0;
        }
        copies = ensemble.copies_consumed();
    } else {
        PSystem sys(state, Mode::passive, rng.derive("system"));
        const auto outcomes = sys.measure_indices(obs, 2 * trials);
        for (std::size_t t = 0; t < trials; ++t) {
            agreements += outcomes[2 * t] == outcomes[2 * t + 1] ? 1 : 0;
        }
        copies = 1;
    }
    double expected = 1.0;
    if (mode == Mode::passive) {
        expected = 0.0;
        for (const auto &o : born_distribution(obs, state).outcomes) {
            expected += o.probability * o.probability;
        }
    }
    RepeatabilityResult out{static_cast<double>(agreements) /
                                static_cast<double>(trials),
                            agreements,
                            trials,
                            expected,
                            {"repeatability", mode, {}, {}, {}, {}}};
    out.report.resources["copies_consumed"] = copies;
    out.report.resources["shots"] = 2 * trials;
    return out;
}

} // namespace pqt
