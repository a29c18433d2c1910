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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pqt/composite.hpp"
#include "pqt/hilbert.hpp"
#include "pqt/measurement.hpp"
#include "pqt/rng.hpp"
#include "pqt/tomography.hpp"

namespace pqt {

/// Exact resource accounting and outcomes of one protocol run.
struct ProtocolReport {
    std::string protocol;
    Mode mode = Mode::passive;
    /// Exact counts: "oracle_calls", "copies_consumed", "shots", ...
    std::map<std::string, std::uint64_t> resources;
    std::map<std::string, std::string> verdicts;
    std::map<std::string, double> fidelities;
    std::vector<std::string> log;
};

// ---------------------------------------------------------------------------
// Oracles

enum class Promise { none, constant, balanced };

[[nodiscard]] std::string_view to_string(Promise promise) noexcept;
[[nodiscard]] Promise parse_promise(std::string_view text);

struct OracleSpec {
    std::size_t n = 0;
    /// f(x) for x = 0 .. 2^n - 1, each 0 or 1.
    std::vector<int> truth_table;
    Promise promise = Promise::none;

    /// Table length 2^n, binary entries, promise consistent with the table.
    void validate() const;
};

/// Permutation `|x, y> -> |x, y xor f(x)>` on n + 1 qubits, the output
/// qubit last. `n <= 5`.
[[nodiscard]] UnitaryOperator oracle_unitary(const OracleSpec &spec);

struct FunctionRecoveryResult {
    ProtocolReport report;
    std::vector<int> recovered;
};

/**
 * Recovers the full truth table of `f`.
 *
 * Passive: one oracle call on the uniform superposition, then single-copy
 * tomography of the output (`shots` per Pauli observable) and a decode of
 * the diagonal: for each x exactly one of |x,0>, |x,1> must carry weight at
 * least 2^-n / 4, otherwise InsufficientShotsError.
 *
 * Quantum: fresh copy, one oracle call and a computational-basis
 * measurement per run, until every x has been seen. `shots` is unused.
 */
[[nodiscard]] FunctionRecoveryResult function_recovery(const OracleSpec &spec,
                                                       Mode mode,
                                                       std::size_t shots,
                                                       Rng rng);

/// Expected number of uniform draws to see all `n` outcomes, `n H_n`.
[[nodiscard]] double coupon_collector_expectation(std::size_t n);

struct DeutschJozsaResult {
    ProtocolReport report;
    Promise verdict;
};

/// Passive: verdict read off the recovered truth table. Quantum: phase
/// kickback circuit, all-zero first register means constant. One oracle
/// call either way.
[[nodiscard]] DeutschJozsaResult deutsch_jozsa_verdict(const OracleSpec &spec,
                                                       Mode mode,
                                                       std::size_t shots,
                                                       Rng rng);

// ---------------------------------------------------------------------------
// Cloning

struct CloneResult {
    PSystem clone;
    double fidelity;
    bool original_unchanged;
    ProtocolReport report;
};

/// Reconstructs `sys` from the single copy and prepares a fresh passive
/// system in the estimated state.
[[nodiscard]] CloneResult clone_via_reconstruction(PSystem &sys,
                                                   std::size_t shots);

struct NoCloningReport {
    double fidelity_psi;
    double fidelity_phi;
    /// |<psi|phi>|
    double overlap;
    /// | |<psi|phi>| - |<psi|phi>|^2 |, zero only for orthogonal or equal
    /// rays.
    double obstruction;
    bool both_cloned;
    /// False would mean a unitary cloned two non-orthogonal distinct states.
    bool consistent;
};

/// Checks how well `u` maps `psi (x) blank` to `psi (x) psi` and likewise for
/// `phi`, with `blank = |0>`.
[[nodiscard]] NoCloningReport no_cloning_check(const UnitaryOperator &u,
                                               const StateVector &psi,
                                               const StateVector &phi);

// ---------------------------------------------------------------------------
// Proper versus improper mixtures

struct MixtureComponent {
    StateVector state;
    double weight;
};

/// Either a classical ensemble of pure states, or a bipartite pure state
/// whose first factor is the system handed to the experimenter.
using MixturePresentation =
    std::variant<std::vector<MixtureComponent>, StateVector>;

enum class MixtureKind { proper, improper };

[[nodiscard]] std::string_view to_string(MixtureKind kind) noexcept;

struct ProperImproperResult {
    MixtureKind verdict;
    std::vector<double> purities;
    std::vector<MixtureKind> trial_verdicts;
    double mean_purity;
    /// Midpoint between 1 and Tr(rho_avg^2).
    double threshold;
    double average_state_purity;
    ProtocolReport report;
};

/**
 * Each trial takes one system (drawn from the ensemble, or the first factor
 * of a fresh purification) and reconstructs it from that single copy.
 * Proper mixtures yield pure estimates; improper ones yield the mixed
 * reduced state every time.
 */
[[nodiscard]] ProperImproperResult
proper_vs_improper(const MixturePresentation &presentation,
                   std::size_t trials, std::size_t shots, Rng rng);

[[nodiscard]] DensityOperator
average_state(const MixturePresentation &presentation);

// ---------------------------------------------------------------------------
// Simulating collapse with passive measurements

/// Prepared systems indexed by outcome of the observable they belong to.
using EigenstateLibrary = std::map<std::size_t, QuantumState>;

/// Eigenvector of every rank-one projector of `obs`.
[[nodiscard]] EigenstateLibrary eigenstate_library(const Observable &obs);

struct ReplacementStep {
    std::size_t outcome_index;
    double outcome;
    PSystem replacement;
};

/// Measures `obs` passively on `sys` and swaps in the library system for
/// the observed outcome.
[[nodiscard]] ReplacementStep
simulate_qt_with_pqt(PSystem &sys, const Observable &obs,
                     const EigenstateLibrary &library);

/**
 * Bipartite variant. The global state is reconstructed once from a single
 * passive copy with the global Pauli/Gell-Mann set; each step measures the
 * local setting passively and swaps in `(P_r (x) I)|Phi> / norm` computed
 * from the estimate.
 */
class BipartiteCollapseSimulator {
  public:
    BipartiteCollapseSimulator(PSystem &reference, LocalSetting setting,
                               std::size_t shots);

    [[nodiscard]] ReplacementStep step(PSystem &sys) const;

    [[nodiscard]] const StateVector &reconstructed() const noexcept {
        return reconstructed_;
    }
    [[nodiscard]] const std::optional<StateVector> &
    collapsed(std::size_t r) const {
        return collapsed_.at(r);
    }
    [[nodiscard]] const Observable &measured() const noexcept {
        return lifted_;
    }

  private:
    Observable lifted_;
    StateVector reconstructed_;
    std::vector<std::optional<StateVector>> collapsed_;
};

struct CollapseComparison {
    /// Rows: (first outcome, follow-up outcome).
    JointFrequencyTable simulated;
    JointFrequencyTable quantum;
    double tv;
    ProtocolReport report;
};

/// `shots` quantum runs (collapse, then `follow_up`) against `shots` passive
/// runs with replacement from the eigenstate library.
[[nodiscard]] CollapseComparison
compare_collapse_simulation(const QuantumState &state, const Observable &obs,
                            const Observable &follow_up, std::size_t shots,
                            Rng rng);

/// Bipartite version; `follow_up` acts on the full space.
[[nodiscard]] CollapseComparison compare_collapse_simulation_bipartite(
    const QuantumState &state, const LocalSetting &setting,
    const Observable &follow_up, std::size_t shots,
    std::size_t tomography_shots, Rng rng);

// ---------------------------------------------------------------------------
// Teleportation

struct TeleportationResult {
    /// Fidelity of Bob's simulated output with the input.
    double fidelity;
    /// Passive mode: Bob's reduced state can only change through his own
    /// correction, so it is the corrected half of Phi+. Quantum mode: equal
    /// to `fidelity`.
    double analytic_fidelity;
    /// Sampled Z outcomes of qubits 0 and 1 as bits.
    std::array<int, 2> bell_bits;
    ProtocolReport report;
};

/**
 * Standard three-qubit circuit: input (x) Phi+, CNOT(0->1), H(0), Z
 * measurements of qubits 0 and 1, correction Z^m0 X^m1 on qubit 2. Passive
 * measurements do not collapse, corrections still follow the sampled bits.
 */
[[nodiscard]] TeleportationResult teleportation_demo(const StateVector &input,
                                                     Mode mode, Rng rng);

// ---------------------------------------------------------------------------
// Repeatability

struct RepeatabilityResult {
    double agreement_rate;
    std::size_t agreements;
    std::size_t trials;
    /// 1 for quantum mode, sum_r p_r^2 for passive mode.
    double expected_rate;
    ProtocolReport report;
};

/// Each trial measures `obs` twice in a row. Quantum mode uses one fresh
/// copy per trial; passive mode reuses one system throughout.
[[nodiscard]] RepeatabilityResult
repeatability_experiment(const QuantumState &state, const Observable &obs,
                         Mode mode, std::size_t trials, Rng rng);

} // namespace pqt
