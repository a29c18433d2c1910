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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pqt/hilbert.hpp"
#include "pqt/rng.hpp"

namespace pqt {

/// State-update rule applied after a measurement: Lüders collapse or the
/// passive no-update rule.
enum class Mode { quantum, passive };

[[nodiscard]] std::string_view to_string(Mode mode) noexcept;
/// Accepts "quantum" or "passive".
[[nodiscard]] Mode parse_mode(std::string_view text);

using QuantumState = std::variant<StateVector, DensityOperator>;

[[nodiscard]] std::size_t dimension(const QuantumState &state);
[[nodiscard]] const Shape &shape(const QuantumState &state);
[[nodiscard]] DensityOperator to_density(const QuantumState &state);
/// True when both hold the same alternative with identical bits.
[[nodiscard]] bool bit_identical(const QuantumState &a, const QuantumState &b);

/// Fidelity between states of either representation.
[[nodiscard]] double fidelity(const QuantumState &a, const QuantumState &b);

/// Probabilities at or below this are treated as impossible outcomes.
inline constexpr double kZeroProbability = 1e-12;

/**
 * A Hermitian matrix together with its spectral decomposition. Outcome
 * indices refer to the ascending list of distinct eigenvalues.
 */
class Observable {
  public:
    Observable(std::string name, Matrix matrix,
               double degeneracy_tol = tolerance::kDegeneracy);

    /// Uses a decomposition computed elsewhere (e.g. lifted from a
    /// subsystem); it must reconstruct `matrix` within 1e-9.
    Observable(std::string name, Matrix matrix,
               SpectralDecomposition decomposition);

    /// Pauli string such as "Z" or "ZX"; the name is the label.
    [[nodiscard]] static Observable pauli(std::string_view label);

    /// Diagonal observable whose eigenvalue on `|k>` is `k`.
    [[nodiscard]] static Observable computational_basis(const Shape &shape);

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] const SpectralDecomposition &decomposition() const noexcept {
        return decomposition_;
    }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(matrix_.rows());
    }
    [[nodiscard]] std::size_t outcome_count() const noexcept {
        return decomposition_.size();
    }
    [[nodiscard]] double eigenvalue(std::size_t r) const {
        return decomposition_.eigenvalues.at(r);
    }
    [[nodiscard]] const Matrix &projector(std::size_t r) const {
        return decomposition_.projectors.at(r);
    }
    /// Index of the eigenvalue closest to `value`; throws if none is within
    /// 1e-9.
    [[nodiscard]] std::size_t outcome_index(double value) const;

  private:
    std::string name_;
    Matrix matrix_;
    SpectralDecomposition decomposition_;
};

/// Observable acting on factor `index` of `shape`, identity elsewhere. Each
/// projector is lifted the same way, so the spectrum keeps its (now
/// degenerate) structure.
[[nodiscard]] Observable embed(const Observable &obs, std::size_t index,
                               const Shape &shape);

struct Outcome {
    double value;
    double probability;
};

/// Born-rule distribution over the distinct eigenvalues of an observable.
/// Negative rounding residue is clipped to zero and the list renormalised.
struct OutcomeDistribution {
    std::vector<Outcome> outcomes;

    [[nodiscard]] std::size_t size() const noexcept { return outcomes.size(); }
    [[nodiscard]] std::vector<double> probabilities() const;
};

[[nodiscard]] OutcomeDistribution born_distribution(const Observable &obs,
                                                    const StateVector &psi);
[[nodiscard]] OutcomeDistribution born_distribution(const Observable &obs,
                                                    const DensityOperator &rho);
[[nodiscard]] OutcomeDistribution born_distribution(const Observable &obs,
                                                    const QuantumState &state);

/// `Tr(P_k rho)` for an arbitrary family of projectors, clipped and
/// renormalised like `born_distribution`.
[[nodiscard]] std::vector<double>
projector_probabilities(std::span<const Matrix> projectors,
                        const QuantumState &state);

/// Inverse-CDF sampling with one uniform draw. Entries at or below
/// `kZeroProbability` are never returned.
[[nodiscard]] std::size_t sample_index(std::span<const double> probabilities,
                                       Rng &rng);

// Lüders update: psi -> P psi / |P psi|, rho -> P rho P / Tr(P rho P).
// Throws ZeroProbabilityError when the outcome weight is <= 1e-12.
[[nodiscard]] StateVector collapse_update(const StateVector &psi,
                                          const Observable &obs,
                                          std::size_t outcome_index);
[[nodiscard]] DensityOperator collapse_update(const DensityOperator &rho,
                                              const Observable &obs,
                                              std::size_t outcome_index);
[[nodiscard]] QuantumState collapse_update(const QuantumState &state,
                                           const Observable &obs,
                                           std::size_t outcome_index);

// Passive update: returns the input unchanged. The outcome must still be
// realisable, so a zero-weight outcome throws ZeroProbabilityError.
[[nodiscard]] StateVector passive_update(const StateVector &psi,
                                         const Observable &obs,
                                         std::size_t outcome_index);
[[nodiscard]] DensityOperator passive_update(const DensityOperator &rho,
                                             const Observable &obs,
                                             std::size_t outcome_index);
[[nodiscard]] QuantumState passive_update(const QuantumState &state,
                                          const Observable &obs,
                                          std::size_t outcome_index);

/**
 * A single physical system: its state, the update rule its measurements
 * follow, and a private random stream. Passive systems never modify their
 * state when measured.
 *
 * Single owner; move it between tasks but do not share it.
 */
class PSystem {
  public:
    PSystem(QuantumState state, Mode mode, Rng rng);
    PSystem(QuantumState state, Mode mode, std::uint64_t seed)
        : PSystem(std::move(state), mode, Rng(seed)) {}

    [[nodiscard]] const QuantumState &state() const noexcept { return state_; }
    [[nodiscard]] Mode mode() const noexcept { return mode_; }
    [[nodiscard]] Rng &rng() noexcept { return rng_; }
    [[nodiscard]] std::size_t dimension() const {
        return pqt::dimension(state_);
    }
    [[nodiscard]] const Shape &shape() const { return pqt::shape(state_); }
    [[nodiscard]] std::uint64_t measurement_count() const noexcept {
        return measurements_;
    }

    /// Unitary time evolution.
    void evolve(const UnitaryOperator &u);

    /// Samples an outcome index and applies the mode's update rule.
    std::size_t measure_index(const Observable &obs);

    /// `n` successive measurements. Equivalent to calling `measure_index`
    /// `n` times (same draws, same outcomes); passive systems evaluate the
    /// Born distribution once since their state cannot change.
    std::vector<std::size_t> measure_indices(const Observable &obs,
                                             std::size_t n);

  private:
    QuantumState state_;
    Mode mode_;
    Rng rng_;
    std::uint64_t measurements_ = 0;
};

/**
 * Source of identically prepared systems. Quantum-mode statistics are
 * gathered one fresh copy per shot; the ensemble counts the copies it hands
 * out. Copy `k` gets the stream `rng.derive(k)`.
 */
class Ensemble {
  public:
    Ensemble(QuantumState prototype, Mode mode, Rng rng)
        : prototype_(std::move(prototype)), mode_(mode), rng_(std::move(rng)) {}

    [[nodiscard]] PSystem fresh() {
        return PSystem(prototype_, mode_, rng_.derive(copies_++));
    }

    [[nodiscard]] const QuantumState &prototype() const noexcept {
        return prototype_;
    }
    [[nodiscard]] Mode mode() const noexcept { return mode_; }
    [[nodiscard]] std::uint64_t copies_consumed() const noexcept {
        return copies_;
    }

  private:
    QuantumState prototype_;
    Mode mode_;
    Rng rng_;
    std::uint64_t copies_ = 0;
};

struct MeasurementRecord {
    std::string observable;
    std::vector<double> outcomes;
    Mode mode = Mode::passive;

    [[nodiscard]] std::size_t shots() const noexcept {
        return outcomes.size();
    }
};

/// One measurement; returns the observed eigenvalue.
double measure(PSystem &sys, const Observable &obs);
double measure(PSystem &sys, const Observable &obs, MeasurementRecord &record);

/// `n` successive measurements of `obs` on the same system.
[[nodiscard]] MeasurementRecord repeated_measure(PSystem &sys,
                                                 const Observable &obs,
                                                 std::size_t n);

/// Unnormalised post-measurement operator of one instrument branch and its
/// trace, which equals the Born probability of the branch.
struct InstrumentBranch {
    Matrix unnormalized;
    double weight;
};

enum class Instrument { luders, passive };

/// `rho -> (P rho P, Tr[P rho P])`.
[[nodiscard]] InstrumentBranch luders_map(const DensityOperator &rho,
                                          const Matrix &projector);
/// `rho -> (Tr[P rho P] rho, Tr[P rho P])`; non-linear in rho.
[[nodiscard]] InstrumentBranch p_instrument_map(const DensityOperator &rho,
                                                const Matrix &projector);
[[nodiscard]] InstrumentBranch apply_instrument(Instrument kind,
                                                const DensityOperator &rho,
                                                const Matrix &projector);

/**
 * Frobenius distance between the branch map applied to the mixture
 * `lambda rho1 + (1 - lambda) rho2` and the same mixture of the branch maps.
 * Zero for the Lüders instrument; positive for the passive instrument
 * whenever the two branch weights differ.
 */
[[nodiscard]] double nonlinearity_witness(const DensityOperator &rho1,
                                          const DensityOperator &rho2,
                                          double lambda,
                                          const Matrix &projector,
                                          Instrument kind = Instrument::passive);

struct MeanVariance {
    double mean;
    double variance;
};

[[nodiscard]] MeanVariance expectation_variance(const Observable &obs,
                                                const QuantumState &state);

/// `|<[A, B]>| / 2`, the right-hand side of the Robertson relation.
[[nodiscard]] double robertson_bound(const Observable &a, const Observable &b,
                                     const QuantumState &state);

} // namespace pqt
