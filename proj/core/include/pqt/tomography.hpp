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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pqt/hilbert.hpp"
#include "pqt/measurement.hpp"

namespace pqt {

/**
 * Informationally complete observable set with its dual frame.
 *
 * For any state rho of the target space,
 *
 *     rho = dual_offset() + sum_k <A_k>_rho * dual(k)
 *
 * where `A_k = observable(k)`. Observables are built on demand so large sets
 * (4^6 - 1 Pauli strings) do not have to be held in memory at once.
 *
 * The observables may act on a larger space than the one being
 * reconstructed: `embedded()` lifts them onto one factor of a composite
 * system while keeping the dual frame on that factor.
 */
class ICSet {
  public:
    using ObservableFactory = std::function<Observable(std::size_t)>;
    using MatrixFactory = std::function<Matrix(std::size_t)>;

    ICSet(std::string family, std::size_t size, Shape target_shape,
          std::size_t observable_dimension, ObservableFactory observable,
          MatrixFactory dual, Matrix dual_offset);

    /// All 4^n - 1 non-identity Pauli strings, `1 <= n_qubits <= 6`.
    [[nodiscard]] static ICSet pauli(std::size_t n_qubits);

    /// Generalised Gell-Mann basis, orthonormal under Tr(AB), `2 <= d <= 64`.
    [[nodiscard]] static ICSet gell_mann(std::size_t dimension);

    /// Arbitrary observables that together with I span the Hermitian
    /// matrices; the dual frame comes from the inverse Gram matrix. Throws
    /// when the set is not informationally complete.
    [[nodiscard]] static ICSet
    from_observables(std::vector<Observable> observables);

    /// Pauli set for all-qubit shapes, Gell-Mann otherwise.
    [[nodiscard]] static ICSet for_shape(const Shape &shape);

    /// Same set with every observable acting on factor `index` of `shape`.
    [[nodiscard]] ICSet embedded(std::size_t index, const Shape &shape) const;

    [[nodiscard]] const std::string &family() const noexcept {
        return family_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] const Shape &target_shape() const noexcept {
        return target_shape_;
    }
    [[nodiscard]] std::size_t target_dimension() const {
        return shape_dimension(target_shape_);
    }
    [[nodiscard]] std::size_t observable_dimension() const noexcept {
        return observable_dimension_;
    }
    [[nodiscard]] Observable observable(std::size_t k) const;
    [[nodiscard]] Matrix dual(std::size_t k) const;
    [[nodiscard]] const Matrix &dual_offset() const noexcept {
        return dual_offset_;
    }

  private:
    std::string family_;
    std::size_t size_;
    Shape target_shape_;
    std::size_t observable_dimension_;
    ObservableFactory observable_;
    MatrixFactory dual_;
    Matrix dual_offset_;
};

/// Real Gram matrix `G_ij = Tr(M_i M_j)` of `{I, A_1, ..., A_m}`, computed
/// on the target space (the set must not be embedded).
[[nodiscard]] Eigen::MatrixXd gram_matrix(const ICSet &ic);

struct ExpectationEstimate {
    std::string observable;
    double mean;
    /// Three standard errors of the sample mean.
    double half_width;
    /// Empirical frequency of every eigenvalue, ascending.
    std::vector<Outcome> frequencies;
};

/**
 * Repeats each observable `shots` times on the same system and averages the
 * eigenvalues. Needs a passive system; the state is untouched.
 */
[[nodiscard]] std::vector<ExpectationEstimate>
estimate_expectations(PSystem &sys, const ICSet &ic, std::size_t shots);

/// Applies the dual frame. Unit trace by construction, not necessarily PSD.
[[nodiscard]] Matrix linear_inversion(std::span<const double> expectations,
                                      const ICSet &ic);
[[nodiscard]] Matrix
linear_inversion(std::span<const ExpectationEstimate> estimates,
                 const ICSet &ic);

/**
 * Closest density operator in Frobenius norm: eigendecompose, project the
 * eigenvalues onto the probability simplex, rebuild with the same
 * eigenvectors. Throws when the trace is off by more than 0.1.
 */
[[nodiscard]] DensityOperator project_to_physical(const Matrix &h,
                                                  Shape shape = {});

/// Euclidean projection of `values` onto `{x >= 0, sum x = 1}`.
[[nodiscard]] std::vector<double>
project_to_simplex(std::span<const double> values);

struct ReconstructionResult {
    DensityOperator estimate;
    Matrix raw_estimate;
    std::size_t shots_per_observable;
    std::vector<ExpectationEstimate> diagnostics;
};

[[nodiscard]] ReconstructionResult
reconstruct_single_copy(PSystem &sys, const ICSet &ic, std::size_t shots);

struct DiscriminationResult {
    std::size_t index;
    std::vector<double> fidelities;
    DensityOperator estimate;
};

/// Reconstructs the system and picks the candidate of highest fidelity.
/// Candidates must be pairwise ray-distinct; a tie within 1e-9 throws
/// InsufficientShotsError.
[[nodiscard]] DiscriminationResult
discriminate(PSystem &sys, std::span<const StateVector> candidates,
             const ICSet &ic, std::size_t shots);

/// Distinct eigenvalues observed in `shots` passive measurements, ascending.
[[nodiscard]] std::vector<double>
estimate_spectrum(PSystem &sys, const Observable &obs, std::size_t shots);

} // namespace pqt
