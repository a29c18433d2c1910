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

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pqt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dimensions of the tensor factors of a Hilbert space, outermost first.
/// The total dimension is the product of the entries.
using Shape = std::vector<std::size_t>;

namespace tolerance {
inline constexpr double kStateNorm = 1e-12;
inline constexpr double kRayEqual = 1e-10;
inline constexpr double kDensityHermitian = 1e-12;
inline constexpr double kDensityTrace = 1e-12;
inline constexpr double kDensityEigenvalueFloor = -1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kSpectralHermitian = 1e-10;
inline constexpr double kDegeneracy = 1e-9;
} // namespace tolerance

[[nodiscard]] std::size_t shape_dimension(const Shape &shape);

/// Largest entrywise modulus of `m - m^dagger`.
[[nodiscard]] double hermiticity_defect(const Matrix &m);

/// Returns `(m + m^dagger) / 2`.
[[nodiscard]] Matrix hermitian_part(const Matrix &m);

/**
 * A unit vector of a finite-dimensional Hilbert space, standing for the ray
 * it spans. Global phase is not observable; compare with `ray_equal`.
 */
class StateVector {
  public:
    /// Validates that the squared norm is 1 within 1e-12 and that `shape`
    /// multiplies out to the amplitude count. An empty shape means `{d}`.
    StateVector(Vector amplitudes, Shape shape = {});

    /// Rescales `amplitudes` to unit norm. Throws on a zero vector.
    [[nodiscard]] static StateVector normalized(Vector amplitudes,
                                                Shape shape = {});

    /// Computational basis vector `|index>`.
    [[nodiscard]] static StateVector basis(std::size_t index, Shape shape);

    [[nodiscard]] const Vector &amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] const Shape &shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amplitudes_(static_cast<Eigen::Index>(i));
    }

    /// `|psi><psi|`.
    [[nodiscard]] Matrix projector() const;

  private:
    Vector amplitudes_;
    Shape shape_;
};

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityOperator {
  public:
    /// Validates Hermiticity (1e-12), unit trace (1e-12) and a spectrum
    /// bounded below by -1e-10.
    DensityOperator(Matrix matrix, Shape shape = {});

    [[nodiscard]] static DensityOperator pure(const StateVector &psi);
    [[nodiscard]] static DensityOperator maximally_mixed(Shape shape);

    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] const Shape &shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(matrix_.rows());
    }

    /// `Tr(rho^2)`.
    [[nodiscard]] double purity() const;

  private:
    Matrix matrix_;
    Shape shape_;
};

class UnitaryOperator {
  public:
    /// Validates `U^dagger U = I` entrywise within 1e-10.
    explicit UnitaryOperator(Matrix matrix);

    [[nodiscard]] static UnitaryOperator identity(std::size_t dimension);

    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(matrix_.rows());
    }
    [[nodiscard]] UnitaryOperator adjoint() const;

  private:
    Matrix matrix_;
};

/**
 * Decomposition `H = sum_r a_r P_r` over the distinct eigenvalues of a
 * Hermitian matrix, sorted ascending. Near-degenerate eigenvalues are merged
 * into one entry whose projector has the combined rank.
 */
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Matrix> projectors;

    [[nodiscard]] std::size_t size() const noexcept {
        return eigenvalues.size();
    }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return projectors.empty()
                   ? 0
                   : static_cast<std::size_t>(projectors.front().rows());
    }
    [[nodiscard]] Matrix reconstruct() const;
};

// Kronecker products. The result shape concatenates the operand shapes.
[[nodiscard]] Matrix tensor(const Matrix &a, const Matrix &b);
[[nodiscard]] StateVector tensor(const StateVector &a, const StateVector &b);
[[nodiscard]] DensityOperator tensor(const DensityOperator &a,
                                     const DensityOperator &b);
[[nodiscard]] UnitaryOperator tensor(const UnitaryOperator &a,
                                     const UnitaryOperator &b);

/// Throws `InvalidArgument` when `h` is not Hermitian within 1e-10.
[[nodiscard]] SpectralDecomposition
spectral_decompose(const Matrix &h,
                   double degeneracy_tol = tolerance::kDegeneracy);

/**
 * Reduced state of subsystem `keep`, tracing out every other factor of the
 * shape. The shape must have at least two factors. The result is
 * renormalised by its trace so rounding in the contraction does not leak
 * into the reduced state.
 */
[[nodiscard]] DensityOperator partial_trace(const DensityOperator &rho,
                                            std::size_t keep);
[[nodiscard]] DensityOperator partial_trace(const StateVector &psi,
                                            std::size_t keep);

// Pure/pure: |<x|y>|^2. Pure/mixed: <x|rho|x>. Mixed/mixed: Uhlmann,
// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Results are clamped to [0, 1].
[[nodiscard]] double fidelity(const StateVector &x, const StateVector &y);
[[nodiscard]] double fidelity(const StateVector &x, const DensityOperator &y);
[[nodiscard]] double fidelity(const DensityOperator &x, const StateVector &y);
[[nodiscard]] double fidelity(const DensityOperator &x,
                              const DensityOperator &y);

[[nodiscard]] bool ray_equal(const StateVector &x, const StateVector &y);

[[nodiscard]] StateVector evolve(const StateVector &psi,
                                 const UnitaryOperator &u);
[[nodiscard]] DensityOperator evolve(const DensityOperator &rho,
                                     const UnitaryOperator &u);

/// Purification `sum_i sqrt(lambda_i) |e_i> (x) |i>` of `rho`, shape
/// `{d, d}`; tracing out the second factor returns `rho`.
[[nodiscard]] StateVector purify(const DensityOperator &rho);

/// `I (x) ... (x) op (x) ... (x) I` with `op` acting on factor `index`.
[[nodiscard]] Matrix on_subsystem(const Matrix &op, std::size_t index,
                                  const Shape &shape);

/// Principal square root of a positive semidefinite Hermitian matrix;
/// negative eigenvalues from rounding are clipped to zero.
[[nodiscard]] Matrix psd_sqrt(const Matrix &m);

namespace gates {
[[nodiscard]] Matrix identity(std::size_t dimension);
[[nodiscard]] Matrix pauli_x();
[[nodiscard]] Matrix pauli_y();
[[nodiscard]] Matrix pauli_z();
[[nodiscard]] Matrix hadamard();
/// Two-qubit controlled-NOT, control on the first factor.
[[nodiscard]] Matrix cnot();
/// Tensor product of single-qubit Paulis named by the characters of
/// `label` (`I`, `X`, `Y`, `Z`), leftmost character outermost.
[[nodiscard]] Matrix pauli_string(std::string_view label);
} // namespace gates

namespace states {
[[nodiscard]] StateVector zero();
[[nodiscard]] StateVector one();
[[nodiscard]] StateVector plus();
[[nodiscard]] StateVector minus();

enum class Bell { phi_plus, phi_minus, psi_plus, psi_minus };
[[nodiscard]] StateVector bell(Bell which);
} // namespace states

} // namespace pqt
