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

#include "pqt/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pqt/errors.hpp"

namespace pqt {

namespace {

using Index = Eigen::Index;

Shape concat(const Shape &a, const Shape &b) {
    Shape out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Shape resolve_shape(Shape shape, std::size_t dimension) {
    if (shape.empty()) {
        return {dimension};
    }
    if (shape_dimension(shape) != dimension) {
        throw InvalidArgument("shape product " +
                              std::to_string(shape_dimension(shape)) +
                              " does not match dimension " +
                              std::to_string(dimension));
    }
    return shape;
}

void require_square(const Matrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidArgument(std::string(what) + " must be a non-empty "
                                                  "square matrix");
    }
}

void require_same_dimension(std::size_t a, std::size_t b) {
    if (a != b) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(a) +
                              " vs " + std::to_string(b));
    }
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// <x|m|x> / <x|x>, accumulated element by element so that m = c * I yields
// exactly c.
double normalized_expectation(const Vector &x, const Matrix &m) {
    const Vector mx = m * x;
    double num = 0.0;
    double den = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
        num += std::real(std::conj(x(i)) * mx(i));
        den += std::real(std::conj(x(i)) * x(i));
    }
    return num / den;
}

} // namespace

std::size_t shape_dimension(const Shape &shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                           std::multiplies<>());
}

double hermiticity_defect(const Matrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix &m) { return 0.5 * (m + m.adjoint()); }

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Vector amplitudes, Shape shape)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw InvalidArgument("state vector needs dimension >= 2");
    }
    shape_ = resolve_shape(std::move(shape), dimension());
    const double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= tolerance::kStateNorm)) {
        throw InvalidArgument("state vector is not normalised (|psi|^2 = " +
                              std::to_string(norm2) + ")");
    }
}

StateVector StateVector::normalized(Vector amplitudes, Shape shape) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("cannot normalise a zero or non-finite vector");
    }
    amplitudes /= norm;
    return StateVector(std::move(amplitudes), std::move(shape));
}

StateVector StateVector::basis(std::size_t index, Shape shape) {
    const std::size_t d = shape_dimension(shape);
    if (index >= d) {
        throw InvalidArgument("basis index " + std::to_string(index) +
                              " out of range for dimension " +
                              std::to_string(d));
    }
    Vector v = Vector::Zero(static_cast<Index>(d));
    v(static_cast<Index>(index)) = 1.0;
    return StateVector(std::move(v), std::move(shape));
}

Matrix StateVector::projector() const {
    return amplitudes_ * amplitudes_.adjoint();
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(Matrix matrix, Shape shape)
    : matrix_(std::move(matrix)) {
    require_square(matrix_, "density operator");
    if (matrix_.rows() < 2) {
        throw InvalidArgument("density operator needs dimension >= 2");
    }
    shape_ = resolve_shape(std::move(shape), dimension());
    if (!(hermiticity_defect(matrix_) <= tolerance::kDensityHermitian)) {
        throw InvalidArgument("density operator is not Hermitian");
    }
    const double trace = matrix_.trace().real();
    if (!(std::abs(trace - 1.0) <= tolerance::kDensityTrace)) {
        throw InvalidArgument("density operator trace " +
                              std::to_string(trace) + " differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(matrix_),
                                                 Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < tolerance::kDensityEigenvalueFloor) {
        throw InvalidArgument("density operator has a negative eigenvalue");
    }
}

DensityOperator DensityOperator::pure(const StateVector &psi) {
    return DensityOperator(psi.projector(), psi.shape());
}

DensityOperator DensityOperator::maximally_mixed(Shape shape) {
    const auto d = static_cast<Index>(shape_dimension(shape));
    Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
    return DensityOperator(std::move(m), std::move(shape));
}

double DensityOperator::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return matrix_.squaredNorm();
}

// ---------------------------------------------------------------------------
// UnitaryOperator

UnitaryOperator::UnitaryOperator(Matrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "unitary");
    const Matrix defect =
        matrix_.adjoint() * matrix_ -
        Matrix::Identity(matrix_.rows(), matrix_.cols());
    if (!(defect.cwiseAbs().maxCoeff() <= tolerance::kUnitary)) {
        throw InvalidArgument("matrix is not unitary");
    }
}

UnitaryOperator UnitaryOperator::identity(std::size_t dimension) {
    return UnitaryOperator(gates::identity(dimension));
}

UnitaryOperator UnitaryOperator::adjoint() const {
    return UnitaryOperator(matrix_.adjoint());
}

Matrix SpectralDecomposition::reconstruct() const {
    const auto d = static_cast<Index>(dimension());
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t r = 0; r < size(); ++r) {
        out += eigenvalues[r] * projectors[r];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor products

Matrix tensor(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    Vector out(a.amplitudes().size() * b.amplitudes().size());
    for (Index i = 0; i < a.amplitudes().size(); ++i) {
        out.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
            a.amplitudes()(i) * b.amplitudes();
    }
    // Products of unit vectors can drift by an ulp; the shape is exact.
    return StateVector(std::move(out), concat(a.shape(), b.shape()));
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return DensityOperator(tensor(a.matrix(), b.matrix()),
                           concat(a.shape(), b.shape()));
}

UnitaryOperator tensor(const UnitaryOperator &a, const UnitaryOperator &b) {
    return UnitaryOperator(tensor(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Spectral decomposition

SpectralDecomposition spectral_decompose(const Matrix &h,
                                         double degeneracy_tol) {
    require_square(h, "observable");
    if (!(hermiticity_defect(h) <= tolerance::kSpectralHermitian)) {
        throw InvalidArgument("matrix is not Hermitian within 1e-10");
    }
    if (!(degeneracy_tol >= 0.0)) {
        throw InvalidArgument("degeneracy tolerance must be non-negative");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
    if (solver.info() != Eigen::Success) {
        throw Error("eigensolver failed to converge");
    }
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();

    SpectralDecomposition out;
    Index start = 0;
    while (start < values.size()) {
        Index stop = start + 1;
        while (stop < values.size() &&
               values(stop) - values(start) <= degeneracy_tol) {
            ++stop;
        }
        const Index rank = stop - start;
        const auto block = vectors.middleCols(start, rank);
        out.eigenvalues.push_back(values.segment(start, rank).mean());
        out.projectors.push_back(hermitian_part(block * block.adjoint()));
        start = stop;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partial trace

DensityOperator partial_trace(const DensityOperator &rho, std::size_t keep) {
    const Shape &shape = rho.shape();
    if (shape.size() < 2) {
        throw InvalidArgument("partial trace needs at least two subsystems");
    }
    if (keep >= shape.size()) {
        throw InvalidArgument("subsystem index " + std::to_string(keep) +
                              " out of range");
    }
    const std::size_t d = rho.dimension();
    const std::size_t dk = shape[keep];
    std::size_t inner = 1;
    for (std::size_t s = keep + 1; s < shape.size(); ++s) {
        inner *= shape[s];
    }
    // Split every full index into (kept digit, remaining multi-index).
    std::vector<std::size_t> kept(d);
    std::vector<std::size_t> rest(d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t outer = i / (inner * dk);
        kept[i] = (i / inner) % dk;
        rest[i] = outer * inner + i % inner;
    }
    Matrix out = Matrix::Zero(static_cast<Index>(dk), static_cast<Index>(dk));
    const Matrix &m = rho.matrix();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (rest[i] == rest[j]) {
                out(static_cast<Index>(kept[i]), static_cast<Index>(kept[j])) +=
                    m(static_cast<Index>(i), static_cast<Index>(j));
            }
        }
    }
    out = hermitian_part(out);
    out /= out.trace().real();
    return DensityOperator(std::move(out), {dk});
}

DensityOperator partial_trace(const StateVector &psi, std::size_t keep) {
    return partial_trace(DensityOperator::pure(psi), keep);
}

// ---------------------------------------------------------------------------
// Fidelity

double fidelity(const StateVector &x, const StateVector &y) {
    require_same_dimension(x.dimension(), y.dimension());
    const Complex overlap = x.amplitudes().dot(y.amplitudes());
    return clamp_unit(std::norm(overlap) / (x.amplitudes().squaredNorm() *
                                            y.amplitudes().squaredNorm()));
}

double fidelity(const StateVector &x, const DensityOperator &y) {
    require_same_dimension(x.dimension(), y.dimension());
    return clamp_unit(normalized_expectation(x.amplitudes(), y.matrix()));
}

double fidelity(const DensityOperator &x, const StateVector &y) {
    return fidelity(y, x);
}

double fidelity(const DensityOperator &x, const DensityOperator &y) {
    require_same_dimension(x.dimension(), y.dimension());
    const Matrix root = psd_sqrt(x.matrix());
    const Matrix inner = hermitian_part(root * y.matrix() * root);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(inner,
                                                 Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
        sum += std::sqrt(std::max(0.0, solver.eigenvalues()(i)));
    }
    return clamp_unit(sum * sum);
}

bool ray_equal(const StateVector &x, const StateVector &y) {
    return x.dimension() == y.dimension() &&
           std::abs(1.0 - fidelity(x, y)) <= tolerance::kRayEqual;
}

// ---------------------------------------------------------------------------
// Evolution

StateVector evolve(const StateVector &psi, const UnitaryOperator &u) {
    require_same_dimension(psi.dimension(), u.dimension());
    return StateVector(u.matrix() * psi.amplitudes(), psi.shape());
}

DensityOperator evolve(const DensityOperator &rho, const UnitaryOperator &u) {
    require_same_dimension(rho.dimension(), u.dimension());
    return DensityOperator(
        hermitian_part(u.matrix() * rho.matrix() * u.matrix().adjoint()),
        rho.shape());
}

StateVector purify(const DensityOperator &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(rho.matrix()));
    const auto d = static_cast<Index>(rho.dimension());
    Vector out = Vector::Zero(d * d);
    for (Index i = 0; i < d; ++i) {
        const double weight = std::max(0.0, solver.eigenvalues()(i));
        const Vector e = solver.eigenvectors().col(i);
        for (Index a = 0; a < d; ++a) {
            out(a * d + i) += std::sqrt(weight) * e(a);
        }
    }
    return StateVector::normalized(std::move(out),
                                   {rho.dimension(), rho.dimension()});
}

Matrix on_subsystem(const Matrix &op, std::size_t index, const Shape &shape) {
    if (index >= shape.size()) {
        throw InvalidArgument("subsystem index out of range");
    }
    if (static_cast<std::size_t>(op.rows()) != shape[index] ||
        op.rows() != op.cols()) {
        throw InvalidArgument("operator does not match subsystem dimension");
    }
    std::size_t before = 1;
    for (std::size_t s = 0; s < index; ++s) {
        before *= shape[s];
    }
    std::size_t after = 1;
    for (std::size_t s = index + 1; s < shape.size(); ++s) {
        after *= shape[s];
    }
    return tensor(tensor(gates::identity(before), op), gates::identity(after));
}

Matrix psd_sqrt(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
    const Eigen::VectorXd roots =
        solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() *
           solver.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// Presets

namespace gates {

Matrix identity(std::size_t dimension) {
    const auto d = static_cast<Index>(dimension);
    return Matrix::Identity(d, d);
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix hadamard() { return (pauli_x() + pauli_z()) * M_SQRT1_2; }

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

Matrix pauli_string(std::string_view label) {
    if (label.empty()) {
        throw InvalidArgument("empty Pauli string");
    }
    Matrix out = Matrix::Identity(1, 1);
    for (char c : label) {
        Matrix factor;
        switch (c) {
        case 'I':
            factor = identity(2);
            break;
        case 'X':
            factor = pauli_x();
            break;
        case 'Y':
            factor = pauli_y();
            break;
        case 'Z':
            factor = pauli_z();
            break;
        default:
            throw InvalidArgument("unknown Pauli label '" + std::string(1, c) +
                                  "'");
        }
        out = tensor(out, factor);
    }
    return out;
}

} // namespace gates

namespace states {

StateVector zero() { return StateVector::basis(0, {2}); }
StateVector one() { return StateVector::basis(1, {2}); }

StateVector plus() {
    Vector v(2);
    v << M_SQRT1_2, M_SQRT1_2;
    return StateVector(std::move(v));
}

StateVector minus() {
    Vector v(2);
    v << M_SQRT1_2, -M_SQRT1_2;
    return StateVector(std::move(v));
}

StateVector bell(Bell which) {
    Vector v = Vector::Zero(4);
    switch (which) {
    case Bell::phi_plus:
        v << M_SQRT1_2, 0, 0, M_SQRT1_2;
        break;
    case Bell::phi_minus:
        v << M_SQRT1_2, 0, 0, -M_SQRT1_2;
        break;
    case Bell::psi_plus:
        v << 0, M_SQRT1_2, M_SQRT1_2, 0;
        break;
    case Bell::psi_minus:
        v << 0, M_SQRT1_2, -M_SQRT1_2, 0;
        break;
    }
    return StateVector(std::move(v), {2, 2});
}

} // namespace states

} // namespace pqt
