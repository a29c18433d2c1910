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

#include "pqt/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>
#include <string>

#include "pqt/errors.hpp"

namespace pqt {

namespace {

using Index = Eigen::Index;

std::string pauli_label(std::size_t code, std::size_t n_qubits) {
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::string label(n_qubits, 'I');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        label[n_qubits - 1 - q] = kLetters[code % 4];
        code /= 4;
    }
    return label;
}

// Generalised Gell-Mann matrix k of dimension d, normalised to Tr(G^2) = 1.
// Order: symmetric (j<l), antisymmetric (j<l), diagonal (l = 1..d-1).
Matrix gell_mann_matrix(std::size_t k, std::size_t d) {
    const auto n = static_cast<Index>(d);
    Matrix g = Matrix::Zero(n, n);
    const std::size_t pairs = d * (d - 1) / 2;
    if (k < 2 * pairs) {
        const bool symmetric = k < pairs;
        std::size_t p = symmetric ? k : k - pairs;
        std::size_t j = 0;
        while (p >= d - 1 - j) {
            p -= d - 1 - j;
            ++j;
        }
        const auto row = static_cast<Index>(j);
        const auto col = static_cast<Index>(j + 1 + p);
        if (symmetric) {
            g(row, col) = M_SQRT1_2;
            g(col, row) = M_SQRT1_2;
        } else {
            g(row, col) = Complex(0.0, -M_SQRT1_2);
            g(col, row) = Complex(0.0, M_SQRT1_2);
        }
        return g;
    }
    const std::size_t l = k - 2 * pairs + 1;
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t m = 0; m < l; ++m) {
        g(static_cast<Index>(m), static_cast<Index>(m)) = scale;
    }
    g(static_cast<Index>(l), static_cast<Index>(l)) =
        -static_cast<double>(l) * scale;
    return g;
}

void require_passive(const PSystem &sys) {
    if (sys.mode() != Mode::passive) {
        throw PreconditionError(
            "single-copy estimation requires passive mode");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// ICSet

ICSet::ICSet(std::string family, std::size_t size, Shape target_shape,
             std::size_t observable_dimension, ObservableFactory observable,
             MatrixFactory dual, Matrix dual_offset)
    : family_(std::move(family)), size_(size),
      target_shape_(std::move(target_shape)),
      observable_dimension_(observable_dimension),
      observable_(std::move(observable)), dual_(std::move(dual)),
      dual_offset_(std::move(dual_offset)) {}

ICSet ICSet::pauli(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw InvalidArgument("Pauli IC set supports 1 to 6 qubits, got " +
                              std::to_string(n_qubits));
    }
    const std::size_t d = std::size_t{1} << n_qubits;
    const double scale = 1.0 / static_cast<double>(d);
    return ICSet(
        "pauli", d * d - 1, Shape(n_qubits, 2), d,
        [n_qubits](std::size_t k) {
            return Observable::pauli(pauli_label(k + 1, n_qubits));
        },
        [n_qubits, scale](std::size_t k) {
            return Matrix(scale *
                          gates::pauli_string(pauli_label(k + 1, n_qubits)));
        },
        scale * gates::identity(d));
}

ICSet ICSet::gell_mann(std::size_t dimension) {
    if (dimension < 2 || dimension > 64) {
        throw InvalidArgument("Gell-Mann IC set supports 2 <= d <= 64");
    }
    const std::size_t d = dimension;
    return ICSet(
        "gell-mann", d * d - 1, Shape{d}, d,
        [d](std::size_t k) {
            return Observable("G" + std::to_string(k), gell_mann_matrix(k, d));
        },
        [d](std::size_t k) { return gell_mann_matrix(k, d); },
        gates::identity(d) / static_cast<double>(d));
}

ICSet ICSet::from_observables(std::vector<Observable> observables) {
    if (observables.empty()) {
        throw InvalidArgument("empty observable set");
    }
    const std::size_t d = observables.front().dimension();
    for (const auto &obs : observables) {
        if (obs.dimension() != d) {
            throw InvalidArgument("observables differ in dimension");
        }
    }
    const std::size_t m = observables.size() + 1;
    std::vector<Matrix> basis;
    basis.reserve(m);
    basis.push_back(gates::identity(d));
    for (const auto &obs : observables) {
        basis.push_back(obs.matrix());
    }
    Eigen::MatrixXd gram(static_cast<Index>(m), static_cast<Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            gram(static_cast<Index>(i), static_cast<Index>(j)) =
                (basis[i] * basis[j]).trace().real();
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    const Eigen::VectorXd &lambda = solver.eigenvalues();
    const double cutoff = 1e-10 * lambda.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
    std::size_t rank = 0;
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > cutoff) {
            inv(i) = 1.0 / lambda(i);
            ++rank;
        }
    }
    if (rank != d * d) {
        throw InvalidArgument("observables with identity span " +
                              std::to_string(rank) + " of " +
                              std::to_string(d * d) +
                              " dimensions; set is not informationally "
                              "complete");
    }
    const Eigen::MatrixXd pinv = solver.eigenvectors() * inv.asDiagonal() *
                                 solver.eigenvectors().transpose();
    auto duals = std::make_shared<std::vector<Matrix>>();
    duals->reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        Matrix dj = Matrix::Zero(static_cast<Index>(d), static_cast<Index>(d));
        for (std::size_t i = 0; i < m; ++i) {
            dj += pinv(static_cast<Index>(i), static_cast<Index>(j)) * basis[i];
        }
        duals->push_back(hermitian_part(dj));
    }
    auto shared =
        std::make_shared<std::vector<Observable>>(std::move(observables));
    Matrix offset = duals->front();
    return ICSet(
        "custom", shared->size(), Shape{d}, d,
        [shared](std::size_t k) { return shared->at(k); },
        [duals](std::size_t k) { return duals->at(k + 1); },
        std::move(offset));
}

ICSet ICSet::for_shape(const Shape &shape) {
    const bool qubits =
        std::all_of(shape.begin(), shape.end(),
                    [](std::size_t d) { return d == 2; });
    if (qubits && !shape.empty() && shape.size() <= 6) {
        return pauli(shape.size());
    }
    ICSet ic = gell_mann(shape_dimension(shape));
    ic.target_shape_ = shape;
    return ic;
}

ICSet ICSet::embedded(std::size_t index, const Shape &shape) const {
    if (index >= shape.size() || shape[index] != observable_dimension_) {
        throw InvalidArgument(
            "IC set dimension does not match the chosen subsystem");
    }
    auto base = observable_;
    return ICSet(
        family_ + "@" + std::to_string(index), size_, target_shape_,
        shape_dimension(shape),
        [base, index, shape](std::size_t k) {
            return embed(base(k), index, shape);
        },
        dual_, dual_offset_);
}

Observable ICSet::observable(std::size_t k) const {
    if (k >= size_) {
        throw InvalidArgument("IC set index out of range");
    }
    return observable_(k);
}

Matrix ICSet::dual(std::size_t k) const {
    if (k >= size_) {
        throw InvalidArgument("IC set index out of range");
    }
    return dual_(k);
}

Eigen::MatrixXd gram_matrix(const ICSet &ic) {
    if (ic.observable_dimension() != ic.target_dimension()) {
        throw InvalidArgument("Gram matrix of an embedded IC set");
    }
    const std::size_t m = ic.size() + 1;
    std::vector<Matrix> basis;
    basis.reserve(m);
    basis.push_back(gates::identity(ic.target_dimension()));
    for (std::size_t k = 0; k < ic.size(); ++k) {
        basis.push_back(ic.observable(k).matrix());
    }
    Eigen::MatrixXd gram(static_cast<Index>(m), static_cast<Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            gram(static_cast<Index>(i), static_cast<Index>(j)) =
                (basis[i] * basis[j]).trace().real();
        }
    }
    return gram;
}

// ---------------------------------------------------------------------------
// Estimation

std::vector<ExpectationEstimate>
estimate_expectations(PSystem &sys, const ICSet &ic, std::size_t shots) {
    require_passive(sys);
    if (shots == 0) {
        throw InvalidArgument("shots must be positive");
    }
    if (sys.dimension() != ic.observable_dimension()) {
        throw InvalidArgument("IC set acts on dimension " +
                              std::to_string(ic.observable_dimension()) +
                              " but the system has dimension " +
                              std::to_string(sys.dimension()));
    }
    const auto n = static_cast<double>(shots);
    std::vector<ExpectationEstimate> out;
    out.reserve(ic.size());
    for (std::size_t k = 0; k < ic.size(); ++k) {
        const Observable obs = ic.observable(k);
        std::vector<std::size_t> counts(obs.outcome_count(), 0);
        for (std::size_t r : sys.measure_indices(obs, shots)) {
            ++counts[r];
        }
        ExpectationEstimate est{obs.name(), 0.0, 0.0, {}};
        for (std::size_t r = 0; r < counts.size(); ++r) {
            const double freq = static_cast<double>(counts[r]) / n;
            est.frequencies.push_back({obs.eigenvalue(r), freq});
            est.mean += freq * obs.eigenvalue(r);
        }
        double var = 0.0;
        for (const auto &f : est.frequencies) {
            var += f.probability * (f.value - est.mean) * (f.value - est.mean);
        }
        est.half_width = 3.0 * std::sqrt(var / n);
        out.push_back(std::move(est));
    }
    return out;
}

Matrix linear_inversion(std::span<const double> expectations,
                        const ICSet &ic) {
    if (expectations.size() != ic.size()) {
        throw InvalidArgument("missing estimates: got " +
                              std::to_string(expectations.size()) +
                              ", IC set has " + std::to_string(ic.size()));
    }
    Matrix rho = ic.dual_offset();
    for (std::size_t k = 0; k < ic.size(); ++k) {
        rho += expectations[k] * ic.dual(k);
    }
    return hermitian_part(rho);
}

Matrix linear_inversion(std::span<const ExpectationEstimate> estimates,
                        const ICSet &ic) {
    std::vector<double> means;
    means.reserve(estimates.size());
    for (const auto &e : estimates) {
        means.push_back(e.mean);
    }
    return linear_inversion(means, ic);
}

std::vector<double> project_to_simplex(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("cannot project an empty vector");
    }
    std::vector<double> u(values.begin(), values.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double prefix = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        prefix += u[k];
        const double candidate =
            (1.0 - prefix) / static_cast<double>(k + 1);
        if (u[k] + candidate > 0.0) {
            theta = candidate;
        }
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        out.push_back(std::max(v + theta, 0.0));
    }
    return out;
}

DensityOperator project_to_physical(const Matrix &h, Shape shape) {
    if (h.rows() != h.cols() || h.rows() < 2) {
        throw InvalidArgument("expected a square matrix of dimension >= 2");
    }
    if (!(hermiticity_defect(h) <= 1e-8)) {
        throw InvalidArgument("matrix to project is not Hermitian");
    }
    const double trace = h.trace().real();
    if (!(std::abs(trace - 1.0) <= 0.1)) {
        throw InvalidArgument("trace " + std::to_string(trace) +
                              " is too far from 1 to project");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
    const Eigen::VectorXd &ev = solver.eigenvalues();
    const auto projected = project_to_simplex(
        std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(
        projected.data(), static_cast<Index>(projected.size()));
    Matrix rho = solver.eigenvectors() * x.asDiagonal() *
                 solver.eigenvectors().adjoint();
    rho = hermitian_part(rho);
    rho /= rho.trace().real();
    return DensityOperator(std::move(rho), std::move(shape));
}

ReconstructionResult reconstruct_single_copy(PSystem &sys, const ICSet &ic,
                                             std::size_t shots) {
    auto diagnostics = estimate_expectations(sys, ic, shots);
    Matrix raw = linear_inversion(diagnostics, ic);
    DensityOperator estimate = project_to_physical(raw, ic.target_shape());
    return {std::move(estimate), std::move(raw), shots,
            std::move(diagnostics)};
}

DiscriminationResult discriminate(PSystem &sys,
                                  std::span<const StateVector> candidates,
                                  const ICSet &ic, std::size_t shots) {
    require_passive(sys);
    if (candidates.size() < 2) {
        throw InvalidArgument("discrimination needs at least two candidates");
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].dimension() != ic.target_dimension()) {
            throw InvalidArgument("candidate dimension does not match");
        }
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (ray_equal(candidates[i], candidates[j])) {
                throw PreconditionError("candidates " + std::to_string(i) +
                                        " and " + std::to_string(j) +
                                        " are the same ray");
            }
        }
    }
    auto rec = reconstruct_single_copy(sys, ic, shots);
    std::vector<double> fid;
    fid.reserve(candidates.size());
    for (const auto &c : candidates) {
        fid.push_back(fidelity(c, rec.estimate));
    }
    std::vector<std::size_t> order(fid.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return fid[a] > fid[b];
                     });
    if (fid[order[0]] - fid[order[1]] <= 1e-9) {
        throw InsufficientShotsError(
            "insufficient shots: candidates tie in fidelity");
    }
    return {order[0], std::move(fid), std::move(rec.estimate)};
}

std::vector<double> estimate_spectrum(PSystem &sys, const Observable &obs,
                                      std::size_t shots) {
    require_passive(sys);
    if (shots == 0) {
        throw InvalidArgument("shots must be positive");
    }
    std::set<std::size_t> seen;
    for (std::size_t r : sys.measure_indices(obs, shots)) {
        seen.insert(r);
    }
    std::vector<double> out;
    out.reserve(seen.size());
    for (std::size_t r : seen) {
        out.push_back(obs.eigenvalue(r));
    }
    return out;
}

} // namespace pqt
