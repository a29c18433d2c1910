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

#include "pqt/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "pqt/errors.hpp"

namespace pqt {

namespace {

using Index = Eigen::Index;

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

template <class Derived>
bool same_bits(const Eigen::MatrixBase<Derived> &a,
               const Eigen::MatrixBase<Derived> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    return std::memcmp(a.derived().data(), b.derived().data(),
                       sizeof(Complex) * static_cast<std::size_t>(a.size())) ==
           0;
}

void require_dimension(const Observable &obs, std::size_t d) {
    if (obs.dimension() != d) {
        throw InvalidArgument("observable '" + obs.name() + "' has dimension " +
                              std::to_string(obs.dimension()) +
                              " but the state has dimension " +
                              std::to_string(d));
    }
}

void require_outcome(const Observable &obs, std::size_t r) {
    if (r >= obs.outcome_count()) {
        throw InvalidArgument("outcome index " + std::to_string(r) +
                              " out of range for observable '" + obs.name() +
                              "'");
    }
}

double expectation(const Matrix &op, const StateVector &psi) {
    return psi.amplitudes().dot(op * psi.amplitudes()).real();
}

double expectation(const Matrix &op, const DensityOperator &rho) {
    // Tr(op rho) = sum_ij op_ij rho_ji
    return op.cwiseProduct(rho.matrix().transpose()).sum().real();
}

std::vector<double> clip_and_normalize(std::vector<double> p) {
    double total = 0.0;
    for (double &x : p) {
        x = std::max(x, 0.0);
        total += x;
    }
    if (!(total > 0.0)) {
        throw Error("outcome probabilities sum to zero");
    }
    for (double &x : p) {
        x /= total;
    }
    return p;
}

OutcomeDistribution make_distribution(const Observable &obs,
                                      std::vector<double> raw) {
    raw = clip_and_normalize(std::move(raw));
    OutcomeDistribution out;
    out.outcomes.reserve(raw.size());
    for (std::size_t r = 0; r < raw.size(); ++r) {
        out.outcomes.push_back({obs.eigenvalue(r), raw[r]});
    }
    return out;
}

void require_realisable(double weight, const Observable &obs,
                        std::size_t r) {
    if (!(weight > kZeroProbability)) {
        throw ZeroProbabilityError(
            "outcome " + std::to_string(obs.eigenvalue(r)) + " of '" +
            obs.name() + "' has zero probability; post-state undefined");
    }
}

} // namespace

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::quantum ? "quantum" : "passive";
}

Mode parse_mode(std::string_view text) {
    if (text == "quantum") {
        return Mode::quantum;
    }
    if (text == "passive") {
        return Mode::passive;
    }
    throw InvalidArgument("unknown mode '" + std::string(text) +
                          "' (expected quantum|passive)");
}

std::size_t dimension(const QuantumState &state) {
    return std::visit([](const auto &s) { return s.dimension(); }, state);
}

const Shape &shape(const QuantumState &state) {
    return std::visit([](const auto &s) -> const Shape & { return s.shape(); },
                      state);
}

DensityOperator to_density(const QuantumState &state) {
    return std::visit(
        overloaded{
            [](const StateVector &psi) { return DensityOperator::pure(psi); },
            [](const DensityOperator &rho) { return rho; }},
        state);
}

bool bit_identical(const QuantumState &a, const QuantumState &b) {
    if (a.index() != b.index() || shape(a) != shape(b)) {
        return false;
    }
    if (const auto *psi = std::get_if<StateVector>(&a)) {
        return same_bits(psi->amplitudes(),
                         std::get<StateVector>(b).amplitudes());
    }
    return same_bits(std::get<DensityOperator>(a).matrix(),
                     std::get<DensityOperator>(b).matrix());
}

double fidelity(const QuantumState &a, const QuantumState &b) {
    return std::visit(
        [](const auto &x, const auto &y) { return pqt::fidelity(x, y); }, a,
        b);
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(std::string name, Matrix matrix, double degeneracy_tol)
    : name_(std::move(name)), matrix_(std::move(matrix)),
      decomposition_(spectral_decompose(matrix_, degeneracy_tol)) {}

Observable::Observable(std::string name, Matrix matrix,
                       SpectralDecomposition decomposition)
    : name_(std::move(name)), matrix_(std::move(matrix)),
      decomposition_(std::move(decomposition)) {
    if (matrix_.rows() != matrix_.cols() ||
        decomposition_.dimension() != dimension()) {
        throw InvalidArgument("decomposition does not match observable '" +
                              name_ + "'");
    }
    const double err =
        (decomposition_.reconstruct() - matrix_).cwiseAbs().maxCoeff();
    if (!(err <= 1e-9)) {
        throw InvalidArgument("decomposition does not reconstruct '" + name_ +
                              "'");
    }
}

Observable Observable::pauli(std::string_view label) {
    Matrix sigma = gates::pauli_string(label);
    if (label.find_first_not_of('I') == std::string_view::npos) {
        return Observable(std::string(label), std::move(sigma));
    }
    // Non-identity Pauli strings square to I with eigenvalues -1 and +1, so
    // the projectors are (I -+ sigma) / 2 exactly.
    const Matrix id = Matrix::Identity(sigma.rows(), sigma.cols());
    SpectralDecomposition decomposition;
    decomposition.eigenvalues = {-1.0, 1.0};
    decomposition.projectors = {0.5 * (id - sigma), 0.5 * (id + sigma)};
    return Observable(std::string(label), std::move(sigma),
                      std::move(decomposition));
}

Observable embed(const Observable &obs, std::size_t index,
                 const Shape &shape) {
    SpectralDecomposition lifted;
    lifted.eigenvalues = obs.decomposition().eigenvalues;
    for (const auto &p : obs.decomposition().projectors) {
        lifted.projectors.push_back(on_subsystem(p, index, shape));
    }
    std::string name;
    for (std::size_t s = 0; s < shape.size(); ++s) {
        if (s > 0) {
            name += "⊗";
        }
        name += s == index ? obs.name() : std::string("I");
    }
    return Observable(std::move(name), on_subsystem(obs.matrix(), index, shape),
                      std::move(lifted));
}

Observable Observable::computational_basis(const Shape &shape) {
    const auto d = static_cast<Index>(shape_dimension(shape));
    Matrix m = Matrix::Zero(d, d);
    SpectralDecomposition decomposition;
    for (Index k = 0; k < d; ++k) {
        m(k, k) = static_cast<double>(k);
        Matrix p = Matrix::Zero(d, d);
        p(k, k) = 1.0;
        decomposition.eigenvalues.push_back(static_cast<double>(k));
        decomposition.projectors.push_back(std::move(p));
    }
    return Observable("computational", std::move(m), std::move(decomposition));
}

std::size_t Observable::outcome_index(double value) const {
    std::size_t best = 0;
    double best_gap = std::abs(decomposition_.eigenvalues.front() - value);
    for (std::size_t r = 1; r < outcome_count(); ++r) {
        const double gap = std::abs(decomposition_.eigenvalues[r] - value);
        if (gap < best_gap) {
            best = r;
            best_gap = gap;
        }
    }
    if (!(best_gap <= 1e-9)) {
        throw InvalidArgument(std::to_string(value) +
                              " is not an eigenvalue of '" + name_ + "'");
    }
    return best;
}

// ---------------------------------------------------------------------------
// Born rule

std::vector<double> OutcomeDistribution::probabilities() const {
    std::vector<double> p;
    p.reserve(outcomes.size());
    for (const auto &o : outcomes) {
        p.push_back(o.probability);
    }
    return p;
}

OutcomeDistribution born_distribution(const Observable &obs,
                                      const StateVector &psi) {
    require_dimension(obs, psi.dimension());
    std::vector<double> raw;
    raw.reserve(obs.outcome_count());
    for (const auto &p : obs.decomposition().projectors) {
        raw.push_back(expectation(p, psi));
    }
    return make_distribution(obs, std::move(raw));
}

OutcomeDistribution born_distribution(const Observable &obs,
                                      const DensityOperator &rho) {
    require_dimension(obs, rho.dimension());
    std::vector<double> raw;
    raw.reserve(obs.outcome_count());
    for (const auto &p : obs.decomposition().projectors) {
        raw.push_back(expectation(p, rho));
    }
    return make_distribution(obs, std::move(raw));
}

OutcomeDistribution born_distribution(const Observable &obs,
                                      const QuantumState &state) {
    return std::visit(
        [&](const auto &s) { return born_distribution(obs, s); }, state);
}

std::vector<double> projector_probabilities(std::span<const Matrix> projectors,
                                            const QuantumState &state) {
    const std::size_t d = dimension(state);
    std::vector<double> raw;
    raw.reserve(projectors.size());
    for (const auto &p : projectors) {
        if (static_cast<std::size_t>(p.rows()) != d) {
            throw InvalidArgument("projector dimension does not match state");
        }
        raw.push_back(std::visit(
            [&](const auto &s) { return expectation(p, s); }, state));
    }
    return clip_and_normalize(std::move(raw));
}

std::size_t sample_index(std::span<const double> probabilities, Rng &rng) {
    if (probabilities.empty()) {
        throw InvalidArgument("cannot sample from an empty distribution");
    }
    const double u = rng.uniform();
    double cdf = 0.0;
    std::size_t last_possible = probabilities.size();
    for (std::size_t r = 0; r < probabilities.size(); ++r) {
        if (!(probabilities[r] > kZeroProbability)) {
            continue;
        }
        cdf += probabilities[r];
        last_possible = r;
        if (u < cdf) {
            return r;
        }
    }
    if (last_possible == probabilities.size()) {
        throw Error("distribution has no realisable outcome");
    }
    return last_possible;
}

// ---------------------------------------------------------------------------
// Update rules

StateVector collapse_update(const StateVector &psi, const Observable &obs,
                            std::size_t outcome_index) {
    require_dimension(obs, psi.dimension());
    require_outcome(obs, outcome_index);
    Vector projected = obs.projector(outcome_index) * psi.amplitudes();
    require_realisable(projected.squaredNorm(), obs, outcome_index);
    return StateVector::normalized(std::move(projected), psi.shape());
}

DensityOperator collapse_update(const DensityOperator &rho,
                                const Observable &obs,
                                std::size_t outcome_index) {
    require_dimension(obs, rho.dimension());
    require_outcome(obs, outcome_index);
    auto branch = luders_map(rho, obs.projector(outcome_index));
    require_realisable(branch.weight, obs, outcome_index);
    Matrix post = hermitian_part(branch.unnormalized);
    post /= post.trace().real();
    return DensityOperator(std::move(post), rho.shape());
}

QuantumState collapse_update(const QuantumState &state, const Observable &obs,
                             std::size_t outcome_index) {
    return std::visit(
        [&](const auto &s) -> QuantumState {
            return collapse_update(s, obs, outcome_index);
        },
        state);
}

StateVector passive_update(const StateVector &psi, const Observable &obs,
                           std::size_t outcome_index) {
    require_dimension(obs, psi.dimension());
    require_outcome(obs, outcome_index);
    require_realisable(expectation(obs.projector(outcome_index), psi), obs,
                       outcome_index);
    return psi;
}

DensityOperator passive_update(const DensityOperator &rho,
                               const Observable &obs,
                               std::size_t outcome_index) {
    require_dimension(obs, rho.dimension());
    require_outcome(obs, outcome_index);
    require_realisable(expectation(obs.projector(outcome_index), rho), obs,
                       outcome_index);
    return rho;
}

QuantumState passive_update(const QuantumState &state, const Observable &obs,
                            std::size_t outcome_index) {
    return std::visit(
        [&](const auto &s) -> QuantumState {
            return passive_update(s, obs, outcome_index);
        },
        state);
}

// ---------------------------------------------------------------------------
// PSystem

PSystem::PSystem(QuantumState state, Mode mode, Rng rng)
    : state_(std::move(state)), mode_(mode), rng_(std::move(rng)) {}

void PSystem::evolve(const UnitaryOperator &u) {
    state_ = std::visit(
        [&](const auto &s) -> QuantumState { return pqt::evolve(s, u); },
        state_);
}

std::size_t PSystem::measure_index(const Observable &obs) {
    const auto dist = born_distribution(obs, state_);
    const auto probs = dist.probabilities();
    const std::size_t r = sample_index(probs, rng_);
    if (mode_ == Mode::quantum) {
        state_ = collapse_update(state_, obs, r);
    }
    // Passive mode: the state object is left untouched.
    ++measurements_;
    return r;
}

std::vector<std::size_t> PSystem::measure_indices(const Observable &obs,
                                                  std::size_t n) {
    std::vector<std::size_t> out;
    out.reserve(n);
    if (mode_ == Mode::quantum) {
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back(measure_index(obs));
        }
        return out;
    }
    const auto probs = born_distribution(obs, state_).probabilities();
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(sample_index(probs, rng_));
    }
    measurements_ += n;
    return out;
}

double measure(PSystem &sys, const Observable &obs) {
    return obs.eigenvalue(sys.measure_index(obs));
}

double measure(PSystem &sys, const Observable &obs,
               MeasurementRecord &record) {
    const double value = measure(sys, obs);
    record.outcomes.push_back(value);
    return value;
}

MeasurementRecord repeated_measure(PSystem &sys, const Observable &obs,
                                   std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("repeated_measure needs at least one shot");
    }
    MeasurementRecord record{obs.name(), {}, sys.mode()};
    record.outcomes.reserve(n);
    for (std::size_t r : sys.measure_indices(obs, n)) {
        record.outcomes.push_back(obs.eigenvalue(r));
    }
    return record;
}

// ---------------------------------------------------------------------------
// Instruments

InstrumentBranch luders_map(const DensityOperator &rho,
                            const Matrix &projector) {
    if (static_cast<std::size_t>(projector.rows()) != rho.dimension()) {
        throw InvalidArgument("projector dimension does not match state");
    }
    Matrix out = projector * rho.matrix() * projector;
    const double weight = out.trace().real();
    return {std::move(out), weight};
}

InstrumentBranch p_instrument_map(const DensityOperator &rho,
                                  const Matrix &projector) {
    const double weight = luders_map(rho, projector).weight;
    return {weight * rho.matrix(), weight};
}

InstrumentBranch apply_instrument(Instrument kind, const DensityOperator &rho,
                                  const Matrix &projector) {
    return kind == Instrument::luders ? luders_map(rho, projector)
                                      : p_instrument_map(rho, projector);
}

double nonlinearity_witness(const DensityOperator &rho1,
                            const DensityOperator &rho2, double lambda,
                            const Matrix &projector, Instrument kind) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw InvalidArgument("mixing weight must lie in (0, 1)");
    }
    if (rho1.dimension() != rho2.dimension()) {
        throw InvalidArgument("dimension mismatch between mixed states");
    }
    const DensityOperator mixed(lambda * rho1.matrix() +
                                    (1.0 - lambda) * rho2.matrix(),
                                rho1.shape());
    const Matrix lhs = apply_instrument(kind, mixed, projector).unnormalized;
    const Matrix rhs =
        lambda * apply_instrument(kind, rho1, projector).unnormalized +
        (1.0 - lambda) * apply_instrument(kind, rho2, projector).unnormalized;
    return (lhs - rhs).norm();
}

// ---------------------------------------------------------------------------
// Moments

MeanVariance expectation_variance(const Observable &obs,
                                  const QuantumState &state) {
    const auto dist = born_distribution(obs, state);
    double mean = 0.0;
    double second = 0.0;
    for (const auto &o : dist.outcomes) {
        mean += o.value * o.probability;
        second += o.value * o.value * o.probability;
    }
    return {mean, std::max(0.0, second - mean * mean)};
}

double robertson_bound(const Observable &a, const Observable &b,
                       const QuantumState &state) {
    require_dimension(a, dimension(state));
    require_dimension(b, dimension(state));
    const Matrix commutator =
        a.matrix() * b.matrix() - b.matrix() * a.matrix();
    const Complex value = std::visit(
        overloaded{[&](const StateVector &psi) {
                       return psi.amplitudes().dot(commutator *
                                                   psi.amplitudes());
                   },
                   [&](const DensityOperator &rho) {
                       return (commutator * rho.matrix()).trace();
                   }},
        state);
    return std::abs(value) / 2.0;
}

} // namespace pqt
