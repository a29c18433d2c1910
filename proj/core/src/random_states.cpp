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

#include "pqt/random_states.hpp"

#include <cmath>

namespace pqt::random {

namespace {

Matrix ginibre(std::size_t dimension, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dimension);
    Matrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im) * M_SQRT1_2;
        }
    }
    return g;
}

} // namespace

StateVector pure_state(const Shape &shape, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(shape_dimension(shape));
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return StateVector::normalized(std::move(v), shape);
}

UnitaryOperator unitary(std::size_t dimension, Rng &rng) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(dimension, rng));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex diag = r(k, k);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(k) *= diag / mag;
        }
    }
    return UnitaryOperator(std::move(q));
}

Matrix hermitian(std::size_t dimension, Rng &rng) {
    return hermitian_part(ginibre(dimension, rng));
}

DensityOperator density_operator(const Shape &shape, Rng &rng) {
    const Matrix g = ginibre(shape_dimension(shape), rng);
    Matrix rho = hermitian_part(g * g.adjoint());
    rho /= rho.trace().real();
    return DensityOperator(std::move(rho), shape);
}

} // namespace pqt::random
