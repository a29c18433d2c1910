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

#include "pqt/hilbert.hpp"
#include "pqt/rng.hpp"

namespace pqt::random {

/// Haar-distributed pure state: normalised vector of i.i.d. complex Gaussians.
[[nodiscard]] StateVector pure_state(const Shape &shape, Rng &rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase of R's
/// diagonal divided out).
[[nodiscard]] UnitaryOperator unitary(std::size_t dimension, Rng &rng);

/// Hermitian matrix `(G + G^dagger) / 2` with Ginibre `G`.
[[nodiscard]] Matrix hermitian(std::size_t dimension, Rng &rng);

/// Hilbert-Schmidt random density operator `G G^dagger / Tr(G G^dagger)`.
[[nodiscard]] DensityOperator density_operator(const Shape &shape, Rng &rng);

} // namespace pqt::random
