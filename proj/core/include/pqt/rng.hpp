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

#include <cstdint>
#include <random>
#include <string_view>

namespace pqt {

/**
 * Deterministic random stream.
 *
 * The engine is `std::mt19937_64`, whose output sequence is fixed by the C++
 * standard. Floating point draws are produced here rather than through
 * `std::uniform_real_distribution`, whose algorithm is implementation
 * defined: `uniform()` takes the top 53 bits of one engine output and scales
 * by 2^-53, so every platform sees the same doubles for the same seed.
 *
 * Child streams are derived from the *seed* and a path string, never from the
 * current engine state:
 *
 *     child_seed = splitmix64(seed ^ fnv1a64(path))
 *
 * Adding a new consumer therefore never perturbs existing streams.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal variate via Box-Muller; consumes two uniforms.
    double normal();

    /// Uniform integer in [0, n). `n` must be positive.
    std::uint64_t below(std::uint64_t n);

    [[nodiscard]] Rng derive(std::string_view path) const {
        return Rng(derive_seed(seed_, path));
    }
    [[nodiscard]] Rng derive(std::uint64_t index) const;

    [[nodiscard]] static std::uint64_t derive_seed(std::uint64_t root,
                                                   std::string_view path);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;
[[nodiscard]] std::uint64_t fnv1a64(std::string_view text) noexcept;

} // namespace pqt
