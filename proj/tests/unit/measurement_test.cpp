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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pqt/errors.hpp"
#include "pqt/measurement.hpp"
#include "pqt/random_states.hpp"
#include "pqt/stats.hpp"

namespace pqt {
namespace {

const Observable &Z() {
    static const Observable z = Observable::pauli("Z");
    return z;
}
const Observable &X() {
    static const Observable x = Observable::pauli("X");
    return x;
}

double prob_of(const OutcomeDistribution &d, double value) {
    for (const auto &o : d.outcomes) {
        if (o.value == value) {
            return o.probability;
        }
    }
    return -1.0;
}

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

TEST(Observable, PauliSpectraAndDegeneracy) {
    EXPECT_EQ(Z().outcome_count(), 2u);
    const Observable zz = Observable::pauli("ZZ");
    ASSERT_EQ(zz.outcome_count(), 2u);
    EXPECT_NEAR(zz.projector(0).trace().real(), 2.0, 1e-12);
    const Observable zi = embed(Z(), 0, {2, 2});
    EXPECT_EQ(zi.outcome_count(), 2u);
    EXPECT_LT(max_abs(zi.matrix() - gates::pauli_string("ZI")), 1e-15);
    EXPECT_LT(max_abs(zi.projector(1) -
                      tensor(states::zero().projector(), gates::identity(2))),
              1e-15);
}

TEST(Observable, InconsistentDecompositionRejected) {
    SpectralDecomposition wrong = spectral_decompose(gates::pauli_z());
    wrong.eigenvalues = {-2.0, 1.0};
    EXPECT_THROW(Observable("bad", gates::pauli_z(), wrong), InvalidArgument);
    EXPECT_THROW((void)Observable::pauli("Q"), InvalidArgument);
}

TEST(Observable, OutcomeIndexLookup) {
    EXPECT_EQ(Z().outcome_index(1.0), 1u);
    EXPECT_EQ(Z().outcome_index(-1.0), 0u);
    EXPECT_THROW((void)Z().outcome_index(0.5), InvalidArgument);
}

TEST(BornDistribution, Examples) {
    EXPECT_EQ(prob_of(born_distribution(Z(), states::zero()), 1.0), 1.0);
    EXPECT_EQ(prob_of(born_distribution(Z(), states::zero()), -1.0), 0.0);
    EXPECT_NEAR(prob_of(born_distribution(X(), states::zero()), 1.0), 0.5,
                1e-15);
    const auto bell = states::bell(states::Bell::phi_plus);
    const auto d = born_distribution(embed(Z(), 0, {2, 2}), bell);
    EXPECT_NEAR(prob_of(d, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(prob_of(d, -1.0), 0.5, 1e-15);
}

TEST(BornDistribution, PureAndDensityFormsAgree) {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector psi = random::pure_state({3}, rng);
        const Observable obs("H", random::hermitian(3, rng));
        const auto a = born_distribution(obs, psi).probabilities();
        const auto b =
            born_distribution(obs, DensityOperator::pure(psi)).probabilities();
        ASSERT_EQ(a.size(), b.size());
        double total = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_NEAR(a[i], b[i], 1e-12);
            EXPECT_GE(a[i], 0.0);
            total += a[i];
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(BornDistribution, DimensionMismatchThrows) {
    EXPECT_THROW((void)born_distribution(Z(), states::bell(states::Bell::phi_plus)),
                 InvalidArgument);
}

TEST(SampleIndex, NeverReturnsZeroWeightOutcomes) {
    Rng rng(1);
    const std::vector<double> p{0.0, 1e-13, 1.0 - 1e-13};
    for (int i = 0; i < 10000; ++i) {
        EXPECT_EQ(sample_index(p, rng), 2u);
    }
}

TEST(CollapseUpdate, Examples) {
    EXPECT_TRUE(ray_equal(collapse_update(states::plus(), Z(), 1),
                          states::zero()));
    const auto bell = states::bell(states::Bell::phi_plus);
    const Observable zi = embed(Z(), 0, {2, 2});
    EXPECT_TRUE(ray_equal(collapse_update(bell, zi, zi.outcome_index(1.0)),
                          tensor(states::zero(), states::zero())));
    EXPECT_THROW((void)collapse_update(states::zero(), Z(), 0),
                 ZeroProbabilityError);
}

TEST(CollapseUpdate, IdempotentOnRandomStates) {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityOperator rho = random::density_operator({2, 2}, rng);
        const Observable obs = embed(Z(), trial % 2, {2, 2});
        for (std::size_t r = 0; r < obs.outcome_count(); ++r) {
            const DensityOperator once = collapse_update(rho, obs, r);
            const DensityOperator twice = collapse_update(once, obs, r);
            EXPECT_LT(max_abs(once.matrix() - twice.matrix()), 1e-12);
        }
    }
}

TEST(PassiveUpdate, ReturnsInputUnchanged) {
    EXPECT_TRUE(bit_identical(passive_update(states::plus(), Z(), 1),
                              states::plus()));
    const auto bell = states::bell(states::Bell::phi_plus);
    const QuantumState after = passive_update(
        QuantumState(bell), embed(Z(), 0, {2, 2}), 0);
    EXPECT_TRUE(bit_identical(after, bell));
    const auto mixed = DensityOperator::maximally_mixed({2});
    EXPECT_TRUE(bit_identical(passive_update(mixed, X(), 1), mixed));
    EXPECT_THROW((void)passive_update(states::zero(), Z(), 0),
                 ZeroProbabilityError);
}

TEST(PassiveUpdate, BitIdenticalForRandomInputs) {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = random::pure_state({3}, rng);
        const Observable obs("H", random::hermitian(3, rng));
        for (std::size_t r = 0; r < obs.outcome_count(); ++r) {
            EXPECT_TRUE(bit_identical(passive_update(psi, obs, r), psi));
        }
    }
}

TEST(Measure, QuantumEigenstateIsDeterministic) {
    PSystem sys(states::zero(), Mode::quantum, 5);
    EXPECT_EQ(measure(sys, Z()), 1.0);
    EXPECT_TRUE(bit_identical(sys.state(), states::zero()));
}

TEST(Measure, PassiveLeavesStateUntouched) {
    PSystem sys(states::plus(), Mode::passive, 5);
    for (int i = 0; i < 50; ++i) {
        const double v = measure(sys, Z());
        EXPECT_TRUE(v == 1.0 || v == -1.0);
        EXPECT_TRUE(bit_identical(sys.state(), states::plus()));
    }
    EXPECT_EQ(sys.measurement_count(), 50u);
}

TEST(Measure, SameSeedReplaysOutcomes) {
    std::vector<double> first;
    std::vector<double> second;
    for (auto *out : {&first, &second}) {
        for (int copy = 0; copy < 20; ++copy) {
            PSystem sys(states::plus(), Mode::quantum,
                        Rng(99).derive(static_cast<std::uint64_t>(copy)));
            out->push_back(measure(sys, Z()));
        }
    }
    EXPECT_EQ(first, second);
}

TEST(Measure, BatchedIndicesMatchSequentialCalls) {
    PSystem a(states::plus(), Mode::passive, 8);
    PSystem b(states::plus(), Mode::passive, 8);
    const auto batch = a.measure_indices(X(), 1); // X on |+> is certain
    EXPECT_EQ(batch, std::vector<std::size_t>{1});
    (void)b.measure_index(X());
    const auto rest_a = a.measure_indices(Z(), 500);
    for (std::size_t i = 0; i < 500; ++i) {
        EXPECT_EQ(rest_a[i], b.measure_index(Z()));
    }
}

TEST(RepeatedMeasure, QuantumOutcomesRepeatExactly) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PSystem sys(states::plus(), Mode::quantum, seed);
        const auto rec = repeated_measure(sys, Z(), 5);
        ASSERT_EQ(rec.shots(), 5u);
        for (double v : rec.outcomes) {
            EXPECT_EQ(v, rec.outcomes.front());
        }
    }
}

TEST(RepeatedMeasure, PassiveFrequencyWithinBinomialBand) {
    PSystem sys(states::plus(), Mode::passive, 42);
    const auto rec = repeated_measure(sys, Z(), 100000);
    std::size_t plus = 0;
    for (double v : rec.outcomes) {
        plus += v == 1.0 ? 1 : 0;
    }
    const double f = static_cast<double>(plus) / 1e5;
    EXPECT_GE(f, 0.494);
    EXPECT_LE(f, 0.506);
    EXPECT_EQ(rec.mode, Mode::passive);
    EXPECT_EQ(rec.observable, "Z");
}

TEST(RepeatedMeasure, EigenstateAndZeroShots) {
    PSystem sys(states::zero(), Mode::passive, 1);
    EXPECT_EQ(repeated_measure(sys, Z(), 7).outcomes,
              std::vector<double>(7, 1.0));
    EXPECT_THROW((void)repeated_measure(sys, Z(), 0), InvalidArgument);
}

TEST(RepeatedMeasure, MonteCarloConvergesToBornRule) {
    Rng rng(51);
    for (std::size_t n : {10000u, 40000u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const StateVector psi = random::pure_state({3}, rng);
            const Observable obs("H", random::hermitian(3, rng));
            PSystem sys(psi, Mode::passive, rng.derive(n + trial));
            const auto idx = sys.measure_indices(obs, n);
            std::vector<double> freq(obs.outcome_count(), 0.0);
            for (std::size_t k : idx) {
                freq[k] += 1.0 / static_cast<double>(n);
            }
            const auto p = born_distribution(obs, psi).probabilities();
            EXPECT_LE(stats::tv_distance(freq, p),
                      5.0 / std::sqrt(static_cast<double>(n)));
        }
    }
}

TEST(Instruments, LudersExamples) {
    const Matrix p0 = states::zero().projector();
    const auto mixed = luders_map(DensityOperator::maximally_mixed({2}), p0);
    EXPECT_LT(max_abs(mixed.unnormalized - 0.5 * p0), 1e-15);
    EXPECT_DOUBLE_EQ(mixed.weight, 0.5);
    const auto orth = luders_map(DensityOperator::pure(states::zero()),
                                 states::one().projector());
    EXPECT_EQ(max_abs(orth.unnormalized), 0.0);
    EXPECT_EQ(orth.weight, 0.0);
    const Matrix plus = states::plus().projector();
    const auto b = luders_map(DensityOperator(plus), p0);
    EXPECT_LT(max_abs(b.unnormalized - p0 * plus * p0), 1e-15);
    EXPECT_LT(max_abs(b.unnormalized - 0.5 * p0), 1e-15);
}

TEST(Instruments, PassiveExamples) {
    const Matrix p0 = states::zero().projector();
    const Matrix plus = states::plus().projector();
    const auto a = p_instrument_map(DensityOperator(plus), p0);
    EXPECT_LT(max_abs(a.unnormalized - 0.5 * plus), 1e-15);
    EXPECT_NEAR(a.weight, 0.5, 1e-15);
    const auto b = p_instrument_map(DensityOperator(p0), p0);
    EXPECT_LT(max_abs(b.unnormalized - p0), 1e-15);
    EXPECT_EQ(b.weight, 1.0);
    const auto c = p_instrument_map(DensityOperator::maximally_mixed({2}), p0);
    EXPECT_LT(max_abs(c.unnormalized - 0.25 * gates::identity(2)), 1e-15);
}

TEST(Instruments, WeightsEqualBornProbability) {
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityOperator rho = random::density_operator({3}, rng);
        const Observable obs("H", random::hermitian(3, rng));
        const auto p = born_distribution(obs, rho).probabilities();
        for (std::size_t r = 0; r < obs.outcome_count(); ++r) {
            EXPECT_NEAR(luders_map(rho, obs.projector(r)).weight, p[r], 1e-12);
            EXPECT_NEAR(p_instrument_map(rho, obs.projector(r)).weight, p[r],
                        1e-12);
        }
    }
}

TEST(Instruments, LudersMapIsLinearOnMixtures) {
    Rng rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityOperator r1 = random::density_operator({2}, rng);
        const DensityOperator r2 = random::density_operator({2}, rng);
        const double lambda = 0.1 + 0.8 * rng.uniform();
        const Matrix p = random::pure_state({2}, rng).projector();
        const DensityOperator mix(lambda * r1.matrix() +
                                  (1 - lambda) * r2.matrix());
        const Matrix lhs = luders_map(mix, p).unnormalized;
        const Matrix rhs = lambda * luders_map(r1, p).unnormalized +
                           (1 - lambda) * luders_map(r2, p).unnormalized;
        EXPECT_LT(max_abs(lhs - rhs), 1e-12);
        EXPECT_LT(nonlinearity_witness(r1, r2, lambda, p, Instrument::luders),
                  1e-12);
    }
}

TEST(NonlinearityWitness, OrthogonalInputsHalfMixture) {
    const DensityOperator r0 = DensityOperator::pure(states::zero());
    const DensityOperator r1 = DensityOperator::pure(states::one());
    const Matrix p0 = states::zero().projector();
    // Both sides of the passive branch map evaluated by hand:
    // mixture I/2 has weight 1/2, so the map gives I/4; the mixture of the
    // maps is (1/2)(1 * |0><0|) + (1/2)(0 * |1><1|).
    const Matrix lhs = 0.25 * gates::identity(2);
    const Matrix rhs = 0.5 * p0;
    const double expected = (lhs - rhs).norm();
    EXPECT_NEAR(expected, std::sqrt(2 * 0.0625), 1e-15);
    EXPECT_NEAR(nonlinearity_witness(r0, r1, 0.5, p0), expected, 1e-15);
}

TEST(NonlinearityWitness, VanishesForEqualInputsAndEqualWeights) {
    const DensityOperator plus = DensityOperator::pure(states::plus());
    const DensityOperator minus = DensityOperator::pure(states::minus());
    const Matrix p0 = states::zero().projector();
    EXPECT_LT(nonlinearity_witness(plus, plus, 0.3, p0), 1e-15);
    EXPECT_LT(nonlinearity_witness(plus, minus, 0.3, p0), 1e-15);
    EXPECT_THROW((void)nonlinearity_witness(plus, minus, 1.0, p0),
                 InvalidArgument);
}

TEST(ExpectationVariance, Examples) {
    const auto z0 = expectation_variance(Z(), states::zero());
    EXPECT_DOUBLE_EQ(z0.mean, 1.0);
    EXPECT_DOUBLE_EQ(z0.variance, 0.0);
    const auto zp = expectation_variance(Z(), states::plus());
    EXPECT_NEAR(zp.mean, 0.0, 1e-15);
    EXPECT_NEAR(zp.variance, 1.0, 1e-15);
    const auto x0 = expectation_variance(X(), states::zero());
    EXPECT_NEAR(std::sqrt(x0.variance) * std::sqrt(z0.variance), 0.0, 1e-15);
    EXPECT_NEAR(robertson_bound(X(), Z(), states::zero()), 0.0, 1e-15);
}

TEST(ExpectationVariance, RobertsonInequalityOnRandomTriples) {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 + trial % 3;
        const Observable a("A", random::hermitian(d, rng));
        const Observable b("B", random::hermitian(d, rng));
        const StateVector psi = random::pure_state({d}, rng);
        const auto va = expectation_variance(a, psi);
        const auto vb = expectation_variance(b, psi);
        // Independent evaluation of |<[A, B]>| / 2.
        const Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
        const double bound =
            0.5 * std::abs(psi.amplitudes().dot(comm * psi.amplitudes()));
        EXPECT_NEAR(robertson_bound(a, b, psi), bound, 1e-12);
        EXPECT_GE(std::sqrt(va.variance * vb.variance) + 1e-10, bound);
    }
}

TEST(Ensemble, HandsOutFreshCopiesWithDerivedStreams) {
    Ensemble ensemble(states::plus(), Mode::quantum, Rng(3));
    PSystem a = ensemble.fresh();
    PSystem b = ensemble.fresh();
    EXPECT_EQ(ensemble.copies_consumed(), 2u);
    EXPECT_EQ(a.rng().seed(), Rng(3).derive(0).seed());
    EXPECT_EQ(b.rng().seed(), Rng(3).derive(1).seed());
    (void)a.measure_index(Z());
    PSystem c = ensemble.fresh();
    EXPECT_TRUE(bit_identical(c.state(), states::plus()));
}

TEST(Mode, ParsesNames) {
    EXPECT_EQ(parse_mode("quantum"), Mode::quantum);
    EXPECT_EQ(parse_mode("passive"), Mode::passive);
    EXPECT_EQ(to_string(Mode::passive), "passive");
    EXPECT_THROW((void)parse_mode("classical"), InvalidArgument);
}

} // namespace
} // namespace pqt
