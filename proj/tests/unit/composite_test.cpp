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

#include "pqt/composite.hpp"
#include "pqt/errors.hpp"
#include "pqt/random_states.hpp"
#include "pqt/stats.hpp"

namespace pqt {
namespace {

const StateVector &phi_plus() {
    static const StateVector s = states::bell(states::Bell::phi_plus);
    return s;
}

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

// Joint table Tr[(P_a (x) Q_b) rho] computed straight from the projectors.
std::vector<double> analytic_joint(const QuantumState &state,
                                   const Observable &a, const Observable &b) {
    const Matrix rho = to_density(state).matrix();
    std::vector<double> out;
    for (std::size_t i = 0; i < a.outcome_count(); ++i) {
        for (std::size_t j = 0; j < b.outcome_count(); ++j) {
            out.push_back(
                (tensor(a.projector(i), b.projector(j)) * rho).trace().real());
        }
    }
    return out;
}

TEST(LiftLocal, ExamplesAndInheritedDegeneracy) {
    const Observable za =
        lift_local({Side::A, Observable::pauli("Z")}, {2, 2});
    EXPECT_LT(max_abs(za.matrix() - gates::pauli_string("ZI")), 1e-15);
    ASSERT_EQ(za.outcome_count(), 2u);
    EXPECT_LT(max_abs(za.projector(1) - tensor(states::zero().projector(),
                                               gates::identity(2))),
              1e-15);
    EXPECT_LT(max_abs(za.projector(0) - tensor(states::one().projector(),
                                               gates::identity(2))),
              1e-15);
    const Observable xb =
        lift_local({Side::B, Observable::pauli("X")}, {2, 2});
    EXPECT_LT(max_abs(xb.matrix() - gates::pauli_string("IX")), 1e-15);
    EXPECT_THROW((void)lift_local({Side::A, Observable::pauli("Z")}, {3, 2}),
                 InvalidArgument);
}

TEST(LiftLocal, MarginalEqualsReducedStateBornRule) {
    const auto lifted = born_distribution(
        lift_local({Side::A, Observable::pauli("Z")}, {2, 2}), phi_plus());
    const auto reduced =
        born_distribution(Observable::pauli("Z"), partial_trace(phi_plus(), 0));
    EXPECT_EQ(lifted.probabilities(), reduced.probabilities());
}

TEST(GlobalJointSample, BellZZOnlyCorrelatedRows) {
    PSystem sys(phi_plus(), Mode::passive, 17);
    const auto t = global_joint_sample(sys, Observable::pauli("Z"),
                                       Observable::pauli("Z"), 10000);
    EXPECT_EQ(t.total, 10000u);
    EXPECT_EQ(t.frequency(1, -1), 0.0);
    EXPECT_EQ(t.frequency(-1, 1), 0.0);
    EXPECT_NEAR(t.frequency(1, 1), 0.5, 0.02);
    EXPECT_NEAR(t.frequency(-1, -1), 0.5, 0.02);
    EXPECT_TRUE(bit_identical(sys.state(), phi_plus()));
}

TEST(GlobalJointSample, ProductEigenstateAndUniformRows) {
    PSystem product(tensor(states::zero(), states::plus()), Mode::passive, 1);
    const auto t = global_joint_sample(product, Observable::pauli("Z"),
                                       Observable::pauli("X"), 1000);
    EXPECT_EQ(t.frequency(1, 1), 1.0);

    PSystem bell(phi_plus(), Mode::passive, 2);
    const auto u = global_joint_sample(bell, Observable::pauli("Z"),
                                       Observable::pauli("X"), 10000);
    for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
            EXPECT_NEAR(u.frequency(a, b), 0.25, 0.02);
        }
    }
}

TEST(GlobalJointSample, SingleQuantumCopyRejectedEnsembleAccepted) {
    PSystem sys(phi_plus(), Mode::quantum, 3);
    try {
        (void)global_joint_sample(sys, Observable::pauli("Z"),
                                  Observable::pauli("Z"), 10);
        FAIL() << "expected an error";
    } catch (const PreconditionError &e) {
        EXPECT_NE(std::string(e.what()).find("ensemble required in quantum mode"),
                  std::string::npos);
    }
    Ensemble ensemble(phi_plus(), Mode::quantum, Rng(3));
    const auto t = global_joint_sample(ensemble, Observable::pauli("Z"),
                                       Observable::pauli("Z"), 2000);
    EXPECT_EQ(ensemble.copies_consumed(), 2000u);
    EXPECT_EQ(t.frequency(1, -1) + t.frequency(-1, 1), 0.0);
}

TEST(GlobalJointSample, ProductStatesFactorize) {
    Rng rng(211);
    const std::size_t shots = 20000;
    for (int trial = 0; trial < 5; ++trial) {
        const auto state =
            tensor(random::pure_state({2}, rng), random::pure_state({2}, rng));
        const Observable a("A", random::hermitian(2, rng));
        const Observable b("B", random::hermitian(2, rng));
        PSystem sys(state, Mode::passive, rng.derive(trial));
        const auto t = global_joint_sample(sys, a, b, shots);
        std::vector<double> ma(2, 0.0);
        std::vector<double> mb(2, 0.0);
        const auto f = t.frequencies();
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                ma[i] += f[i * 2 + j];
                mb[j] += f[i * 2 + j];
            }
        }
        std::vector<double> product;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                product.push_back(ma[i] * mb[j]);
            }
        }
        EXPECT_LE(stats::tv_distance(f, product),
                  5.0 / std::sqrt(static_cast<double>(shots)));
    }
}

TEST(JointDistribution, MatchesProjectorOracle) {
    Rng rng(223);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = random::density_operator({2, 3}, rng);
        const Observable a("A", random::hermitian(2, rng));
        const Observable b("B", random::hermitian(3, rng));
        const auto got = global_joint_distribution(rho, a, b).probabilities;
        const auto want = analytic_joint(rho, a, b);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_NEAR(got[i], want[i], 1e-12);
        }
    }
}

TEST(LocalPassiveJointSample, BellZZIsUncorrelated) {
    PSystem sys(phi_plus(), Mode::passive, 19);
    const Observable z = Observable::pauli("Z");
    const auto t = local_passive_joint_sample(sys, {Side::A, z}, {Side::B, z},
                                              100000);
    for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
            EXPECT_NEAR(t.frequency(a, b), 0.25, 0.01);
        }
    }
    EXPECT_NEAR(correlator(t), 0.0, 0.015);
    EXPECT_TRUE(bit_identical(sys.state(), phi_plus()));
}

TEST(LocalPassiveJointSample, ProductAndQuantumMode) {
    const Observable z = Observable::pauli("Z");
    PSystem product(tensor(states::zero(), states::zero()), Mode::passive, 1);
    EXPECT_EQ(local_passive_joint_sample(product, {Side::A, z}, {Side::B, z},
                                         100)
                  .frequency(1, 1),
              1.0);
    PSystem quantum(phi_plus(), Mode::quantum, 1);
    EXPECT_THROW((void)local_passive_joint_sample(quantum, {Side::A, z},
                                                  {Side::B, z}, 10),
                 PreconditionError);
}

TEST(LocalPassiveJointSample, MarginalsMatchLiftedBornRule) {
    Rng rng(227);
    const std::size_t shots = 20000;
    for (int trial = 0; trial < 5; ++trial) {
        const auto psi = random::pure_state({2, 2}, rng);
        const Observable a("A", random::hermitian(2, rng));
        const Observable b("B", random::hermitian(2, rng));
        PSystem sys(psi, Mode::passive, rng.derive(trial));
        const auto t = local_passive_joint_sample(sys, {Side::A, a},
                                                  {Side::B, b}, shots);
        const auto f = t.frequencies();
        const std::vector<double> ma{f[0] + f[1], f[2] + f[3]};
        const std::vector<double> mb{f[0] + f[2], f[1] + f[3]};
        const auto pa =
            born_distribution(lift_local({Side::A, a}, {2, 2}), psi);
        const auto pb =
            born_distribution(lift_local({Side::B, b}, {2, 2}), psi);
        const double slack = 5.0 / std::sqrt(static_cast<double>(shots));
        EXPECT_LE(stats::tv_distance(ma, pa.probabilities()), slack);
        EXPECT_LE(stats::tv_distance(mb, pb.probabilities()), slack);
    }
}

TEST(LocalVersusGlobal, BellTablesDifferByHalf) {
    const Observable z = Observable::pauli("Z");
    const auto global = global_joint_distribution(phi_plus(), z, z);
    const auto local = local_passive_joint_distribution(phi_plus(), z, z);
    EXPECT_EQ(tv_distance(global, local), 0.5);
    PSystem sys(phi_plus(), Mode::passive, 23);
    const auto sg = global_joint_sample(sys, z, z, 20000);
    const auto sl = local_passive_joint_sample(sys, {Side::A, z}, {Side::B, z},
                                               20000);
    EXPECT_NEAR(tv_distance(sg, sl), 0.5, 0.03);
}

TEST(Correlator, Examples) {
    JointFrequencyTable perfect{{{-1, -1, 5}, {-1, 1, 0}, {1, -1, 0}, {1, 1, 5}},
                                10};
    EXPECT_EQ(correlator(perfect), 1.0);
    JointFrequencyTable uniform{{{-1, -1, 5}, {-1, 1, 5}, {1, -1, 5}, {1, 1, 5}},
                                20};
    EXPECT_EQ(correlator(uniform), 0.0);
    JointFrequencyTable bad{{{0, 1, 3}}, 3};
    EXPECT_THROW((void)correlator(bad), InvalidArgument);
}

TEST(Chsh, GlobalApproachesTsirelsonBound) {
    PSystem sys(phi_plus(), Mode::passive, 29);
    const std::size_t shots = 100000;
    const auto r =
        chsh_value(sys, ChshSettings::optimal(), ChshSource::global, shots);
    EXPECT_NEAR(r.value, 2.0 * std::sqrt(2.0), 4.0 / std::sqrt(double(shots)));
    const auto exact = chsh_value_exact(phi_plus(), ChshSettings::optimal(),
                                        ChshSource::global);
    EXPECT_NEAR(exact.value, 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(Chsh, LocalPassiveStaysNearZero) {
    PSystem sys(phi_plus(), Mode::passive, 31);
    const std::size_t shots = 100000;
    const auto r = chsh_value(sys, ChshSettings::optimal(),
                              ChshSource::local_passive, shots);
    EXPECT_LE(std::abs(r.value), 0.05);
    EXPECT_EQ(chsh_value_exact(phi_plus(), ChshSettings::optimal(),
                               ChshSource::local_passive)
                  .value,
              0.0);
}

TEST(Chsh, LocalPassiveRespectsClassicalBoundForRandomStates) {
    Rng rng(233);
    const std::size_t shots = 5000;
    for (int trial = 0; trial < 5; ++trial) {
        PSystem sys(random::pure_state({2, 2}, rng), Mode::passive,
                    rng.derive(trial));
        const ChshSettings settings{
            Observable("a1", 2.0 * random::pure_state({2}, rng).projector() -
                                 gates::identity(2)),
            Observable("a2", 2.0 * random::pure_state({2}, rng).projector() -
                                 gates::identity(2)),
            Observable("b1", 2.0 * random::pure_state({2}, rng).projector() -
                                 gates::identity(2)),
            Observable("b2", 2.0 * random::pure_state({2}, rng).projector() -
                                 gates::identity(2))};
        const auto r =
            chsh_value(sys, settings, ChshSource::local_passive, shots);
        EXPECT_LE(std::abs(r.value),
                  2.0 + 6.0 * 4.0 / std::sqrt(static_cast<double>(shots)));
    }
}

TEST(Chsh, ProductStateGlobalWithinClassicalBound) {
    PSystem sys(tensor(states::zero(), states::zero()), Mode::passive, 37);
    const auto r = chsh_value(sys, ChshSettings::optimal(), ChshSource::global,
                              20000);
    EXPECT_LE(std::abs(r.value), 2.0 + 4.0 * 4.0 / std::sqrt(20000.0));
    EXPECT_EQ(parse_chsh_source("local-passive"), ChshSource::local_passive);
    EXPECT_THROW((void)parse_chsh_source("nonlocal"), InvalidArgument);
}

TEST(Entanglement, BellPairDetected) {
    PSystem sys(phi_plus(), Mode::passive, 41);
    const auto r = detect_entanglement_single_copy(sys, 10000);
    EXPECT_EQ(r.verdict, EntanglementVerdict::entangled);
    EXPECT_NEAR(r.purity, 0.5, 0.02);
    EXPECT_LT(max_abs(r.reduced_estimate.matrix() - 0.5 * gates::identity(2)),
              0.03);
}

TEST(Entanglement, ProductAndPartialCases) {
    PSystem product(tensor(states::zero(), states::plus()), Mode::passive, 43);
    const auto p = detect_entanglement_single_copy(product, 10000);
    EXPECT_EQ(p.verdict, EntanglementVerdict::product);
    EXPECT_GE(fidelity(states::zero(), p.reduced_estimate), 0.99);

    Vector v = Vector::Zero(4);
    v(0) = std::sqrt(0.9);
    v(3) = std::sqrt(0.1);
    PSystem partial(StateVector(v, {2, 2}), Mode::passive, 47);
    const auto q = detect_entanglement_single_copy(partial, 10000);
    EXPECT_EQ(q.verdict, EntanglementVerdict::entangled);
    EXPECT_NEAR(q.purity, 0.82, 0.03);
}

TEST(Entanglement, InconclusiveBandIsReported) {
    // Reduced purity 0.925 sits inside [0.90, 0.95].
    const double p = 0.5 * (1.0 + std::sqrt(2.0 * 0.925 - 1.0));
    Vector v = Vector::Zero(4);
    v(0) = std::sqrt(p);
    v(3) = std::sqrt(1.0 - p);
    PSystem sys(StateVector(v, {2, 2}), Mode::passive, 53);
    const auto r = detect_entanglement_single_copy(sys, 100000);
    EXPECT_EQ(r.verdict, EntanglementVerdict::inconclusive);
}

TEST(Signalling, PassiveAndQuantumActionsDoNotSignal) {
    const Observable z = Observable::pauli("Z");
    const Observable x = Observable::pauli("X");
    EXPECT_EQ(
        signalling_check(phi_plus(), RemoteAction::passive_measure, z, x).tv,
        0.0);
    EXPECT_LE(signalling_check(phi_plus(), RemoteAction::quantum_nonselective,
                               z, x)
                  .tv,
              1e-12);
    EXPECT_EQ(signalling_check(phi_plus(), RemoteAction::none, z, x).tv, 0.0);
    EXPECT_EQ(parse_remote_action("quantum-measure-nonselective"),
              RemoteAction::quantum_nonselective);
}

TEST(Signalling, RandomStatesAndSettings) {
    Rng rng(239);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random::density_operator({2, 3}, rng);
        const Observable a("A", random::hermitian(2, rng));
        const Observable b("B", random::hermitian(3, rng));
        EXPECT_EQ(signalling_check(rho, RemoteAction::passive_measure, a, b).tv,
                  0.0);
        EXPECT_LE(
            signalling_check(rho, RemoteAction::quantum_nonselective, a, b).tv,
            1e-12);
    }
}

} // namespace
} // namespace pqt
