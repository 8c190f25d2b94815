// Copyright 2026 The Envar Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "envar/hilbert.hpp"
#include "oracles.hpp"

namespace envar {
namespace {

const double kR = 1.0 / std::sqrt(2.0);

BipartitePureState bell() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = kR;
    m(1, 1) = kR;
    return BipartitePureState(m);
}

ErrorKind kindOf(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an envar::Error";
    return ErrorKind::IoError;
}

TEST(Tensor, BasisProduct) {
    StateVector v = tensor(StateVector::basis(2, 0), StateVector::basis(2, 0));
    ASSERT_EQ(v.dim(), 4u);
    EXPECT_EQ(v[0], Complex(1.0));
    for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(v[i], Complex(0.0));
}

TEST(Tensor, PlusTimesOne) {
    ComplexVector plus(2);
    plus << kR, kR;
    StateVector v = tensor(StateVector(plus), StateVector::basis(2, 1));
    EXPECT_NEAR(std::abs(v[0]), 0.0, 1e-15);
    EXPECT_NEAR(v[1].real(), kR, 1e-15);
    EXPECT_NEAR(std::abs(v[2]), 0.0, 1e-15);
    EXPECT_NEAR(v[3].real(), kR, 1e-15);
}

TEST(Tensor, RandomNormsMultiply) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        StateVector v = tensor(randomState(3, rng), randomState(5, rng));
        EXPECT_NEAR(v.amps().norm(), 1.0, 1e-12);
    }
}

TEST(Validation, RejectsBadStates) {
    EXPECT_EQ(kindOf([] { StateVector(ComplexVector::Ones(2)); }), ErrorKind::InvalidState);
    EXPECT_EQ(kindOf([] { StateVector::normalized(ComplexVector::Zero(3)); }), ErrorKind::InvalidState);
    EXPECT_EQ(kindOf([] { BipartitePureState(ComplexMatrix::Ones(2, 2)); }), ErrorKind::InvalidState);
    ComplexMatrix nonUnitary = ComplexMatrix::Identity(2, 2);
    nonUnitary(0, 1) = 0.1;
    EXPECT_EQ(kindOf([&] { UnitaryOperator u(nonUnitary); }), ErrorKind::InvalidState);
}

TEST(Validation, RejectsBadDensityOperators) {
    ComplexMatrix nonHermitian = ComplexMatrix::Identity(2, 2) * 0.5;
    nonHermitian(0, 1) = Complex(0.0, 0.1);
    EXPECT_EQ(kindOf([&] { DensityOperator d(nonHermitian); }), ErrorKind::InvalidState);
    EXPECT_EQ(kindOf([] { DensityOperator d(ComplexMatrix::Identity(2, 2)); }), ErrorKind::InvalidState);
    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_EQ(kindOf([&] { DensityOperator d(negative); }), ErrorKind::InvalidState);
}

TEST(Schmidt, ProductStateHasRankOne) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    SchmidtForm f = schmidt(BipartitePureState(m));
    ASSERT_EQ(f.rank(), 1u);
    EXPECT_NEAR(f.coeffs[0], 1.0, 1e-12);
}

TEST(Schmidt, BellStateIsFlaggedDegenerate) {
    SchmidtForm f = schmidt(bell());
    ASSERT_EQ(f.rank(), 2u);
    EXPECT_NEAR(f.coeffs[0], kR, 1e-12);
    EXPECT_NEAR(f.coeffs[1], kR, 1e-12);
    EXPECT_TRUE(f.degenerate);
    EXPECT_LT(stateDistance(f.reconstruct(), bell()), 1e-10);
}

TEST(Schmidt, UnevenCoefficientsMatchReducedSpectrum) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::sqrt(1.0 / 3.0);
    m(1, 1) = std::sqrt(2.0 / 3.0);
    BipartitePureState s(m);
    SchmidtForm f = schmidt(s);
    ASSERT_EQ(f.rank(), 2u);
    EXPECT_NEAR(f.coeffs[0], std::sqrt(2.0 / 3.0), 1e-12);
    EXPECT_NEAR(f.coeffs[1], std::sqrt(1.0 / 3.0), 1e-12);
    EXPECT_FALSE(f.degenerate);
    std::vector<double> oracle = oracle::hermitianEigenvalues(partialTraceE(s).matrix());
    EXPECT_NEAR(oracle[1], f.coeffs[0] * f.coeffs[0], 1e-10);
    EXPECT_NEAR(oracle[0], f.coeffs[1] * f.coeffs[1], 1e-10);
}

TEST(Schmidt, RandomStatesReconstructWithOrthonormalBases) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        BipartitePureState s = randomBipartite(3 + trial % 3, 2 + trial % 5, rng);
        SchmidtForm f = schmidt(s);
        double sumSq = 0.0;
        for (std::size_t k = 0; k < f.rank(); ++k) {
            sumSq += f.coeffs[k] * f.coeffs[k];
            if (k > 0) EXPECT_GE(f.coeffs[k - 1], f.coeffs[k]);
            for (std::size_t l = 0; l < f.rank(); ++l) {
                const double want = k == l ? 1.0 : 0.0;
                EXPECT_NEAR(std::abs(f.sysBasis[k].amps().dot(f.sysBasis[l].amps()) - want), 0.0, 1e-10);
                EXPECT_NEAR(std::abs(f.envBasis[k].amps().dot(f.envBasis[l].amps()) - want), 0.0, 1e-10);
            }
        }
        EXPECT_NEAR(sumSq, 1.0, 1e-10);
        EXPECT_LT(stateDistance(f.reconstruct(), s), 1e-10);
    }
}

TEST(Schmidt, RedecomposingAReconstructionIsStable) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        SchmidtForm f = schmidt(randomBipartite(4, 3, rng));
        SchmidtForm g = schmidt(f.reconstruct());
        ASSERT_EQ(f.rank(), g.rank());
        for (std::size_t k = 0; k < f.rank(); ++k) EXPECT_NEAR(f.coeffs[k], g.coeffs[k], 1e-10);
    }
}

TEST(PartialTrace, ProductGivesProjector) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 3);
    m(1, 2) = 1.0;
    DensityOperator rho = partialTraceE(BipartitePureState(m));
    EXPECT_NEAR(rho.matrix()(1, 1).real(), 1.0, 1e-12);
    EXPECT_NEAR(rho.matrix().norm(), 1.0, 1e-12);
}

TEST(PartialTrace, BellGivesHalfIdentity) {
    DensityOperator rho = partialTraceE(bell());
    EXPECT_NEAR((rho.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm(), 0.0, 1e-12);
}

TEST(PartialTrace, RandomSpectrumMatchesSchmidtCoefficients) {
    std::mt19937_64 rng(7);
    BipartitePureState s = randomBipartite(3, 4, rng);
    SchmidtForm f = schmidt(s);
    std::vector<double> ev = oracle::hermitianEigenvalues(partialTraceE(s).matrix());
    ASSERT_EQ(ev.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(ev[2 - k], f.coeffs[k] * f.coeffs[k], 1e-10);
}

TEST(Entropy, KnownValues) {
    EXPECT_NEAR(vonNeumannEntropy(DensityOperator::pure(StateVector::basis(3, 1))), 0.0, 1e-10);
    EXPECT_NEAR(vonNeumannEntropy(partialTraceE(bell())), std::log(2.0), 1e-10);
}

TEST(Entropy, EvenRankKGivesLogK) {
    for (std::size_t K = 1; K <= 6; ++K) {
        ComplexMatrix m = ComplexMatrix::Identity(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
        DensityOperator rho = partialTraceE(BipartitePureState::normalized(m));
        EXPECT_NEAR(vonNeumannEntropy(rho), std::log(static_cast<double>(K)), 1e-8);
    }
}

TEST(ApplyLocal, IdentityLeavesStateUnchanged) {
    std::mt19937_64 rng(8);
    BipartitePureState s = randomBipartite(3, 2, rng);
    EXPECT_LT(stateDistance(applyLocal(s, UnitaryOperator::identity(3), Side::System), s), 1e-15);
    EXPECT_LT(stateDistance(applyLocal(s, UnitaryOperator::identity(2), Side::Environment), s), 1e-15);
}

TEST(ApplyLocal, RejectsWrongDimension) {
    std::mt19937_64 rng(9);
    BipartitePureState s = randomBipartite(3, 2, rng);
    EXPECT_EQ(kindOf([&] { applyLocal(s, UnitaryOperator::identity(2), Side::System); }),
              ErrorKind::DimensionMismatch);
    EXPECT_EQ(kindOf([&] { applyLocal(s, UnitaryOperator::identity(3), Side::Environment); }),
              ErrorKind::DimensionMismatch);
}

TEST(ApplyLocal, PhaseThenConjugatePhaseRestoresEvenState) {
    ComplexMatrix phase = ComplexMatrix::Identity(2, 2);
    phase(1, 1) = std::polar(1.0, 0.7);
    BipartitePureState shifted = applyLocal(bell(), UnitaryOperator(phase), Side::System);
    BipartitePureState back = applyLocal(shifted, UnitaryOperator(phase.conjugate()), Side::Environment);
    EXPECT_LT(stateDistance(back, bell()), 1e-10);
}

TEST(ApplyLocal, SwapOnBothSidesRestoresBellState) {
    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    BipartitePureState s = applyLocal(applyLocal(bell(), UnitaryOperator(x), Side::System), UnitaryOperator(x),
                                      Side::Environment);
    EXPECT_LT(stateDistance(s, bell()), 1e-10);
}

TEST(ApplyLocal, PreservesTheUntouchedSpectrum) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        BipartitePureState s = randomBipartite(3, 4, rng);
        BipartitePureState t = applyLocal(s, randomUnitary(3, rng), Side::System);
        EXPECT_NEAR(t.amps().norm(), 1.0, 1e-12);
        SchmidtForm a = schmidt(s), b = schmidt(t);
        for (std::size_t k = 0; k < a.rank(); ++k) EXPECT_NEAR(a.coeffs[k], b.coeffs[k], 1e-10);
        EXPECT_LT(operatorDistance(partialTraceS(s), partialTraceS(t)), 1e-10);
    }
}

TEST(Layout, FlattenRunsEnvironmentFastest) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 3);
    m(1, 2) = 1.0;
    StateVector flat = BipartitePureState(m).flatten();
    EXPECT_EQ(flat[5], Complex(1.0));
    BipartitePureState back = BipartitePureState::fromVector(flat, 2, 3);
    EXPECT_EQ(back.amps()(1, 2), Complex(1.0));
    EXPECT_EQ(BipartitePureState(m).exchanged().amps()(2, 1), Complex(1.0));
}

TEST(Random, UnitariesAreUnitaryAndSeeded) {
    std::mt19937_64 a(3), b(3);
    UnitaryOperator u = randomUnitary(5, a);
    UnitaryOperator v = randomUnitary(5, b);
    EXPECT_EQ((u.matrix() - v.matrix()).norm(), 0.0);
    EXPECT_NEAR((u.matrix().adjoint() * u.matrix() - ComplexMatrix::Identity(5, 5)).norm(), 0.0, 1e-12);
}

}  // namespace
}  // namespace envar
