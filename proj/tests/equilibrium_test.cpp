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
#include <numbers>
#include <random>

#include "envar/equilibrium.hpp"
#include "envar/szilard.hpp"
#include "oracles.hpp"

namespace envar {
namespace {

ErrorKind kindOf(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an envar::Error";
    return ErrorKind::IoError;
}

TEST(EvenStates, RankOneIsAProductState) {
    EvenState s = makeEvenState(1, {0.3}, 1);
    EXPECT_EQ(schmidt(s.state()).rank(), 1u);
}

TEST(EvenStates, RankTwoComputationalIsBell) {
    EvenState s = makeEvenState(2, {0.0, 0.0}, EvenStateBases::computational(2, 2, 2));
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s.state().amps()(0, 0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.state().amps()(1, 1) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.state().amps()(0, 1)), 0.0, 1e-15);
}

TEST(EvenStates, RankEightIsFlat) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    std::vector<double> phases(8);
    for (double &p : phases) p = angle(rng);
    EvenState s = makeEvenState(8, phases, 9);
    EXPECT_NEAR((partialTraceE(s.state()).matrix() - ComplexMatrix::Identity(8, 8) / 8.0).norm(), 0.0, 1e-10);
    for (double c : schmidt(s.state()).coeffs) EXPECT_NEAR(c, 1.0 / std::sqrt(8.0), 1e-10);
}

TEST(EvenStates, RejectsBadShapes) {
    EXPECT_EQ(kindOf([] { makeEvenState(0, {}, 1); }), ErrorKind::BadDimension);
    EXPECT_EQ(kindOf([] { makeEvenState(3, {0.0, 0.0}, 1); }), ErrorKind::BadDimension);
    EXPECT_EQ(kindOf([] { makeEvenState(3, {0.0, 0.0, 0.0}, 1, 2, 3); }), ErrorKind::BadDimension);
}

TEST(CounterEvolution, IdentityGivesIdentityUpToPhase) {
    EvenState s = makeEvenState(3, {0.2, 0.4, 0.9}, 5, 4, 4);
    CounterEvolution c = counterEvolutionFor(s, UnitaryOperator::identity(4));
    const ComplexMatrix &u = c.environment.matrix();
    const Complex phase = u(0, 0);
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
    EXPECT_NEAR((u - phase * ComplexMatrix::Identity(4, 4)).norm(), 0.0, 1e-10);
}

TEST(CounterEvolution, HadamardOnRankTwo) {
    EvenState s = makeEvenState(2, {0.0, 1.1}, EvenStateBases::computational(2, 2, 2));
    ComplexMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    NoEvolutionReport r = verifyNoLocalEvolution(s, UnitaryOperator(h / std::sqrt(2.0)));
    EXPECT_LT(r.restorationDistance, 1e-10);
    EXPECT_LT(r.reducedDistance, 1e-10);
    EXPECT_TRUE(r.holds());
}

TEST(CounterEvolution, RankFiveHundredRandomUnitaries) {
    EvenState s = makeEvenState(5, {0.0, 1.0, 2.0, 3.0, 4.0}, 12, 7, 6);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        NoEvolutionReport r = verifyNoLocalEvolution(s, randomUnitaryOnSubspace(s.sysBasis(), rng));
        EXPECT_LT(r.restorationDistance, 1e-10);
        EXPECT_LT(r.reducedDistance, 1e-10);
        EXPECT_LT(r.partnerOrthonormalityError, 1e-10);
    }
}

TEST(CounterEvolution, PermutationOnRankThree) {
    EvenState s = makeEvenState(3, {0.5, 0.0, 2.5}, EvenStateBases::computational(3, 3, 3));
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p(1, 0) = 1.0;
    p(2, 1) = 1.0;
    p(0, 2) = 1.0;
    NoEvolutionReport r = verifyNoLocalEvolution(s, UnitaryOperator(p));
    EXPECT_LT(r.restorationDistance, 1e-10);
    EXPECT_LT(r.reducedDistance, 1e-10);
}

TEST(CounterEvolution, EscapingUnitaryIsRejected) {
    EvenState s = makeEvenState(2, {0.0, 0.0}, EvenStateBases::computational(2, 3, 2));
    ComplexMatrix x = ComplexMatrix::Identity(3, 3);
    x(1, 1) = 0.0;
    x(2, 2) = 0.0;
    x(1, 2) = 1.0;
    x(2, 1) = 1.0;
    EXPECT_EQ(kindOf([&] { counterEvolutionFor(s, UnitaryOperator(x)); }), ErrorKind::SubspaceEscape);
    EXPECT_EQ(kindOf([&] { counterEvolutionFor(s, UnitaryOperator::identity(2)); }), ErrorKind::DimensionMismatch);
}

TEST(CounterEvolution, UnevenStateChangesUnderHadamard) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::sqrt(0.3);
    m(1, 1) = std::sqrt(0.7);
    ComplexMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    EXPECT_GT(reducedOperatorChange(BipartitePureState(m), UnitaryOperator(h / std::sqrt(2.0))), 1e-3);
}

LevelLadder exponentialBath(std::size_t levels, double spacing) {
    LevelLadder bath;
    for (std::size_t j = 0; j < levels; ++j) {
        const double e = spacing * static_cast<double>(j);
        bath.energies.push_back(e);
        bath.degeneracies.push_back(static_cast<std::uint64_t>(std::llround(std::exp(e))));
    }
    return bath;
}

LevelLadder harmonicBath(std::size_t levels) {
    LevelLadder bath;
    for (std::size_t j = 0; j < levels; ++j) {
        bath.energies.push_back(static_cast<double>(j));
        bath.degeneracies.push_back((j + 1) * (j + 2) / 2);
    }
    return bath;
}

TEST(Canonical, SingleLevelHasNoBeta) {
    CanonicalFit fit = canonicalByCounting(LevelLadder{{0.0}, {1}}, harmonicBath(20), 10.0);
    ASSERT_EQ(fit.occupancies.size(), 1u);
    EXPECT_DOUBLE_EQ(fit.occupancies[0], 1.0);
    EXPECT_FALSE(fit.betaDefined);
    EXPECT_FALSE(fit.warnings.empty());
}

TEST(Canonical, ExponentialBathRecoversBeta) {
    CanonicalFit fit = canonicalByCounting(LevelLadder{{0.0, 1.0}, {1, 1}}, exponentialBath(120, 0.25), 25.0);
    ASSERT_TRUE(fit.betaDefined);
    EXPECT_NEAR(fit.beta, 1.0, 0.05);
    EXPECT_GT(fit.rSquared, 0.99);
    EXPECT_EQ(fit.sensitivity.size(), 2u);
    EXPECT_DOUBLE_EQ(fit.window, 0.125);
    double sum = 0.0;
    for (double p : fit.occupancies) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Canonical, HarmonicBathMatchesBruteForceEnumeration) {
    LevelLadder system{{0.0, 1.0, 2.0}, {1, 2, 1}};
    LevelLadder bath = harmonicBath(40);
    for (double total : {20.0, 30.0, 38.0}) {
        CanonicalFit fit = canonicalByCounting(system, bath, total);
        std::uint64_t visited = 0;
        std::vector<std::uint64_t> brute = oracle::bruteForceShellCounts(system, bath, total, fit.window, visited);
        EXPECT_LE(visited, 1000000u);
        EXPECT_EQ(fit.counts, brute);
    }
}

TEST(Canonical, EmptyShellIsExcludedWithWarning) {
    LevelLadder system{{0.0, 0.5, 1.0}, {1, 1, 1}};
    CanonicalFit fit = canonicalByCounting(system, harmonicBath(40), 20.0, 0.2);
    ASSERT_EQ(fit.excludedLevels.size(), 1u);
    EXPECT_EQ(fit.excludedLevels[0], 1u);
    EXPECT_EQ(fit.occupancies[1], 0.0);
    EXPECT_FALSE(fit.warnings.empty());
    EXPECT_TRUE(fit.betaDefined);
}

TEST(Canonical, BathMustDominate) {
    LevelLadder system{{0.0, 1.0, 2.0}, {1, 1, 1}};
    EXPECT_EQ(kindOf([&] { canonicalByCounting(system, harmonicBath(29), 10.0); }), ErrorKind::BadDimension);
    EXPECT_EQ(kindOf([&] { canonicalByCounting(system, harmonicBath(40), 10.0, -1.0); }), ErrorKind::InvalidState);
    EXPECT_EQ(kindOf([] { LevelLadder{{1.0, 0.0}, {1, 1}}.validate(); }), ErrorKind::InvalidState);
}

TEST(Purification, SingleLevelIsProduct) {
    BipartitePureState s = thermalPurification(LevelLadder{{2.0}, {1}}, 1.0);
    EXPECT_EQ(schmidt(s).rank(), 1u);
}

TEST(Purification, TwoLevelsAtLogTwo) {
    BipartitePureState s = thermalPurification(LevelLadder{{0.0, 1.0}, {1, 1}}, std::log(2.0));
    DensityOperator rho = partialTraceE(s);
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(rho.matrix()(1, 1).real(), 1.0 / 3.0, 1e-12);
}

TEST(Purification, AgreesWithTheBoxThermalState) {
    EngineConfig cfg;
    cfg.T = 2.0;  // eps beta = 0.5
    cfg.nTrunc = 50;
    BoxSpectrum box = boxSpectrum(cfg);
    LevelLadder ladder;
    for (const BoxLevel &l : box.levels) {
        ladder.energies.push_back(l.energy);
        ladder.degeneracies.push_back(1);
    }
    BipartitePureState s = thermalPurification(ladder, cfg.beta());
    EXPECT_EQ(s.dimE(), 50u);
    EXPECT_LT(operatorDistance(partialTraceE(s), thermalState(box, cfg.beta()).rho), 1e-10);
}

TEST(Purification, OpenLadderStopsAtTheTail) {
    auto energy = [](std::size_t i) { return static_cast<double>((i + 1) * (i + 1)); };
    BipartitePureState s = thermalPurification(energy, 0.5, 200);
    const std::size_t kept = s.dimE();
    EXPECT_LT(std::exp(-0.5 * energy(kept)) / oracle::boxPartitionDirect(0.5, 400), 1e-12);
    EXPECT_LT(kept, 200u);
    EXPECT_EQ(kindOf([&] { thermalPurification(energy, 0.001, 10); }), ErrorKind::TruncationInsufficient);
}

TEST(Purification, RepurifyingTheSpectrumIsIdempotent) {
    LevelLadder ladder{{0.0, 0.3, 1.2, 2.0}, {1, 1, 1, 1}};
    DensityOperator first = partialTraceE(thermalPurification(ladder, 1.3));
    RealVector p = first.eigenvalues();
    std::vector<double> energies;
    for (Eigen::Index i = p.size() - 1; i >= 0; --i) energies.push_back(-std::log(p(i)) / 1.3);
    const double shift = energies.front();
    for (double &e : energies) e -= shift;
    DensityOperator second = partialTraceE(thermalPurification(LevelLadder{energies, {1, 1, 1, 1}}, 1.3));
    EXPECT_LT(operatorDistance(first, second), 1e-10);
}

}  // namespace
}  // namespace envar
