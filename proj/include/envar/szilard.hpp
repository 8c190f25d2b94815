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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "envar/hilbert.hpp"

namespace envar {

/// One-molecule engine: a particle of mass m in a box of length L with an optional
/// centered barrier of width d and height U. U may be +infinity.
struct EngineConfig {
    double m = 0.5;
    double L = std::numbers::pi;
    double d = 0.01 * std::numbers::pi;
    double U = std::numeric_limits<double>::infinity();
    double T = 1000.0;
    double hbar = 1.0;
    double kB = 1.0;
    /// Box levels kept; 0 selects the smallest count meeting the thermal tail and
    /// measurement-resolution requirements.
    std::size_t nTrunc = 0;

    double beta() const { return 1.0 / (kB * T); }
    double kT() const { return kB * T; }
    double epsilon() const { return std::numbers::pi * std::numbers::pi * hbar * hbar / (2.0 * m * L * L); }
    double epsilonPrime() const { return epsilon() * L * L / ((L - d) * (L - d)); }
    bool infiniteBarrier() const { return std::isinf(U); }
    std::size_t levelCount() const;
    /// Throws InvalidState on non-physical values or d/L > 0.05.
    void validate() const;
};

/// Smallest n with exp(-beta eps n^2) < 1e-12.
std::size_t thermalTailLevels(double epsBeta);
/// Smallest N with N^2 eps beta >= 20.
std::size_t resolvingLevels(double epsBeta);

enum class Parity { Even, Odd };

struct BoxLevel {
    std::size_t n = 0;
    double energy = 0.0;
    Parity parity = Parity::Even;
};

struct BoxSpectrum {
    double epsilon = 0.0;
    std::vector<BoxLevel> levels;
};

BoxSpectrum boxSpectrum(const EngineConfig &cfg);

struct ThermalState {
    DensityOperator rho;
    double Z = 0.0;
};

/// Gibbs state over the retained levels. Throws TruncationInsufficient when the
/// neglected Boltzmann weight exceeds 1e-12 of Z.
ThermalState thermalState(const BoxSpectrum &spec, double beta);

/// sum_n exp(-beta E_n) over the retained levels.
double partitionSum(const BoxSpectrum &spec, double beta);

enum class SplitMode { Formula, Numeric, Infinite };

std::string_view to_string(SplitMode mode);

/// Near-degenerate pair k: psi- at lower = E - Delta, psi+ at upper = E + Delta.
struct SplitPair {
    std::size_t k = 0;
    double energy = 0.0;
    double delta = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct SplitSpectrum {
    double epsilonPrime = 0.0;
    std::vector<SplitPair> pairs;
    SplitMode source = SplitMode::Infinite;
    /// Pairs dropped because they sit above the barrier, and pairs with Delta/E >= 0.1.
    std::vector<std::string> flags;

    std::size_t size() const { return pairs.size(); }
};

/// Formula: E_k = eps' (2k)^2 with Delta_k = (4 eps'/pi) exp(-d sqrt(2m(U - E_k))/hbar).
/// Numeric: parity matching conditions solved by bisection.
/// A numeric request with U = inf returns the two-well limit.
SplitSpectrum splitSpectrum(const EngineConfig &cfg, SplitMode mode, std::size_t pairs = 0);

/// Unnormalized eigenfunction at energy E on [-L/2, L/2]. It leaves the left wall with
/// positive slope; Even is symmetric, Odd antisymmetric.
double wavefunction(const EngineConfig &cfg, double energy, Parity parity, double x);

/// Columns are |L_k>, |R_k> expressed in the [psi+_k, psi-_k] basis.
UnitaryOperator basisChange(const SplitSpectrum &split);

enum class ThermalBasis { Energy, LR };

/// Ordering: energy basis [psi+_1, psi-_1, psi+_2, ...]; LR basis [L_1, R_1, L_2, ...].
DensityOperator barrierThermalState(const SplitSpectrum &split, double beta, ThermalBasis basis);

/// sum_k 2 exp(-beta E_k) cosh(beta Delta_k).
double barrierPartitionSum(const SplitSpectrum &split, double beta);

enum class WellSide { Left, Right };

std::string_view to_string(WellSide side);

struct MeasurementOutcome {
    WellSide side = WellSide::Left;
    double probability = 0.0;
    /// Empty when the outcome has zero probability.
    std::optional<DensityOperator> postState;
};

/// Projective which-side measurement using L_k, R_k with k <= N on an LR-basis state.
/// Throws LeakyProjector when Tr((L+R) rho) < 1 - leakTolerance.
std::pair<MeasurementOutcome, MeasurementOutcome> measureSide(const DensityOperator &rhoLR, std::size_t N,
                                                              double leakTolerance = 1e-6);

/// Smallest N with N^2 eps beta >= minResolution and leakage below 1e-6.
std::size_t defaultMeasurementLevels(const DensityOperator &rhoLR, double epsBeta, double minResolution = 20.0);

struct LedgerEntry {
    std::string step;
    /// State after the step.
    double freeEnergy = 0.0;
    double entropy = 0.0;
    /// Work done on the system and heat absorbed by it during the step.
    double work = 0.0;
    double heat = 0.0;
    double energyChange = 0.0;

    double firstLawResidual() const { return std::abs(energyChange - (heat + work)); }
};

struct FreeEnergyLedger {
    std::vector<LedgerEntry> entries;
    SplitMode mode = SplitMode::Infinite;
    double Z = 0.0;
    double Ztilde = 0.0;
    double A = 0.0;
    double Atilde = 0.0;
    double AL = 0.0;
    double AR = 0.0;
    double deltaA = 0.0;
    /// Atilde - A from the exact sums, and k_BT ln(L/(L-d)).
    double insertionShift = 0.0;
    double insertionShiftClosedForm = 0.0;
    double entropyBox = 0.0;
    double entropyBarrier = 0.0;
    double entropyLeft = 0.0;
    double entropyRight = 0.0;
    double pL = 0.0;
    double pR = 0.0;
    /// Probability that an immediate repeat on the post-measurement state gives the same side.
    double repeatProbability = 0.0;
    /// S(rho~) - [pL S(rho_L) + pR S(rho_R) + H(pL, pR)]
    double entropyDecompositionResidual = 0.0;
    double expansionWorkClosedForm = 0.0;
    double netWork = 0.0;
    std::size_t measurementLevels = 0;
    std::size_t boxLevels = 0;
    std::size_t pairs = 0;
    /// Set when eps beta > 0.01; the closed-form comparisons do not apply.
    bool regimeViolation = false;
    std::vector<std::string> flags;

    double maxFirstLawResidual() const;
};

/// Insert barrier, measure side, expand, erase. U = inf uses the two-well limit,
/// finite U the numeric split.
FreeEnergyLedger freeEnergyLedger(const EngineConfig &cfg);

struct ClassicalSample {
    double x = 0.0;
    WellSide side = WellSide::Left;
    double insertionDeltaA = 0.0;
    double insertionWork = 0.0;
    double expandWork = 0.0;
    double eraseWork = 0.0;
    double netWork = 0.0;
};

struct ClassicalCycle {
    std::vector<ClassicalSample> samples;
    double leftFraction = 0.0;
    /// Ensemble bookkeeping: insertion leaves A unchanged once the observer's ignorance
    /// entropy ln 2 is counted; the measurement carries delta A = k_BT ln 2.
    FreeEnergyLedger ensemble;
    double maxAbsNetWork = 0.0;
};

ClassicalCycle classicalEnsembleCycle(const EngineConfig &cfg, std::size_t samples, std::uint64_t seed);

struct ContrastFlag {
    double classicalInsertion = 0.0;
    double quantumInsertion = 0.0;
    /// Classical insertion equals k_BT ln 2 and |quantum insertion| <= 0.1 k_BT ln 2.
    bool confirmed = false;
};

ContrastFlag insertionContrast(const ClassicalCycle &classical, const FreeEnergyLedger &quantum, double kT);

}  // namespace envar
