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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "envar/hilbert.hpp"

namespace envar {

/// Orthonormal columns: `sys` is dimS x K, `env` is dimE x K.
struct EvenStateBases {
    ComplexMatrix sys;
    ComplexMatrix env;

    static EvenStateBases computational(std::size_t K, std::size_t dimS, std::size_t dimE);
    static EvenStateBases random(std::size_t K, std::size_t dimS, std::size_t dimE, std::uint64_t seed);
};

/// sum_k e^{i phi_k} |s_k>|eps_k> / sqrt(K). Construction checks that every
/// Schmidt coefficient is 1/sqrt(K) and that the reduced state is the identity
/// on span{s_k} divided by K.
class EvenState {
   public:
    EvenState(std::vector<double> phases, EvenStateBases bases, const Tolerances &tol = Tolerances{});

    std::size_t rank() const { return phases_.size(); }
    const std::vector<double> &phases() const { return phases_; }
    const ComplexMatrix &sysBasis() const { return bases_.sys; }
    const ComplexMatrix &envBasis() const { return bases_.env; }
    const BipartitePureState &state() const { return state_; }

   private:
    std::vector<double> phases_;
    EvenStateBases bases_;
    BipartitePureState state_;
};

/// Throws BadDimension for K = 0, a phase list of the wrong length, or bases
/// narrower than K.
EvenState makeEvenState(std::size_t K, const std::vector<double> &phases, const EvenStateBases &bases);
/// Bases drawn from the Haar measure with the given seed; dimS = dimE = K when omitted.
EvenState makeEvenState(std::size_t K, const std::vector<double> &phases, std::uint64_t seed,
                        std::size_t dimS = 0, std::size_t dimE = 0);

struct CounterEvolution {
    UnitaryOperator environment;
    /// max |<eps~_k|eps~_l> - delta_kl| over the rotated environment partners.
    double partnerOrthonormalityError = 0.0;
};

/// Builds u_E restoring the state after uS acts on the system. The rotated
/// partners eps~_l = sum_k e^{i phi_k} <s~_l|s_k> eps_k, with s~_l = uS s_l,
/// are orthonormal because the state is even; u_E maps e^{i phi_l} eps_l to eps~_l.
/// Throws SubspaceEscape when uS does not map span{s_k} into itself.
CounterEvolution counterEvolutionFor(const EvenState &state, const UnitaryOperator &uS,
                                     const Tolerances &tol = Tolerances{});

struct NoEvolutionReport {
    /// ||rho_S(after uS) - rho_S(before)||_F
    double reducedDistance = 0.0;
    /// ||u_E uS |Psi> - |Psi>||
    double restorationDistance = 0.0;
    double partnerOrthonormalityError = 0.0;

    bool holds(const Tolerances &tol = Tolerances{}) const {
        return reducedDistance < tol.decomposition && restorationDistance < tol.decomposition &&
               partnerOrthonormalityError < tol.decomposition;
    }
};

NoEvolutionReport verifyNoLocalEvolution(const EvenState &state, const UnitaryOperator &uS,
                                         const Tolerances &tol = Tolerances{});

/// ||rho_S(uS |Psi>) - rho_S(|Psi>)||_F for any state; the negative control for uneven states.
double reducedOperatorChange(const BipartitePureState &state, const UnitaryOperator &uS);

/// V W V^dagger + (1 - V V^dagger) with W Haar on the span of V's orthonormal columns.
UnitaryOperator randomUnitaryOnSubspace(const ComplexMatrix &basis, std::mt19937_64 &rng);

struct LevelLadder {
    std::vector<double> energies;
    std::vector<std::uint64_t> degeneracies;

    std::size_t levels() const { return energies.size(); }
    std::uint64_t microstates() const;
    /// Throws InvalidState on unsorted energies, zero degeneracies, or a size mismatch.
    void validate() const;
};

struct WindowSensitivity {
    double window = 0.0;
    double beta = 0.0;
    bool betaDefined = false;
};

struct CanonicalFit {
    double beta = 0.0;
    bool betaDefined = false;
    double rSquared = 0.0;
    /// Normalized over all system levels; excluded levels carry 0.
    std::vector<double> occupancies;
    /// Joint microstates in the shell per system level: g_k * sum of in-window bath degeneracies.
    std::vector<std::uint64_t> counts;
    std::vector<std::size_t> excludedLevels;
    std::vector<std::string> warnings;
    double window = 0.0;
    /// Refits at half and double the window.
    std::vector<WindowSensitivity> sensitivity;
};

/// Half of the smallest positive spacing between bath levels.
double defaultWindow(const LevelLadder &bath);

/// Microcanonical shell counting followed by a count-weighted least-squares fit
/// of ln(occupancy_k / g_k) against -E_k. Requires at least ten times as many
/// bath levels as system levels (BadDimension otherwise).
CanonicalFit canonicalByCounting(const LevelLadder &system, const LevelLadder &bath, double totalEnergy,
                                 std::optional<double> window = std::nullopt);

/// sum_k e^{-beta E_k / 2} |sigma_k>|eps_k> / sqrt(Z), one branch per microstate
/// of the ladder. The ladder is taken as the complete spectrum.
BipartitePureState thermalPurification(const LevelLadder &system, double beta);

/// Same, for an unbounded spectrum given level by level. Levels are added until
/// the estimated remaining weight drops below `tailWeight`; TruncationInsufficient
/// if that needs more than maxLevels.
BipartitePureState thermalPurification(const std::function<double(std::size_t)> &levelEnergy, double beta,
                                       std::size_t maxLevels, double tailWeight = 1e-12);

}  // namespace envar
