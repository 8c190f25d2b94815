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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "envar/error.hpp"

namespace envar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// One tolerance record shared by every module. The ladder runs from tight
/// construction checks, through decomposition/restoration checks, to the looser
/// physics comparisons.
struct Tolerances {
    double construction = 1e-12;
    double decomposition = 1e-10;
    double physics = 1e-8;
    /// Relative difference of squared Schmidt coefficients below which two
    /// branches count as even.
    double evenness = 1e-8;
    /// Eigenvalues in [-eigenClamp, 0) are treated as exact zeros.
    double eigenClamp = 1e-10;
};

enum class Side { System, Environment };

/// Normalized pure state of a single register.
class StateVector {
   public:
    /// Throws InvalidState unless the squared norm is 1 within `tol`.
    explicit StateVector(ComplexVector amps, double tol = Tolerances{}.construction);

    /// Rescales to unit norm; throws InvalidState on a zero or non-finite vector.
    static StateVector normalized(ComplexVector amps);
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const ComplexVector &amps() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

   private:
    ComplexVector amps_;
};

/// |Psi_SE> stored as a dimS x dimE amplitude matrix; entry (j, k) multiplies |j>_S |k>_E.
class BipartitePureState {
   public:
    explicit BipartitePureState(ComplexMatrix amps, double tol = Tolerances{}.construction);

    static BipartitePureState normalized(ComplexMatrix amps);
    /// Reshapes a flat vector over S (x) E with the environment index running fastest.
    static BipartitePureState fromVector(const StateVector &flat, std::size_t dimS, std::size_t dimE);

    std::size_t dimS() const { return static_cast<std::size_t>(amps_.rows()); }
    std::size_t dimE() const { return static_cast<std::size_t>(amps_.cols()); }
    const ComplexMatrix &amps() const { return amps_; }

    StateVector flatten() const;
    /// Same state with the roles of system and environment exchanged.
    BipartitePureState exchanged() const;

   private:
    ComplexMatrix amps_;
};

class UnitaryOperator {
   public:
    /// Throws InvalidState unless U^dagger U = 1 elementwise within `tol`.
    explicit UnitaryOperator(ComplexMatrix matrix, double tol = Tolerances{}.decomposition);

    static UnitaryOperator identity(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix &matrix() const { return matrix_; }
    UnitaryOperator adjoint() const;
    /// (*this) after `first`: the product matrix() * first.matrix().
    UnitaryOperator after(const UnitaryOperator &first) const;

   private:
    ComplexMatrix matrix_;
};

class DensityOperator {
   public:
    /// Validates Hermiticity, unit trace and positivity against `tol`.
    explicit DensityOperator(ComplexMatrix matrix, const Tolerances &tol = Tolerances{});

    static DensityOperator pure(const StateVector &psi);
    static DensityOperator diagonal(const RealVector &probabilities);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix &matrix() const { return matrix_; }
    /// Ascending eigenvalues.
    RealVector eigenvalues() const;

   private:
    ComplexMatrix matrix_;
};

struct SchmidtForm {
    /// Nonnegative, sorted descending.
    std::vector<double> coeffs;
    /// Radians; branch k carries coeffs[k] * exp(i phases[k]).
    std::vector<double> phases;
    std::vector<StateVector> sysBasis;
    std::vector<StateVector> envBasis;
    /// Set when two retained coefficients differ by less than the decomposition
    /// tolerance. The bases are then only defined up to a unitary inside the
    /// degenerate block; compare reconstructions, not bases.
    bool degenerate = false;

    std::size_t rank() const { return coeffs.size(); }
    BipartitePureState reconstruct() const;
};

StateVector tensor(const StateVector &a, const StateVector &b);

SchmidtForm schmidt(const BipartitePureState &state, double tol = Tolerances{}.decomposition);

/// rho_S = Tr_E |Psi><Psi|.
DensityOperator partialTraceE(const BipartitePureState &state);
/// rho_E = Tr_S |Psi><Psi|.
DensityOperator partialTraceS(const BipartitePureState &state);

/// -sum lambda ln lambda in nats.
double vonNeumannEntropy(const DensityOperator &rho, const Tolerances &tol = Tolerances{});

/// Applies u on one factor. Throws DimensionMismatch when u does not fit that side.
BipartitePureState applyLocal(const BipartitePureState &state, const UnitaryOperator &u, Side side);

/// Frobenius norm of the amplitude difference (global phase is not modded out).
double stateDistance(const BipartitePureState &a, const BipartitePureState &b);
double operatorDistance(const DensityOperator &a, const DensityOperator &b);

// Seeded random instances. All draws use complex Gaussians, so they are
// unitarily invariant.
StateVector randomState(std::size_t dim, std::mt19937_64 &rng);
BipartitePureState randomBipartite(std::size_t dimS, std::size_t dimE, std::mt19937_64 &rng);
/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
UnitaryOperator randomUnitary(std::size_t dim, std::mt19937_64 &rng);
/// dim x count matrix with orthonormal columns.
ComplexMatrix randomIsometry(std::size_t dim, std::size_t count, std::mt19937_64 &rng);

}  // namespace envar
