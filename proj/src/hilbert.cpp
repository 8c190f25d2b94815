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

#include "envar/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace envar {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidState:
            return "InvalidState";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::BasisMismatch:
            return "BasisMismatch";
        case ErrorKind::NotEven:
            return "NotEven";
        case ErrorKind::OverflowGuard:
            return "OverflowGuard";
        case ErrorKind::BadDimension:
            return "BadDimension";
        case ErrorKind::SubspaceEscape:
            return "SubspaceEscape";
        case ErrorKind::TruncationInsufficient:
            return "TruncationInsufficient";
        case ErrorKind::NoBracket:
            return "NoBracket";
        case ErrorKind::LeakyProjector:
            return "LeakyProjector";
        case ErrorKind::ConfigError:
            return "ConfigError";
        case ErrorKind::IoError:
            return "IoError";
    }
    return "Unknown";
}

namespace {

void requireFinite(const ComplexMatrix &m, const char *what) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidState, std::string(what) + " has non-finite entries");
    }
}

std::string describe(double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

}  // namespace

StateVector::StateVector(ComplexVector amps, double tol) : amps_(std::move(amps)) {
    if (amps_.size() == 0) {
        throw Error(ErrorKind::BadDimension, "state vector must have dimension >= 1");
    }
    requireFinite(amps_, "state vector");
    double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > tol) {
        throw Error(ErrorKind::InvalidState, "state vector squared norm " + describe(n2) + " is not 1");
    }
}

StateVector StateVector::normalized(ComplexVector amps) {
    if (amps.size() == 0) {
        throw Error(ErrorKind::BadDimension, "state vector must have dimension >= 1");
    }
    requireFinite(amps, "state vector");
    double n = amps.norm();
    if (n == 0.0) {
        throw Error(ErrorKind::InvalidState, "cannot normalize the zero vector");
    }
    return StateVector(amps / n);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

BipartitePureState::BipartitePureState(ComplexMatrix amps, double tol) : amps_(std::move(amps)) {
    if (amps_.rows() == 0 || amps_.cols() == 0) {
        throw Error(ErrorKind::BadDimension, "bipartite state needs dimS, dimE >= 1");
    }
    requireFinite(amps_, "bipartite state");
    double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > tol) {
        throw Error(ErrorKind::InvalidState, "bipartite state squared norm " + describe(n2) + " is not 1");
    }
}

BipartitePureState BipartitePureState::normalized(ComplexMatrix amps) {
    if (amps.rows() == 0 || amps.cols() == 0) {
        throw Error(ErrorKind::BadDimension, "bipartite state needs dimS, dimE >= 1");
    }
    requireFinite(amps, "bipartite state");
    double n = amps.norm();
    if (n == 0.0) {
        throw Error(ErrorKind::InvalidState, "cannot normalize the zero state");
    }
    return BipartitePureState(amps / n);
}

BipartitePureState BipartitePureState::fromVector(const StateVector &flat, std::size_t dimS, std::size_t dimE) {
    if (flat.dim() != dimS * dimE) {
        throw Error(ErrorKind::DimensionMismatch, "flat state dimension does not equal dimS * dimE");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(dimS), static_cast<Eigen::Index>(dimE));
    for (std::size_t j = 0; j < dimS; ++j) {
        for (std::size_t k = 0; k < dimE; ++k) {
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = flat[j * dimE + k];
        }
    }
    return BipartitePureState(std::move(m));
}

StateVector BipartitePureState::flatten() const {
    ComplexVector v(amps_.size());
    for (Eigen::Index j = 0; j < amps_.rows(); ++j) {
        for (Eigen::Index k = 0; k < amps_.cols(); ++k) {
            v(j * amps_.cols() + k) = amps_(j, k);
        }
    }
    return StateVector(std::move(v));
}

BipartitePureState BipartitePureState::exchanged() const { return BipartitePureState(amps_.transpose()); }

UnitaryOperator::UnitaryOperator(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorKind::BadDimension, "unitary must be square with dimension >= 1");
    }
    requireFinite(matrix_, "unitary");
    ComplexMatrix defect = matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(matrix_.rows(), matrix_.cols());
    double worst = defect.cwiseAbs().maxCoeff();
    if (worst > tol) {
        throw Error(ErrorKind::InvalidState, "operator is not unitary (max |U'U - 1| = " + describe(worst) + ")");
    }
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    return UnitaryOperator(ComplexMatrix::Identity(n, n));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

UnitaryOperator UnitaryOperator::after(const UnitaryOperator &first) const {
    if (first.dim() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "cannot compose unitaries of different dimension");
    }
    return UnitaryOperator(matrix_ * first.matrix_);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, const Tolerances &tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorKind::BadDimension, "density operator must be square with dimension >= 1");
    }
    requireFinite(matrix_, "density operator");
    double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol.construction) {
        throw Error(ErrorKind::InvalidState, "density operator is not Hermitian (" + describe(asym) + ")");
    }
    Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.decomposition) {
        throw Error(ErrorKind::InvalidState, "density operator trace " + describe(tr.real()) + " is not 1");
    }
    double lowest = eigenvalues()(0);
    if (lowest < -tol.eigenClamp) {
        throw Error(ErrorKind::InvalidState, "density operator has eigenvalue " + describe(lowest));
    }
}

DensityOperator DensityOperator::pure(const StateVector &psi) {
    return DensityOperator(psi.amps() * psi.amps().adjoint());
}

DensityOperator DensityOperator::diagonal(const RealVector &probabilities) {
    return DensityOperator(probabilities.cast<Complex>().asDiagonal().toDenseMatrix());
}

RealVector DensityOperator::eigenvalues() const {
    // Symmetrize so rounding-level anti-Hermitian noise never reaches the solver.
    ComplexMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

BipartitePureState SchmidtForm::reconstruct() const {
    if (coeffs.empty()) {
        throw Error(ErrorKind::InvalidState, "empty Schmidt form");
    }
    auto dimS = static_cast<Eigen::Index>(sysBasis.front().dim());
    auto dimE = static_cast<Eigen::Index>(envBasis.front().dim());
    ComplexMatrix m = ComplexMatrix::Zero(dimS, dimE);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Complex c = std::polar(coeffs[k], phases[k]);
        m += c * sysBasis[k].amps() * envBasis[k].amps().transpose();
    }
    return BipartitePureState::normalized(std::move(m));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    ComplexVector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
    for (std::size_t j = 0; j < a.dim(); ++j) {
        for (std::size_t k = 0; k < b.dim(); ++k) {
            v(static_cast<Eigen::Index>(j * b.dim() + k)) = a[j] * b[k];
        }
    }
    return StateVector::normalized(std::move(v));
}

namespace {

// Rotates v so its largest-magnitude entry is real and positive; returns the removed phase.
double fixGauge(ComplexVector &v) {
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    double theta = std::arg(v(at));
    v *= std::polar(1.0, -theta);
    return theta;
}

}  // namespace

SchmidtForm schmidt(const BipartitePureState &state, double tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(state.amps(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector &sigma = svd.singularValues();
    const ComplexMatrix &u = svd.matrixU();
    const ComplexMatrix &v = svd.matrixV();

    SchmidtForm form;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        if (sigma(k) <= tol) {
            break;
        }
        // amps = sum_k sigma_k u_k v_k^dagger, so the environment partner is conj(v_k).
        ComplexVector s = u.col(k);
        ComplexVector e = v.col(k).conjugate();
        double phase = fixGauge(s) + fixGauge(e);
        form.coeffs.push_back(sigma(k));
        form.phases.push_back(std::remainder(phase, 2.0 * M_PI));
        form.sysBasis.push_back(StateVector::normalized(std::move(s)));
        form.envBasis.push_back(StateVector::normalized(std::move(e)));
    }
    for (std::size_t k = 1; k < form.coeffs.size(); ++k) {
        if (form.coeffs[k - 1] - form.coeffs[k] < tol) {
            form.degenerate = true;
        }
    }
    return form;
}

DensityOperator partialTraceE(const BipartitePureState &state) {
    const ComplexMatrix &m = state.amps();
    return DensityOperator(m * m.adjoint());
}

DensityOperator partialTraceS(const BipartitePureState &state) {
    const ComplexMatrix &m = state.amps();
    return DensityOperator(m.transpose() * m.conjugate());
}

double vonNeumannEntropy(const DensityOperator &rho, const Tolerances &tol) {
    RealVector lambda = rho.eigenvalues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        double l = lambda(i);
        if (l < -tol.eigenClamp) {
            throw Error(ErrorKind::InvalidState, "negative eigenvalue " + describe(l) + " in entropy");
        }
        if (l >= 1e-14) {
            s -= l * std::log(l);
        }
    }
    return std::max(s, 0.0);
}

BipartitePureState applyLocal(const BipartitePureState &state, const UnitaryOperator &u, Side side) {
    if (side == Side::System) {
        if (u.dim() != state.dimS()) {
            throw Error(ErrorKind::DimensionMismatch, "unitary dimension does not match the system");
        }
        return BipartitePureState(u.matrix() * state.amps());
    }
    if (u.dim() != state.dimE()) {
        throw Error(ErrorKind::DimensionMismatch, "unitary dimension does not match the environment");
    }
    return BipartitePureState(state.amps() * u.matrix().transpose());
}

double stateDistance(const BipartitePureState &a, const BipartitePureState &b) {
    if (a.dimS() != b.dimS() || a.dimE() != b.dimE()) {
        throw Error(ErrorKind::DimensionMismatch, "states have different shapes");
    }
    return (a.amps() - b.amps()).norm();
}

double operatorDistance(const DensityOperator &a, const DensityOperator &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "operators have different dimensions");
    }
    return (a.matrix() - b.matrix()).norm();
}

namespace {

ComplexMatrix gaussianMatrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace

StateVector randomState(std::size_t dim, std::mt19937_64 &rng) {
    ComplexMatrix g = gaussianMatrix(dim, 1, rng);
    return StateVector::normalized(g.col(0));
}

BipartitePureState randomBipartite(std::size_t dimS, std::size_t dimE, std::mt19937_64 &rng) {
    return BipartitePureState::normalized(gaussianMatrix(dimS, dimE, rng));
}

ComplexMatrix randomIsometry(std::size_t dim, std::size_t count, std::mt19937_64 &rng) {
    if (count > dim || dim == 0) {
        throw Error(ErrorKind::BadDimension, "isometry needs 1 <= count <= dim");
    }
    ComplexMatrix g = gaussianMatrix(dim, count, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < g.cols(); ++k) {
        Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

UnitaryOperator randomUnitary(std::size_t dim, std::mt19937_64 &rng) {
    return UnitaryOperator(randomIsometry(dim, dim, rng));
}

}  // namespace envar
