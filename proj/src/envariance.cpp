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

#include "envar/envariance.hpp"

#include <cmath>
#include <numeric>

namespace envar {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw Error(ErrorKind::InvalidState, "rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    // Denominators stay below 2^31 in this library, so the cross products fit.
    return a.num_ * b.den_ <=> b.num_ * a.den_;
}

namespace {

void requireOrthonormal(const std::vector<StateVector> &basis, double tol) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].dim() != basis.front().dim()) {
            throw Error(ErrorKind::DimensionMismatch, "basis vectors have different dimensions");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(basis[j].amps().dot(basis[i].amps())) > tol) {
                throw Error(ErrorKind::InvalidState, "basis is not orthonormal");
            }
        }
    }
}

ComplexMatrix columns(const std::vector<StateVector> &basis) {
    ComplexMatrix m(static_cast<Eigen::Index>(basis.front().dim()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) = basis[k].amps();
    }
    return m;
}

// I - |x><x| - |y><y| + w |y><x| + conj(w) |x><y| for orthonormal x, y and |w| = 1.
void addTransposition(ComplexMatrix &u, const ComplexVector &x, const ComplexVector &y, Complex w) {
    u -= x * x.adjoint() + y * y.adjoint();
    u += w * y * x.adjoint() + std::conj(w) * x * y.adjoint();
}

}  // namespace

UnitaryOperator PhaseShift::toUnitary() const {
    if (basis.empty()) {
        throw Error(ErrorKind::BadDimension, "phase shift needs at least one basis state");
    }
    if (phases.size() != basis.size()) {
        throw Error(ErrorKind::DimensionMismatch, "phase shift needs one phase per basis state");
    }
    requireOrthonormal(basis, Tolerances{}.decomposition);
    auto n = static_cast<Eigen::Index>(basis.front().dim());
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const ComplexVector &b = basis[k].amps();
        u += (std::polar(1.0, phases[k]) - 1.0) * b * b.adjoint();
    }
    return UnitaryOperator(std::move(u));
}

PhaseShift PhaseShift::inverse() const {
    PhaseShift inv = *this;
    for (double &p : inv.phases) {
        p = -p;
    }
    return inv;
}

void SwapSpec::validate(std::size_t rank) const {
    std::vector<bool> used(rank, false);
    for (const auto &[k, l] : pairs) {
        if (k >= rank || l >= rank) {
            throw Error(ErrorKind::DimensionMismatch, "swap index exceeds the Schmidt rank");
        }
        if (k == l || used[k] || used[l]) {
            throw Error(ErrorKind::DimensionMismatch, "swap indices must be distinct within and across pairs");
        }
        used[k] = used[l] = true;
    }
    if (scope == SwapScope::Full) {
        for (bool u : used) {
            if (!u) {
                throw Error(ErrorKind::DimensionMismatch, "full swap must move every Schmidt branch");
            }
        }
    }
}

UnitaryOperator countershiftFor(const BipartitePureState &state, const PhaseShift &shift, const Tolerances &tol) {
    if (shift.basis.empty() || shift.basis.front().dim() != state.dimS()) {
        throw Error(ErrorKind::DimensionMismatch, "shift basis does not live on the system");
    }
    if (shift.phases.size() != shift.basis.size()) {
        throw Error(ErrorKind::DimensionMismatch, "phase shift needs one phase per basis state");
    }
    requireOrthonormal(shift.basis, tol.decomposition);

    const ComplexMatrix &m = state.amps();
    ComplexMatrix b = columns(shift.basis);
    // Conditional environment states w_k = (<b_k| (x) 1)|Psi>, one per column.
    ComplexMatrix w = m.transpose() * b.conjugate();
    ComplexMatrix rest = m - b * (b.adjoint() * m);

    std::vector<Eigen::Index> live;
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
        double norm = w.col(k).norm();
        if (norm > tol.decomposition) {
            w.col(k) /= norm;
            live.push_back(k);
        }
    }
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(w.col(live[j]).dot(w.col(live[i]))) > tol.physics) {
                throw Error(ErrorKind::BasisMismatch, "shift basis is not Schmidt-aligned with the state");
            }
        }
        if ((rest * w.col(live[i]).conjugate()).norm() > tol.physics) {
            throw Error(ErrorKind::BasisMismatch, "shift basis branch shares environment support with the complement");
        }
    }

    // Orthonormalize the aligned partners exactly so the countershift is unitary to rounding.
    ComplexMatrix partners(w.rows(), static_cast<Eigen::Index>(live.size()));
    for (std::size_t i = 0; i < live.size(); ++i) {
        ComplexVector v = w.col(live[i]);
        for (std::size_t j = 0; j < i; ++j) {
            v -= partners.col(static_cast<Eigen::Index>(j)).dot(v) * partners.col(static_cast<Eigen::Index>(j));
        }
        partners.col(static_cast<Eigen::Index>(i)) = v.normalized();
    }

    auto n = static_cast<Eigen::Index>(state.dimE());
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    for (std::size_t i = 0; i < live.size(); ++i) {
        const auto p = partners.col(static_cast<Eigen::Index>(i));
        u += (std::polar(1.0, -shift.phases[static_cast<std::size_t>(live[i])]) - 1.0) * p * p.adjoint();
    }
    UnitaryOperator countershift(std::move(u));

    BipartitePureState restored =
        applyLocal(applyLocal(state, shift.toUnitary(), Side::System), countershift, Side::Environment);
    if (stateDistance(restored, state) > tol.decomposition) {
        throw Error(ErrorKind::BasisMismatch, "countershift does not restore the state");
    }
    return countershift;
}

UnitaryOperator swapOnSystem(const BipartitePureState &state, const SwapSpec &swap, const Tolerances &tol) {
    SchmidtForm form = schmidt(state, tol.decomposition);
    swap.validate(form.rank());
    auto n = static_cast<Eigen::Index>(state.dimS());
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    for (const auto &[k, l] : swap.pairs) {
        addTransposition(u, form.sysBasis[k].amps(), form.sysBasis[l].amps(), 1.0);
    }
    return UnitaryOperator(std::move(u));
}

UnitaryOperator counterswapFor(const BipartitePureState &state, const SwapSpec &swap, const Tolerances &tol) {
    SchmidtForm form = schmidt(state, tol.decomposition);
    swap.validate(form.rank());
    auto n = static_cast<Eigen::Index>(state.dimE());
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    for (const auto &[k, l] : swap.pairs) {
        double pk = form.coeffs[k] * form.coeffs[k];
        double pl = form.coeffs[l] * form.coeffs[l];
        if (std::abs(pk - pl) > tol.evenness * std::max(pk, pl)) {
            throw Error(ErrorKind::NotEven, "branches " + std::to_string(k) + " and " + std::to_string(l) +
                                                " have unequal Schmidt coefficients");
        }
        addTransposition(u, form.envBasis[k].amps(), form.envBasis[l].amps(),
                         std::polar(1.0, form.phases[l] - form.phases[k]));
    }
    return UnitaryOperator(std::move(u));
}

SwapCertifier::SwapCertifier(const BipartitePureState &state, SchmidtForm branches, const Tolerances &tol)
    : branches_(std::move(branches)), tol_(tol) {
    if (branches_.rank() == 0) {
        throw Error(ErrorKind::InvalidState, "empty branch decomposition");
    }
    if (branches_.sysBasis.front().dim() != state.dimS() || branches_.envBasis.front().dim() != state.dimE()) {
        throw Error(ErrorKind::DimensionMismatch, "branch decomposition does not match the state shape");
    }
    requireOrthonormal(branches_.sysBasis, tol_.decomposition);
    requireOrthonormal(branches_.envBasis, tol_.decomposition);
    if (stateDistance(branches_.reconstruct(), state) > tol_.decomposition) {
        throw Error(ErrorKind::InvalidState, "branch decomposition does not reconstruct the state");
    }
}

double SwapCertifier::restorationDistance(std::size_t k, std::size_t l) const {
    const std::size_t r = rank();
    if (k >= r || l >= r) {
        throw Error(ErrorKind::DimensionMismatch, "certificate index exceeds the Schmidt rank");
    }
    auto n = static_cast<Eigen::Index>(r);
    auto ik = static_cast<Eigen::Index>(k);
    auto il = static_cast<Eigen::Index>(l);
    // In Schmidt coordinates the state is diag(c_j e^{i phi_j}); both bases are
    // isometries, so distances computed here equal distances in the full space.
    ComplexMatrix original = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        auto jj = static_cast<std::size_t>(j);
        original(j, j) = std::polar(branches_.coeffs[jj], branches_.phases[jj]);
    }
    // Swap on the system: s_k <-> s_l exchanges rows.
    ComplexMatrix moved = original;
    moved.row(ik).swap(moved.row(il));
    // Mirrored counterswap on the environment: eps_k -> w eps_l, eps_l -> conj(w) eps_k.
    Complex w = std::polar(1.0, branches_.phases[l] - branches_.phases[k]);
    ComplexVector colK = moved.col(ik);
    ComplexVector colL = moved.col(il);
    moved.col(il) = w * colK;
    moved.col(ik) = std::conj(w) * colL;
    if (k == l) {
        moved = original;
    }
    return (moved - original).norm();
}

bool SwapCertifier::certify(std::size_t k, std::size_t l) const {
    return restorationDistance(k, l) < tol_.decomposition;
}

bool equalProbabilityCertificate(const BipartitePureState &state, std::size_t k, std::size_t l,
                                 const Tolerances &tol) {
    SwapCertifier certifier(state, schmidt(state, tol.decomposition), tol);
    return certifier.certify(k, l);
}

FinegrainResult finegrainBornRule(const FinegrainSpec &spec, std::size_t maxBranches) {
    if (spec.mu < 1 || spec.nu < 1) {
        throw Error(ErrorKind::BadDimension, "finegraining needs mu, nu >= 1");
    }
    const std::int64_t total = spec.mu + spec.nu;
    if (static_cast<std::uint64_t>(total) > maxBranches) {
        throw Error(ErrorKind::OverflowGuard, "mu + nu = " + std::to_string(total) + " exceeds the branch limit " +
                                                  std::to_string(maxBranches));
    }
    const auto n = static_cast<Eigen::Index>(total);
    const auto mu = static_cast<Eigen::Index>(spec.mu);
    const double amp = 1.0 / std::sqrt(static_cast<double>(total));

    // Coarse state over S | A with |A_up> = sum_{k<mu} |a_k>/sqrt(mu), |A_down> likewise.
    const double alpha = std::sqrt(static_cast<double>(spec.mu) / static_cast<double>(total));
    const double beta = std::sqrt(static_cast<double>(spec.nu) / static_cast<double>(total));
    ComplexMatrix coarse = ComplexMatrix::Zero(2, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        coarse(k < mu ? 0 : 1, k) = k < mu ? alpha / std::sqrt(static_cast<double>(spec.mu))
                                           : beta / std::sqrt(static_cast<double>(spec.nu));
    }

    ComplexMatrix fine = ComplexMatrix::Zero(2, n);
    ComplexMatrix grouped = ComplexMatrix::Zero(2 * n, n);
    SchmidtForm branches;
    std::vector<BranchLabel> labels;
    labels.reserve(static_cast<std::size_t>(total));
    for (Eigen::Index k = 0; k < n; ++k) {
        const bool up = k < mu;
        const Eigen::Index s = up ? 0 : 1;
        fine(s, k) = amp;
        grouped(s * n + k, k) = amp;
        const auto idx = static_cast<std::size_t>(k);
        labels.push_back({up, idx, idx});
        branches.coeffs.push_back(amp);
        branches.phases.push_back(0.0);
        branches.sysBasis.push_back(
            StateVector::basis(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(s * n + k)));
        branches.envBasis.push_back(StateVector::basis(static_cast<std::size_t>(n), idx));
    }
    branches.degenerate = total > 1;

    const double alphaSquared = std::norm(coarse(0, 0)) * static_cast<double>(spec.mu);
    FinegrainResult result{BipartitePureState(std::move(coarse)),
                           BipartitePureState(std::move(fine)),
                           BipartitePureState(std::move(grouped)),
                           std::move(branches),
                           std::move(labels),
                           Rational(spec.mu, total),
                           Rational(spec.nu, total),
                           alphaSquared};
    return result;
}

RationalBracket incommensurateBound(double target, std::int64_t maxDen) {
    if (!(target > 0.0 && target < 1.0)) {
        throw Error(ErrorKind::InvalidState, "bracketing target must lie in (0, 1)");
    }
    if (maxDen < 1 || maxDen > (std::int64_t{1} << 31)) {
        throw Error(ErrorKind::BadDimension, "maxDen must lie in [1, 2^31]");
    }
    constexpr double kExact = 1e-12;
    RationalBracket out{Rational(0, 1), Rational(1, 1), true, true};
    for (std::int64_t q = 1; q <= maxDen; ++q) {
        const double scaled = target * static_cast<double>(q);
        auto lo = static_cast<std::int64_t>(std::floor(scaled));
        auto hi = static_cast<std::int64_t>(std::ceil(scaled));
        const auto nearest = static_cast<std::int64_t>(std::llround(scaled));
        if (std::abs(static_cast<double>(nearest) / static_cast<double>(q) - target) <= kExact) {
            lo = hi = nearest;
        }
        Rational low(lo, q);
        Rational high(hi, q);
        if (low > out.low) {
            out.low = low;
        }
        if (high < out.high) {
            out.high = high;
        }
    }
    out.lowRealizable = out.low.num() > 0;
    out.highRealizable = out.high.num() < out.high.den();
    return out;
}

}  // namespace envar
