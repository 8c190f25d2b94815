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

#include "envar/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace envar {

namespace {

double orthonormalityError(const ComplexMatrix &columns) {
    auto k = columns.cols();
    return (columns.adjoint() * columns - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
}

}  // namespace

EvenStateBases EvenStateBases::computational(std::size_t K, std::size_t dimS, std::size_t dimE) {
    if (K == 0 || dimS < K || dimE < K) {
        throw Error(ErrorKind::BadDimension, "computational bases need 1 <= K <= dimS, dimE");
    }
    auto k = static_cast<Eigen::Index>(K);
    return {ComplexMatrix::Identity(static_cast<Eigen::Index>(dimS), k),
            ComplexMatrix::Identity(static_cast<Eigen::Index>(dimE), k)};
}

EvenStateBases EvenStateBases::random(std::size_t K, std::size_t dimS, std::size_t dimE, std::uint64_t seed) {
    if (K == 0 || dimS < K || dimE < K) {
        throw Error(ErrorKind::BadDimension, "random bases need 1 <= K <= dimS, dimE");
    }
    std::mt19937_64 rng(seed);
    ComplexMatrix sys = randomIsometry(dimS, K, rng);
    ComplexMatrix env = randomIsometry(dimE, K, rng);
    return {std::move(sys), std::move(env)};
}

namespace {

BipartitePureState assembleEven(const std::vector<double> &phases, const EvenStateBases &bases) {
    const auto K = static_cast<Eigen::Index>(phases.size());
    if (K == 0) {
        throw Error(ErrorKind::BadDimension, "even state needs K >= 1");
    }
    if (bases.sys.cols() != K || bases.env.cols() != K) {
        throw Error(ErrorKind::BadDimension, "bases must provide exactly K columns");
    }
    if (orthonormalityError(bases.sys) > Tolerances{}.decomposition ||
        orthonormalityError(bases.env) > Tolerances{}.decomposition) {
        throw Error(ErrorKind::InvalidState, "even-state bases are not orthonormal");
    }
    ComplexVector weights(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        weights(k) = std::polar(1.0 / std::sqrt(static_cast<double>(K)), phases[static_cast<std::size_t>(k)]);
    }
    return BipartitePureState::normalized(bases.sys * weights.asDiagonal() * bases.env.transpose());
}

}  // namespace

EvenState::EvenState(std::vector<double> phases, EvenStateBases bases, const Tolerances &tol)
    : phases_(std::move(phases)), bases_(std::move(bases)), state_(assembleEven(phases_, bases_)) {
    const double expected = 1.0 / std::sqrt(static_cast<double>(rank()));
    SchmidtForm form = schmidt(state_, tol.decomposition);
    if (form.rank() != rank()) {
        throw Error(ErrorKind::InvalidState, "even state has the wrong Schmidt rank");
    }
    for (double c : form.coeffs) {
        if (std::abs(c - expected) > tol.decomposition) {
            throw Error(ErrorKind::InvalidState, "even state has an unequal Schmidt coefficient");
        }
    }
    ComplexMatrix flat = bases_.sys * bases_.sys.adjoint() / static_cast<double>(rank());
    if ((partialTraceE(state_).matrix() - flat).cwiseAbs().maxCoeff() > tol.decomposition) {
        throw Error(ErrorKind::InvalidState, "reduced state of an even state is not flat");
    }
}

EvenState makeEvenState(std::size_t K, const std::vector<double> &phases, const EvenStateBases &bases) {
    if (K == 0 || phases.size() != K) {
        throw Error(ErrorKind::BadDimension, "makeEvenState needs K >= 1 and K phases");
    }
    if (static_cast<std::size_t>(bases.sys.cols()) != K || static_cast<std::size_t>(bases.env.cols()) != K) {
        throw Error(ErrorKind::BadDimension, "bases must provide exactly K columns");
    }
    return EvenState(phases, bases);
}

EvenState makeEvenState(std::size_t K, const std::vector<double> &phases, std::uint64_t seed, std::size_t dimS,
                        std::size_t dimE) {
    if (K == 0 || phases.size() != K) {
        throw Error(ErrorKind::BadDimension, "makeEvenState needs K >= 1 and K phases");
    }
    return EvenState(phases, EvenStateBases::random(K, dimS == 0 ? K : dimS, dimE == 0 ? K : dimE, seed));
}

CounterEvolution counterEvolutionFor(const EvenState &state, const UnitaryOperator &uS, const Tolerances &tol) {
    const ComplexMatrix &sys = state.sysBasis();
    const ComplexMatrix &env = state.envBasis();
    if (uS.dim() != static_cast<std::size_t>(sys.rows())) {
        throw Error(ErrorKind::DimensionMismatch, "system unitary does not match the system dimension");
    }
    const ComplexMatrix &u = uS.matrix();
    const auto dimS = sys.rows();
    ComplexMatrix inside = sys * sys.adjoint();
    ComplexMatrix outside = ComplexMatrix::Identity(dimS, dimS) - inside;
    double leak = (outside * u * inside).norm() + (inside * u * outside).norm();
    if (leak > tol.physics * u.norm()) {
        throw Error(ErrorKind::SubspaceEscape, "system unitary does not preserve the even subspace");
    }

    // overlap(l, k) = <s~_l | s_k> with s~_l = uS s_l.
    ComplexMatrix rotated = u * sys;
    ComplexMatrix overlap = rotated.adjoint() * sys;
    const auto K = static_cast<Eigen::Index>(state.rank());
    ComplexVector phase(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        phase(k) = std::polar(1.0, state.phases()[static_cast<std::size_t>(k)]);
    }
    // Column l holds eps~_l = sum_k e^{i phi_k} <s~_l|s_k> eps_k.
    ComplexMatrix partners = env * phase.asDiagonal() * overlap.transpose();
    double partnerError = orthonormalityError(partners);
    if (partnerError > tol.decomposition) {
        throw Error(ErrorKind::SubspaceEscape, "rotated environment partners are not orthonormal");
    }

    const auto dimE = env.rows();
    ComplexMatrix uE = partners * phase.conjugate().asDiagonal() * env.adjoint() +
                       (ComplexMatrix::Identity(dimE, dimE) - env * env.adjoint());
    return {UnitaryOperator(std::move(uE)), partnerError};
}

NoEvolutionReport verifyNoLocalEvolution(const EvenState &state, const UnitaryOperator &uS, const Tolerances &tol) {
    CounterEvolution counter = counterEvolutionFor(state, uS, tol);
    BipartitePureState evolved = applyLocal(state.state(), uS, Side::System);
    BipartitePureState restored = applyLocal(evolved, counter.environment, Side::Environment);
    NoEvolutionReport report;
    report.reducedDistance = operatorDistance(partialTraceE(evolved), partialTraceE(state.state()));
    report.restorationDistance = stateDistance(restored, state.state());
    report.partnerOrthonormalityError = counter.partnerOrthonormalityError;
    return report;
}

double reducedOperatorChange(const BipartitePureState &state, const UnitaryOperator &uS) {
    return operatorDistance(partialTraceE(applyLocal(state, uS, Side::System)), partialTraceE(state));
}

UnitaryOperator randomUnitaryOnSubspace(const ComplexMatrix &basis, std::mt19937_64 &rng) {
    if (orthonormalityError(basis) > Tolerances{}.decomposition) {
        throw Error(ErrorKind::InvalidState, "subspace basis is not orthonormal");
    }
    UnitaryOperator w = randomUnitary(static_cast<std::size_t>(basis.cols()), rng);
    const auto n = basis.rows();
    return UnitaryOperator(basis * w.matrix() * basis.adjoint() + ComplexMatrix::Identity(n, n) -
                           basis * basis.adjoint());
}

std::uint64_t LevelLadder::microstates() const {
    std::uint64_t total = 0;
    for (std::uint64_t g : degeneracies) {
        if (total > std::numeric_limits<std::uint64_t>::max() - g) {
            throw Error(ErrorKind::OverflowGuard, "ladder microstate count overflows");
        }
        total += g;
    }
    return total;
}

void LevelLadder::validate() const {
    if (energies.empty() || energies.size() != degeneracies.size()) {
        throw Error(ErrorKind::InvalidState, "ladder needs matching, nonempty energy and degeneracy lists");
    }
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (!std::isfinite(energies[i])) {
            throw Error(ErrorKind::InvalidState, "ladder energy is not finite");
        }
        if (degeneracies[i] == 0) {
            throw Error(ErrorKind::InvalidState, "ladder degeneracy must be >= 1");
        }
        if (i > 0 && energies[i] < energies[i - 1]) {
            throw Error(ErrorKind::InvalidState, "ladder energies must be nondecreasing");
        }
    }
}

double defaultWindow(const LevelLadder &bath) {
    bath.validate();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < bath.energies.size(); ++i) {
        double d = bath.energies[i] - bath.energies[i - 1];
        if (d > 0.0) {
            gap = std::min(gap, d);
        }
    }
    if (!std::isfinite(gap)) {
        throw Error(ErrorKind::InvalidState, "bath has no positive level spacing");
    }
    return 0.5 * gap;
}

namespace {

std::vector<std::uint64_t> shellCounts(const LevelLadder &system, const LevelLadder &bath, double totalEnergy,
                                       double window) {
    std::vector<std::uint64_t> counts(system.levels(), 0);
    for (std::size_t k = 0; k < system.levels(); ++k) {
        const double need = totalEnergy - system.energies[k];
        auto first = std::lower_bound(bath.energies.begin(), bath.energies.end(), need - window);
        std::uint64_t bathStates = 0;
        for (auto it = first; it != bath.energies.end() && *it <= need + window; ++it) {
            // The bracket search is on energies; re-test the exact shell condition.
            if (std::abs(system.energies[k] + *it - totalEnergy) <= window) {
                bathStates += bath.degeneracies[static_cast<std::size_t>(it - bath.energies.begin())];
            }
        }
        unsigned __int128 joint = static_cast<unsigned __int128>(bathStates) * system.degeneracies[k];
        if (joint > std::numeric_limits<std::uint64_t>::max()) {
            throw Error(ErrorKind::OverflowGuard, "shell count overflows 64 bits");
        }
        counts[k] = static_cast<std::uint64_t>(joint);
    }
    return counts;
}

struct BetaFit {
    double beta = 0.0;
    bool defined = false;
    double rSquared = 0.0;
};

BetaFit fitBeta(const LevelLadder &system, const std::vector<std::uint64_t> &counts) {
    std::vector<double> x, y, w;
    double maxCount = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        maxCount = std::max(maxCount, static_cast<double>(counts[k]));
    }
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) {
            continue;
        }
        x.push_back(system.energies[k]);
        y.push_back(std::log(static_cast<double>(counts[k]) / static_cast<double>(system.degeneracies[k])));
        w.push_back(static_cast<double>(counts[k]) / maxCount);
    }
    BetaFit fit;
    if (x.size() < 2) {
        return fit;
    }
    double sw = 0.0, xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        xm += w[i] * x[i];
        ym += w[i] * y[i];
    }
    xm /= sw;
    ym /= sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xm) * (x[i] - xm);
        sxy += w[i] * (x[i] - xm) * (y[i] - ym);
        syy += w[i] * (y[i] - ym) * (y[i] - ym);
    }
    if (sxx <= 0.0) {
        return fit;
    }
    const double slope = sxy / sxx;
    double ssRes = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (ym + slope * (x[i] - xm));
        ssRes += w[i] * r * r;
    }
    fit.beta = -slope;
    fit.defined = std::isfinite(fit.beta);
    fit.rSquared = syy > 0.0 ? 1.0 - ssRes / syy : 1.0;
    return fit;
}

}  // namespace

CanonicalFit canonicalByCounting(const LevelLadder &system, const LevelLadder &bath, double totalEnergy,
                                 std::optional<double> window) {
    system.validate();
    bath.validate();
    if (bath.levels() < 10 * system.levels()) {
        throw Error(ErrorKind::BadDimension, "bath needs at least ten times as many levels as the system");
    }
    const double w = window.value_or(defaultWindow(bath));
    if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(totalEnergy)) {
        throw Error(ErrorKind::InvalidState, "shell window must be positive and finite");
    }

    CanonicalFit out;
    out.window = w;
    out.counts = shellCounts(system, bath, totalEnergy, w);
    double total = 0.0;
    for (std::size_t k = 0; k < out.counts.size(); ++k) {
        total += static_cast<double>(out.counts[k]);
        if (out.counts[k] == 0) {
            out.excludedLevels.push_back(k);
            out.warnings.push_back("empty shell: no joint microstate in the window for system level " +
                                   std::to_string(k));
        }
    }
    if (total == 0.0) {
        throw Error(ErrorKind::InvalidState, "no joint microstate lands in the energy shell");
    }
    for (std::uint64_t c : out.counts) {
        out.occupancies.push_back(static_cast<double>(c) / total);
    }

    BetaFit fit = fitBeta(system, out.counts);
    out.beta = fit.beta;
    out.betaDefined = fit.defined;
    out.rSquared = fit.rSquared;
    if (!fit.defined) {
        out.warnings.push_back("beta undefined: fewer than two occupied system levels with distinct energies");
    }
    for (double scale : {0.5, 2.0}) {
        BetaFit f = fitBeta(system, shellCounts(system, bath, totalEnergy, scale * w));
        out.sensitivity.push_back({scale * w, f.beta, f.defined});
    }
    return out;
}

namespace {

BipartitePureState purify(const std::vector<double> &energies, double beta) {
    const double e0 = *std::min_element(energies.begin(), energies.end());
    const auto n = static_cast<Eigen::Index>(energies.size());
    RealVector weights(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        weights(i) = std::exp(-beta * (energies[static_cast<std::size_t>(i)] - e0));
    }
    const double z = weights.sum();
    ComplexMatrix amps = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        amps(i, i) = std::sqrt(weights(i) / z);
    }
    return BipartitePureState::normalized(std::move(amps));
}

constexpr std::uint64_t kMaxPurifiedStates = 4096;

}  // namespace

BipartitePureState thermalPurification(const LevelLadder &system, double beta) {
    system.validate();
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorKind::InvalidState, "purification needs a finite beta > 0");
    }
    if (system.microstates() > kMaxPurifiedStates) {
        throw Error(ErrorKind::BadDimension, "ladder has too many microstates to purify densely");
    }
    std::vector<double> energies;
    for (std::size_t k = 0; k < system.levels(); ++k) {
        energies.insert(energies.end(), system.degeneracies[k], system.energies[k]);
    }
    return purify(energies, beta);
}

BipartitePureState thermalPurification(const std::function<double(std::size_t)> &levelEnergy, double beta,
                                       std::size_t maxLevels, double tailWeight) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorKind::InvalidState, "purification needs a finite beta > 0");
    }
    maxLevels = std::min<std::size_t>(maxLevels, kMaxPurifiedStates);
    std::vector<double> energies{levelEnergy(0)};
    const double e0 = energies.front();
    double z = 1.0;
    while (energies.size() < maxLevels) {
        const double last = std::exp(-beta * (energies.back() - e0));
        const double next = std::exp(-beta * (levelEnergy(energies.size()) - e0));
        const double ratio = last > 0.0 ? next / last : 0.0;
        // Geometric bound on the remainder; valid while successive ratios do not grow.
        const double tail = ratio < 1.0 ? next / (1.0 - ratio) : std::numeric_limits<double>::infinity();
        if (tail / z < tailWeight) {
            return purify(energies, beta);
        }
        energies.push_back(levelEnergy(energies.size()));
        z += next;
    }
    throw Error(ErrorKind::TruncationInsufficient,
                "thermal tail still above " + std::to_string(tailWeight) + " after " + std::to_string(maxLevels) +
                    " levels");
}

}  // namespace envar
