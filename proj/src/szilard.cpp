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

#include "envar/szilard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "envar/error.hpp"

namespace envar {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// -ln(1e-12)
constexpr double kTailExponent = 27.631021115928547;
constexpr double kMaxBarrierRatio = 0.05;

// ln sum_i exp(-beta e_i), shifted by the smallest energy.
double logPartition(const std::vector<double> &energies, double beta) {
    const double e0 = *std::min_element(energies.begin(), energies.end());
    double sum = 0.0;
    for (double e : energies) {
        sum += std::exp(-beta * (e - e0));
    }
    return -beta * e0 + std::log(sum);
}

}  // namespace

std::size_t thermalTailLevels(double epsBeta) {
    if (!(epsBeta > 0.0)) {
        throw Error(ErrorKind::InvalidState, "eps beta must be positive");
    }
    return static_cast<std::size_t>(std::floor(std::sqrt(kTailExponent / epsBeta))) + 1;
}

std::size_t resolvingLevels(double epsBeta) {
    if (!(epsBeta > 0.0)) {
        throw Error(ErrorKind::InvalidState, "eps beta must be positive");
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(20.0 / epsBeta) - 1e-9)));
}

std::size_t EngineConfig::levelCount() const {
    if (nTrunc != 0) {
        return nTrunc;
    }
    const double eb = epsilon() * beta();
    return std::max(thermalTailLevels(eb), 2 * resolvingLevels(eb));
}

void EngineConfig::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(m)) throw Error(ErrorKind::InvalidState, "mass m must be positive and finite");
    if (!positive(L)) throw Error(ErrorKind::InvalidState, "box length L must be positive and finite");
    if (!positive(T)) throw Error(ErrorKind::InvalidState, "temperature T must be positive and finite");
    if (!positive(hbar)) throw Error(ErrorKind::InvalidState, "hbar must be positive and finite");
    if (!positive(kB)) throw Error(ErrorKind::InvalidState, "kB must be positive and finite");
    if (!std::isfinite(d) || d < 0.0) throw Error(ErrorKind::InvalidState, "barrier width d must be >= 0");
    if (d / L > kMaxBarrierRatio) throw Error(ErrorKind::InvalidState, "barrier must be thin: d/L <= 0.05");
    if (std::isnan(U) || U <= 0.0) throw Error(ErrorKind::InvalidState, "barrier height U must be > 0");
}

BoxSpectrum boxSpectrum(const EngineConfig &cfg) {
    cfg.validate();
    BoxSpectrum spec;
    spec.epsilon = cfg.epsilon();
    const std::size_t n = cfg.levelCount();
    spec.levels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const double nn = static_cast<double>(i);
        spec.levels.push_back({i, spec.epsilon * nn * nn, i % 2 == 1 ? Parity::Even : Parity::Odd});
    }
    return spec;
}

double partitionSum(const BoxSpectrum &spec, double beta) {
    double z = 0.0;
    for (const BoxLevel &level : spec.levels) {
        z += std::exp(-beta * level.energy);
    }
    return z;
}

ThermalState thermalState(const BoxSpectrum &spec, double beta) {
    if (spec.levels.empty() || !(beta > 0.0)) {
        throw Error(ErrorKind::InvalidState, "thermal state needs levels and beta > 0");
    }
    std::vector<double> energies;
    for (const BoxLevel &level : spec.levels) {
        energies.push_back(level.energy);
    }
    const double logZ = logPartition(energies, beta);

    // sum_{n > N} exp(-beta eps n^2) <= exp(-beta eps (N+1)^2) / (1 - exp(-beta eps (2N+3)))
    const double N = static_cast<double>(spec.levels.back().n);
    const double eb = spec.epsilon * beta;
    const double logTail = -eb * (N + 1) * (N + 1) - std::log1p(-std::exp(-eb * (2 * N + 3)));
    if (logTail - logZ > std::log(1e-12)) {
        throw Error(ErrorKind::TruncationInsufficient,
                    "neglected Boltzmann weight exceeds 1e-12 of Z with " + std::to_string(spec.levels.size()) +
                        " levels");
    }

    RealVector p(static_cast<Eigen::Index>(energies.size()));
    for (std::size_t i = 0; i < energies.size(); ++i) {
        p(static_cast<Eigen::Index>(i)) = std::exp(-beta * energies[i] - logZ);
    }
    p /= p.sum();
    return {DensityOperator::diagonal(p), std::exp(logZ)};
}

std::string_view to_string(SplitMode mode) {
    switch (mode) {
        case SplitMode::Formula: return "formula";
        case SplitMode::Numeric: return "numeric-oracle";
        case SplitMode::Infinite: return "infinite-barrier";
    }
    return "unknown";
}

namespace {

struct Geometry {
    double m, hbar, U, d, a;
};

Geometry geometryOf(const EngineConfig &cfg) { return {cfg.m, cfg.hbar, cfg.U, cfg.d, 0.5 * (cfg.L - cfg.d)}; }

double waveNumber(const Geometry &g, double energy) { return std::sqrt(2.0 * g.m * energy) / g.hbar; }

// Log-derivative matching at the barrier edge, written without poles. Roots of the Even
// condition are symmetric levels, roots of the Odd condition antisymmetric ones.
double matchingCondition(const Geometry &g, double k, Parity parity) {
    const double energy = g.hbar * g.hbar * k * k / (2.0 * g.m);
    const double s = 2.0 * g.m * (g.U - energy) / (g.hbar * g.hbar);
    const double c = std::cos(k * g.a);
    const double sn = std::sin(k * g.a);
    const double h = 0.5 * g.d;
    if (s >= 0.0) {
        const double kappa = std::sqrt(s);
        const double t = kappa * h < 1e-8 ? h : std::tanh(kappa * h) / kappa;
        return parity == Parity::Even ? k * c + s * t * sn : k * c * t + sn;
    }
    const double q = std::sqrt(-s);
    const double C = std::cos(q * h);
    const double S = std::sin(q * h);
    const double sOverQ = q * h < 1e-8 ? h : S / q;
    return parity == Parity::Even ? k * c * C - q * S * sn : k * c * sOverQ + sn * C;
}

std::vector<double> parityRoots(const Geometry &g, Parity parity, std::size_t count, double kMax) {
    std::vector<double> roots;
    // Same-parity roots are at least ~pi/(a + d) apart in k.
    const double step = std::numbers::pi / (2.0 * g.a + g.d) / 64.0;
    double kLo = step;
    double fLo = matchingCondition(g, kLo, parity);
    while (roots.size() < count) {
        const double kHi = kLo + step;
        if (kHi > kMax) {
            throw Error(ErrorKind::NoBracket, "no sign change isolating root " + std::to_string(roots.size() + 1) +
                                                  " in k window [" + std::to_string(step) + ", " +
                                                  std::to_string(kMax) + "]");
        }
        const double fHi = matchingCondition(g, kHi, parity);
        if (fLo == 0.0) {
            roots.push_back(kLo);
        } else if (std::signbit(fLo) != std::signbit(fHi) && fHi != 0.0) {
            double lo = kLo, hi = kHi, flo = fLo;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) {
                    break;
                }
                const double fm = matchingCondition(g, mid, parity);
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        kLo = kHi;
        fLo = fHi;
    }
    return roots;
}

SplitPair makePair(std::size_t k, double lower, double upper) {
    return {k, 0.5 * (lower + upper), 0.5 * (upper - lower), lower, upper};
}

}  // namespace

SplitSpectrum splitSpectrum(const EngineConfig &cfg, SplitMode mode, std::size_t pairs) {
    cfg.validate();
    if (pairs == 0) {
        pairs = (cfg.levelCount() + 1) / 2;
    }
    if (mode == SplitMode::Numeric && cfg.infiniteBarrier()) {
        mode = SplitMode::Infinite;
    }
    SplitSpectrum out;
    out.epsilonPrime = cfg.epsilonPrime();
    out.source = mode;
    const double ep = out.epsilonPrime;

    if (mode == SplitMode::Infinite) {
        for (std::size_t k = 1; k <= pairs; ++k) {
            const double e = ep * 4.0 * static_cast<double>(k * k);
            out.pairs.push_back({k, e, 0.0, e, e});
        }
        return out;
    }

    if (mode == SplitMode::Formula) {
        for (std::size_t k = 1; k <= pairs; ++k) {
            const double e = ep * 4.0 * static_cast<double>(k * k);
            if (cfg.infiniteBarrier()) {
                out.pairs.push_back({k, e, 0.0, e, e});
                continue;
            }
            if (e >= cfg.U) {
                out.flags.push_back("pairs from k=" + std::to_string(k) + " lie above the barrier and are excluded");
                break;
            }
            const double delta = 4.0 * ep / std::numbers::pi * std::exp(-cfg.d * std::sqrt(2.0 * cfg.m * (cfg.U - e)) / cfg.hbar);
            out.pairs.push_back({k, e, delta, e - delta, e + delta});
        }
    } else {
        const Geometry g = geometryOf(cfg);
        // Pair k sits below the k-th level of a well of width a: k pi / a.
        const double kMax = (static_cast<double>(pairs) + 2.0) * std::numbers::pi / g.a;
        std::vector<double> even = parityRoots(g, Parity::Even, pairs, kMax);
        std::vector<double> odd = parityRoots(g, Parity::Odd, pairs, kMax);
        for (std::size_t k = 1; k <= pairs; ++k) {
            auto energyOf = [&](double kk) { return cfg.hbar * cfg.hbar * kk * kk / (2.0 * cfg.m); };
            SplitPair pair = makePair(k, energyOf(even[k - 1]), energyOf(odd[k - 1]));
            if (pair.energy >= cfg.U) {
                out.flags.push_back("pairs from k=" + std::to_string(k) + " lie above the barrier and are excluded");
                break;
            }
            out.pairs.push_back(pair);
        }
    }
    for (const SplitPair &p : out.pairs) {
        if (!(p.delta > 0.0)) {
            out.flags.push_back("pair k=" + std::to_string(p.k) + " has non-positive splitting");
        } else if (p.delta / p.energy >= 0.1) {
            out.flags.push_back("pair k=" + std::to_string(p.k) + " splitting is not small: Delta/E >= 0.1");
        }
    }
    return out;
}

double wavefunction(const EngineConfig &cfg, double energy, Parity parity, double x) {
    const Geometry g = geometryOf(cfg);
    const double h = 0.5 * g.d;
    const double half = 0.5 * cfg.L;
    if (std::abs(x) >= half) {
        return 0.0;
    }
    const double k = waveNumber(g, energy);
    const double sign = parity == Parity::Even ? 1.0 : -1.0;
    if (std::abs(x) >= h) {
        const double f = std::sin(k * (half - std::abs(x)));
        return x < 0.0 ? f : sign * f;
    }
    if (cfg.infiniteBarrier()) {
        return 0.0;
    }
    const double edge = std::sin(k * g.a);
    const double s = 2.0 * g.m * (g.U - energy) / (g.hbar * g.hbar);
    const double ax = std::abs(x);
    double ratio;
    if (s > 0.0) {
        const double kappa = std::sqrt(s);
        const double grow = std::exp(kappa * (ax - h));
        if (parity == Parity::Even) {
            ratio = grow * (1.0 + std::exp(-2.0 * kappa * ax)) / (1.0 + std::exp(-2.0 * kappa * h));
        } else {
            ratio = kappa * h < 1e-8 ? ax / h
                                     : grow * -std::expm1(-2.0 * kappa * ax) / -std::expm1(-2.0 * kappa * h);
        }
    } else {
        const double q = std::sqrt(-s);
        if (parity == Parity::Even) {
            ratio = std::cos(q * ax) / std::cos(q * h);
        } else {
            ratio = q * h < 1e-8 ? ax / h : std::sin(q * ax) / std::sin(q * h);
        }
    }
    const double value = edge * ratio;
    return x < 0.0 ? value : sign * value;
}

UnitaryOperator basisChange(const SplitSpectrum &split) {
    const auto n = static_cast<Eigen::Index>(split.size());
    if (n == 0) {
        throw Error(ErrorKind::InvalidState, "split spectrum has no pairs");
    }
    const double r = std::numbers::sqrt2 / 2.0;
    ComplexMatrix b = ComplexMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        // |L> = (|psi+> + |psi->)/sqrt2, |R> = (|psi-> - |psi+>)/sqrt2
        b(2 * k, 2 * k) = r;
        b(2 * k + 1, 2 * k) = r;
        b(2 * k, 2 * k + 1) = -r;
        b(2 * k + 1, 2 * k + 1) = r;
    }
    return UnitaryOperator(std::move(b));
}

double barrierPartitionSum(const SplitSpectrum &split, double beta) {
    double z = 0.0;
    for (const SplitPair &p : split.pairs) {
        z += 2.0 * std::exp(-beta * p.energy) * std::cosh(beta * p.delta);
    }
    return z;
}

DensityOperator barrierThermalState(const SplitSpectrum &split, double beta, ThermalBasis basis) {
    const auto n = static_cast<Eigen::Index>(split.size());
    if (n == 0 || !(beta > 0.0)) {
        throw Error(ErrorKind::InvalidState, "barrier thermal state needs pairs and beta > 0");
    }
    double e0 = std::numeric_limits<double>::infinity();
    for (const SplitPair &p : split.pairs) {
        e0 = std::min(e0, p.lower);
    }
    ComplexMatrix rho = ComplexMatrix::Zero(2 * n, 2 * n);
    double z = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const SplitPair &p = split.pairs[static_cast<std::size_t>(k)];
        if (basis == ThermalBasis::Energy) {
            const double up = std::exp(-beta * (p.upper - e0));
            const double down = std::exp(-beta * (p.lower - e0));
            rho(2 * k, 2 * k) = up;
            rho(2 * k + 1, 2 * k + 1) = down;
            z += up + down;
        } else {
            const double w = std::exp(-beta * (p.energy - e0));
            const double ch = w * std::cosh(beta * p.delta);
            const double sh = w * std::sinh(beta * p.delta);
            rho(2 * k, 2 * k) = ch;
            rho(2 * k + 1, 2 * k + 1) = ch;
            rho(2 * k, 2 * k + 1) = sh;
            rho(2 * k + 1, 2 * k) = sh;
            z += 2.0 * ch;
        }
    }
    return DensityOperator(rho / z);
}

std::string_view to_string(WellSide side) { return side == WellSide::Left ? "L" : "R"; }

namespace {

double sideWeight(const ComplexMatrix &rho, std::size_t N, std::size_t offset) {
    double w = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        auto i = static_cast<Eigen::Index>(2 * k + offset);
        w += rho(i, i).real();
    }
    return w;
}

MeasurementOutcome project(const ComplexMatrix &rho, std::size_t N, WellSide side) {
    const std::size_t offset = side == WellSide::Left ? 0 : 1;
    const auto dim = rho.rows();
    RealVector mask = RealVector::Zero(dim);
    for (std::size_t k = 0; k < N; ++k) {
        mask(static_cast<Eigen::Index>(2 * k + offset)) = 1.0;
    }
    ComplexMatrix projected = mask.asDiagonal() * rho * mask.asDiagonal();
    MeasurementOutcome out;
    out.side = side;
    out.probability = projected.trace().real();
    if (out.probability > 0.0) {
        out.postState.emplace(projected / out.probability);
    }
    return out;
}

}  // namespace

std::pair<MeasurementOutcome, MeasurementOutcome> measureSide(const DensityOperator &rhoLR, std::size_t N,
                                                              double leakTolerance) {
    const std::size_t dim = rhoLR.dim();
    if (dim % 2 != 0) {
        throw Error(ErrorKind::DimensionMismatch, "LR-basis state must have even dimension");
    }
    if (N == 0 || 2 * N > dim) {
        throw Error(ErrorKind::BadDimension, "measurement needs 1 <= N <= number of pairs");
    }
    const ComplexMatrix &rho = rhoLR.matrix();
    const double captured = sideWeight(rho, N, 0) + sideWeight(rho, N, 1);
    if (captured < 1.0 - leakTolerance) {
        throw Error(ErrorKind::LeakyProjector, "projectors over " + std::to_string(N) + " pairs capture only " +
                                                   std::to_string(captured) + " of the trace");
    }
    return {project(rho, N, WellSide::Left), project(rho, N, WellSide::Right)};
}

std::size_t defaultMeasurementLevels(const DensityOperator &rhoLR, double epsBeta, double minResolution) {
    const std::size_t pairs = rhoLR.dim() / 2;
    const ComplexMatrix &rho = rhoLR.matrix();
    for (std::size_t N = 1; N <= pairs; ++N) {
        const double n = static_cast<double>(N);
        if (n * n * epsBeta < minResolution) {
            continue;
        }
        if (sideWeight(rho, N, 0) + sideWeight(rho, N, 1) >= 1.0 - 1e-6) {
            return N;
        }
    }
    throw Error(ErrorKind::TruncationInsufficient,
                "no N <= " + std::to_string(pairs) + " reaches the measurement resolution with leakage < 1e-6");
}

double FreeEnergyLedger::maxFirstLawResidual() const {
    double worst = 0.0;
    for (const LedgerEntry &e : entries) {
        worst = std::max(worst, e.firstLawResidual());
    }
    return worst;
}

namespace {

double expectation(const DensityOperator &rho, const ComplexMatrix &h) { return (rho.matrix() * h).trace().real(); }

// Hamiltonian in the LR basis: E_k on the diagonal, -Delta_k coupling L_k and R_k.
ComplexMatrix lrHamiltonian(const SplitSpectrum &split) {
    const auto n = static_cast<Eigen::Index>(split.size());
    ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const SplitPair &p = split.pairs[static_cast<std::size_t>(k)];
        h(2 * k, 2 * k) = p.energy;
        h(2 * k + 1, 2 * k + 1) = p.energy;
        h(2 * k, 2 * k + 1) = -p.delta;
        h(2 * k + 1, 2 * k) = -p.delta;
    }
    return h;
}

double binaryEntropy(double p) {
    double h = 0.0;
    for (double q : {p, 1.0 - p}) {
        if (q > 0.0) {
            h -= q * std::log(q);
        }
    }
    return h;
}

}  // namespace

FreeEnergyLedger freeEnergyLedger(const EngineConfig &cfg) {
    cfg.validate();
    const double beta = cfg.beta();
    const double kT = cfg.kT();
    const double epsBeta = cfg.epsilon() * beta;

    FreeEnergyLedger out;
    out.regimeViolation = epsBeta > 0.01;
    if (out.regimeViolation) {
        out.flags.push_back("RegimeViolation: eps beta > 0.01, closed-form comparisons do not apply");
    }

    const BoxSpectrum box = boxSpectrum(cfg);
    const ThermalState thermal = thermalState(box, beta);
    out.boxLevels = box.levels.size();
    out.Z = thermal.Z;
    out.A = -kT * std::log(thermal.Z);
    out.entropyBox = vonNeumannEntropy(thermal.rho);
    double uBox = 0.0;
    for (std::size_t i = 0; i < box.levels.size(); ++i) {
        auto ii = static_cast<Eigen::Index>(i);
        uBox += thermal.rho.matrix()(ii, ii).real() * box.levels[i].energy;
    }

    out.mode = cfg.infiniteBarrier() ? SplitMode::Infinite : SplitMode::Numeric;
    const SplitSpectrum split = splitSpectrum(cfg, out.mode, (box.levels.size() + 1) / 2);
    out.flags.insert(out.flags.end(), split.flags.begin(), split.flags.end());
    out.pairs = split.size();
    out.Ztilde = barrierPartitionSum(split, beta);
    out.Atilde = -kT * std::log(out.Ztilde);
    out.insertionShift = out.Atilde - out.A;
    out.insertionShiftClosedForm = kT * std::log(cfg.L / (cfg.L - cfg.d));

    const DensityOperator rhoTilde = barrierThermalState(split, beta, ThermalBasis::LR);
    const ComplexMatrix h = lrHamiltonian(split);
    out.entropyBarrier = vonNeumannEntropy(rhoTilde);
    const double uTilde = expectation(rhoTilde, h);

    out.measurementLevels = defaultMeasurementLevels(rhoTilde, epsBeta);
    auto [left, right] = measureSide(rhoTilde, out.measurementLevels);
    out.pL = left.probability;
    out.pR = right.probability;
    if (!left.postState || !right.postState) {
        throw Error(ErrorKind::InvalidState, "a measurement outcome has zero probability");
    }
    out.entropyLeft = vonNeumannEntropy(*left.postState);
    out.entropyRight = vonNeumannEntropy(*right.postState);
    out.entropyDecompositionResidual =
        out.entropyBarrier - (out.pL * out.entropyLeft + out.pR * out.entropyRight + binaryEntropy(out.pL));
    out.repeatProbability = measureSide(*left.postState, out.measurementLevels).first.probability;
    const double uLeft = expectation(*left.postState, h);

    double zL = 0.0;
    double zR = 0.0;
    for (std::size_t k = 0; k < out.measurementLevels; ++k) {
        const SplitPair &p = split.pairs[k];
        zL += std::exp(-beta * p.energy) * std::cosh(beta * p.delta);
        zR += std::exp(-beta * p.energy) * std::cosh(beta * p.delta);
    }
    out.AL = -kT * std::log(zL);
    out.AR = -kT * std::log(zR);
    out.deltaA = out.AL - out.Atilde;
    out.expansionWorkClosedForm = kT * kLn2;

    out.entries.push_back({"insert-barrier", out.Atilde, out.entropyBarrier, out.Atilde - out.A,
                           kT * (out.entropyBarrier - out.entropyBox), uTilde - uBox});
    out.entries.push_back({"measure", out.AL, out.entropyLeft, uLeft - uTilde, 0.0, uLeft - uTilde});
    out.entries.push_back({"expand", out.A, out.entropyBox, out.A - out.AL, kT * (out.entropyBox - out.entropyLeft),
                           uBox - uLeft});
    out.entries.push_back({"erase", out.A, out.entropyBox, kT * kLn2, -kT * kLn2, 0.0});
    for (const LedgerEntry &e : out.entries) {
        out.netWork += e.work;
    }
    return out;
}

ClassicalCycle classicalEnsembleCycle(const EngineConfig &cfg, std::size_t samples, std::uint64_t seed) {
    cfg.validate();
    if (samples == 0) {
        throw Error(ErrorKind::InvalidState, "classical cycle needs at least one sample");
    }
    const double kT = cfg.kT();
    const double halving = kT * std::log(cfg.L / (0.5 * cfg.L));

    ClassicalCycle out;
    out.samples.reserve(samples);
    std::mt19937_64 rng(seed);
    std::size_t left = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        ClassicalSample s;
        s.x = cfg.L * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        s.side = s.x < 0.5 * cfg.L ? WellSide::Left : WellSide::Right;
        left += s.side == WellSide::Left ? 1 : 0;
        // The partition compresses the molecule to half the box with no work done.
        s.insertionDeltaA = halving;
        s.insertionWork = 0.0;
        s.expandWork = -halving;
        s.eraseWork = halving;
        s.netWork = s.insertionWork + s.expandWork + s.eraseWork;
        out.maxAbsNetWork = std::max(out.maxAbsNetWork, std::abs(s.netWork));
        out.samples.push_back(s);
    }
    out.leftFraction = static_cast<double>(left) / static_cast<double>(samples);

    // One-molecule ideal gas: A = -kT ln(L/lambda), S = ln(L/lambda) + 1/2.
    const double lambda = 2.0 * std::numbers::pi * cfg.hbar / std::sqrt(2.0 * std::numbers::pi * cfg.m * kT);
    FreeEnergyLedger &e = out.ensemble;
    e.mode = SplitMode::Infinite;
    e.A = -kT * std::log(cfg.L / lambda);
    e.Atilde = e.A;
    e.AL = e.A + halving;
    e.AR = e.AL;
    e.deltaA = e.AL - e.Atilde;
    e.insertionShift = 0.0;
    e.entropyBox = std::log(cfg.L / lambda) + 0.5;
    e.entropyBarrier = e.entropyBox;
    e.entropyLeft = e.entropyBox - kLn2;
    e.entropyRight = e.entropyLeft;
    e.pL = out.leftFraction;
    e.pR = 1.0 - out.leftFraction;
    e.repeatProbability = 1.0;
    e.expansionWorkClosedForm = halving;
    e.entries.push_back({"insert-barrier", e.Atilde, e.entropyBarrier, 0.0, 0.0, 0.0});
    e.entries.push_back({"measure", e.AL, e.entropyLeft, 0.0, 0.0, 0.0});
    e.entries.push_back({"expand", e.A, e.entropyBox, -halving, halving, 0.0});
    e.entries.push_back({"erase", e.A, e.entropyBox, halving, -halving, 0.0});
    for (const LedgerEntry &entry : e.entries) {
        e.netWork += entry.work;
    }
    return out;
}

ContrastFlag insertionContrast(const ClassicalCycle &classical, const FreeEnergyLedger &quantum, double kT) {
    ContrastFlag flag;
    flag.classicalInsertion = classical.samples.empty() ? 0.0 : classical.samples.front().insertionDeltaA;
    flag.quantumInsertion = quantum.insertionShift;
    flag.confirmed = std::abs(flag.classicalInsertion - kT * kLn2) <= 1e-12 * kT &&
                     std::abs(flag.quantumInsertion) <= 0.1 * kT * kLn2;
    return flag;
}

}  // namespace envar
