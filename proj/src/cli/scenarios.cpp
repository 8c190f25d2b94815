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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "envar/cli.hpp"
#include "envar/envariance.hpp"
#include "envar/equilibrium.hpp"
#include "envar/finite_difference.hpp"
#include "envar/szilard.hpp"

namespace envar::cli {

namespace {

constexpr double kLn2 = std::numbers::ln2;

class CheckList {
   public:
    explicit CheckList(std::vector<Check> &out) : out_(out) {}

    void abs(std::string name, double measured, double expected, double tol, std::string provenance,
             std::string units) {
        add(std::move(name), measured, expected, tol, "abs", std::abs(measured - expected) <= tol,
            std::move(provenance), std::move(units));
    }
    void rel(std::string name, double measured, double expected, double tol, std::string provenance,
             std::string units) {
        add(std::move(name), measured, expected, tol, "rel", std::abs(measured - expected) <= tol * std::abs(expected),
            std::move(provenance), std::move(units));
    }
    void atMost(std::string name, double measured, double limit, std::string provenance, std::string units) {
        add(std::move(name), measured, limit, 0.0, "max", measured <= limit, std::move(provenance), std::move(units));
    }
    void atLeast(std::string name, double measured, double limit, std::string provenance, std::string units) {
        add(std::move(name), measured, limit, 0.0, "min", measured >= limit, std::move(provenance), std::move(units));
    }
    void factor(std::string name, double measured, double expected, double f, std::string provenance,
                std::string units) {
        const double r = measured / expected;
        add(std::move(name), measured, expected, f, "factor", r >= 1.0 / f && r <= f, std::move(provenance),
            std::move(units));
    }
    void exact(std::string name, double measured, double expected, std::string provenance, std::string units) {
        add(std::move(name), measured, expected, 0.0, "exact", measured == expected, std::move(provenance),
            std::move(units));
    }
    void truth(std::string name, bool holds, std::string provenance) {
        add(std::move(name), holds ? 1.0 : 0.0, 1.0, 0.0, "exact", holds, std::move(provenance), "1");
    }

   private:
    void add(std::string name, double m, double e, double tol, const char *cmp, bool pass, std::string provenance,
             std::string units) {
        out_.push_back({std::move(name), m, e, tol, cmp, pass, std::move(provenance), std::move(units)});
    }
    std::vector<Check> &out_;
};

Json quantity(Json value, std::string units) { return Json{{"value", std::move(value)}, {"units", std::move(units)}}; }

std::vector<double> randomPhases(std::size_t K, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> phases(K);
    for (double &p : phases) p = angle(rng);
    return phases;
}

// Rank-K state on random isometries with distinct Schmidt coefficients.
BipartitePureState unevenState(std::size_t K, std::size_t dimS, std::size_t dimE, std::mt19937_64 &rng,
                               ComplexMatrix *support = nullptr) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    ComplexMatrix sys = randomIsometry(dimS, K, rng);
    ComplexMatrix env = randomIsometry(dimE, K, rng);
    ComplexVector c(static_cast<Eigen::Index>(K));
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = u(rng) * (1.0 + static_cast<double>(k));
    if (support) *support = sys;
    return BipartitePureState::normalized(sys * c.asDiagonal() * env.transpose());
}

void envarianceCheck(const ScenarioConfig &cfg, RunReport &report) {
    CheckList checks(report.checks);
    const std::size_t K = cfg.evenRank;
    const std::size_t dimS = K + 1, dimE = K + 2;
    std::mt19937_64 rng(cfg.seeds.front());
    const Tolerances &tol = cfg.tolerances;

    BipartitePureState generic = randomBipartite(dimS, dimE, rng);
    SchmidtForm form = schmidt(generic, tol.decomposition);
    checks.atMost("Schmidt reconstruction distance (generic state)", stateDistance(form.reconstruct(), generic),
                  tol.decomposition, "definition", "1");

    RealVector specS = partialTraceE(generic).eigenvalues();
    RealVector specE = partialTraceS(generic).eigenvalues();
    double spectralGap = 0.0;
    for (Eigen::Index i = 0; i < std::min(specS.size(), specE.size()); ++i) {
        spectralGap = std::max(spectralGap, std::abs(specS(specS.size() - 1 - i) - specE(specE.size() - 1 - i)));
    }
    checks.atMost("reduced operators share their nonzero spectrum", spectralGap, tol.decomposition, "definition", "1");

    PhaseShift shift{randomPhases(form.rank(), rng), form.sysBasis};
    BipartitePureState shifted = applyLocal(generic, shift.toUnitary(), Side::System);
    UnitaryOperator counter = countershiftFor(generic, shift, tol);
    checks.atMost("countershift restores a phase-shifted generic state",
                  stateDistance(applyLocal(shifted, counter, Side::Environment), generic), tol.decomposition,
                  "definition", "1");

    EvenState even = makeEvenState(K, randomPhases(K, rng), cfg.seeds.front() + 1, dimS, dimE);
    if (K >= 2) {
        SwapSpec swap{{{0, 1}}, SwapScope::Partial};
        BipartitePureState swapped = applyLocal(even.state(), swapOnSystem(even.state(), swap, tol), Side::System);
        BipartitePureState restored =
            applyLocal(swapped, counterswapFor(even.state(), swap, tol), Side::Environment);
        checks.atMost("counterswap restores a swapped even state", stateDistance(restored, even.state()),
                      tol.decomposition, "definition", "1");

        BipartitePureState uneven = unevenState(K, dimS, dimE, rng);
        bool refused = false;
        try {
            counterswapFor(uneven, swap, tol);
        } catch (const Error &e) {
            refused = e.kind() == ErrorKind::NotEven;
        }
        checks.truth("counterswap is refused for unequal coefficients", refused, "definition");
    }

    UnitaryOperator uS = randomUnitaryOnSubspace(even.sysBasis(), rng);
    NoEvolutionReport lemma = verifyNoLocalEvolution(even, uS, tol);
    checks.atMost("environment undoes a unitary on the even subspace", lemma.restorationDistance, tol.decomposition,
                  "closed-form", "1");
    checks.atMost("reduced state unchanged by a unitary on the even subspace", lemma.reducedDistance,
                  tol.decomposition, "closed-form", "1");
    report.quantities["rank"] = quantity(K, "1");
    report.quantities["dimensions"] = quantity(Json::array({dimS, dimE}), "1");
}

void bornFinegrain(const ScenarioConfig &cfg, RunReport &report) {
    CheckList checks(report.checks);
    FinegrainResult r = finegrainBornRule({cfg.mu, cfg.nu});
    const std::int64_t n = cfg.mu + cfg.nu;
    const Rational expected(cfg.mu, n);
    report.checks.push_back({"pUp is the exact rational mu/(mu+nu)", r.pUp.value(), expected.value(), 0.0, "exact",
                             r.pUp == expected, "closed-form", "1"});
    checks.abs("|alpha|^2 of the coarse state equals pUp", r.coarseAlphaSquared, r.pUp.value(), 1e-12, "closed-form",
               "1");
    checks.truth("pUp + pDown = 1 exactly", r.pUp.num() + r.pDown.num() == r.pUp.den() && r.pUp.den() == r.pDown.den(),
                 "definition");

    SwapCertifier certifier(r.branchGrouping, r.branches, cfg.tolerances);
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < certifier.rank(); ++k) {
        for (std::size_t l = k + 1; l < certifier.rank(); ++l) {
            worst = std::max(worst, certifier.restorationDistance(k, l));
            failures += certifier.certify(k, l) ? 0 : 1;
        }
    }
    checks.exact("branch pairs failing the swap/counterswap certificate", static_cast<double>(failures), 0.0,
                 "closed-form", "pairs");
    checks.atMost("largest counterswap restoration distance", worst, cfg.tolerances.decomposition, "definition", "1");

    report.quantities["pUp"] = quantity(r.pUp.str(), "1");
    report.quantities["pDown"] = quantity(r.pDown.str(), "1");
    report.quantities["branches"] = quantity(n, "1");
    Table table{"branches", {"index", "system", "ancilla", "environment"}, {}};
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
        const BranchLabel &b = r.labels[j];
        table.rows.push_back({j, b.up ? "up" : "down", b.a, b.e});
    }
    report.tables.push_back(std::move(table));
}

void theoremSweep(const ScenarioConfig &cfg, RunReport &report) {
    CheckList checks(report.checks);
    const Tolerances &tol = cfg.tolerances;
    Table table{"sweep", {"K", "trial", "restoration_distance", "reduced_distance"}, {}};
    Json distances = Json::object();
    std::size_t total = 0, holding = 0;
    double worstRestoration = 0.0, worstReduced = 0.0;
    for (std::size_t K = 1; K <= cfg.maxRank; ++K) {
        std::mt19937_64 rng(cfg.seeds.front() + 7919 * K);
        EvenState even(randomPhases(K, rng), EvenStateBases::random(K, K + 2, K + 1, rng()));
        Json row = Json::array();
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            NoEvolutionReport r = verifyNoLocalEvolution(even, randomUnitaryOnSubspace(even.sysBasis(), rng), tol);
            worstRestoration = std::max(worstRestoration, r.restorationDistance);
            worstReduced = std::max(worstReduced, r.reducedDistance);
            ++total;
            holding += r.holds(tol) ? 1 : 0;
            row.push_back(r.restorationDistance);
            table.rows.push_back({K, t, r.restorationDistance, r.reducedDistance});
        }
        distances["K=" + std::to_string(K)] = row;
    }
    checks.atMost("largest composite restoration distance", worstRestoration, tol.decomposition, "closed-form", "1");
    checks.atMost("largest reduced-operator change", worstReduced, tol.decomposition, "closed-form", "1");
    checks.exact("fraction of trials where the environment undoes the system unitary",
                 static_cast<double>(holding) / static_cast<double>(total), 1.0, "closed-form", "1");

    std::size_t controls = 0, detected = 0;
    for (std::size_t K = 2; K <= cfg.maxRank; ++K) {
        std::mt19937_64 rng(cfg.seeds.front() + 104729 * K);
        ComplexMatrix support;
        BipartitePureState uneven = unevenState(K, K + 2, K + 1, rng, &support);
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const double change = reducedOperatorChange(uneven, randomUnitaryOnSubspace(support, rng));
            ++controls;
            detected += change > 1e-3 ? 1 : 0;
        }
    }
    if (controls > 0) {
        checks.atLeast("uneven control: fraction of unitaries changing the reduced state by > 1e-3",
                       static_cast<double>(detected) / static_cast<double>(controls), 0.95, "oracle", "1");
    }
    report.quantities["restorationDistances"] = quantity(distances, "1");
    report.tables.push_back(std::move(table));
}

void canonicalCount(const ScenarioConfig &, RunReport &report) {
    CheckList checks(report.checks);
    // Bath levels E_j = j/4 with g_j = round(e^{E_j}), so d ln g / dE = 1.
    LevelLadder bath;
    for (std::size_t j = 0; j < 120; ++j) {
        const double e = 0.25 * static_cast<double>(j);
        bath.energies.push_back(e);
        bath.degeneracies.push_back(static_cast<std::uint64_t>(std::llround(std::exp(e))));
    }
    LevelLadder system{{0.0, 1.0, 2.0}, {1, 1, 1}};
    const double totalEnergy = 25.0;
    const double betaBath = 1.0;
    CanonicalFit fit = canonicalByCounting(system, bath, totalEnergy);

    checks.truth("beta is defined", fit.betaDefined, "definition");
    checks.rel("beta recovered from shell counting", fit.beta, betaBath, 0.05, "closed-form", "1/energy");
    checks.atLeast("weighted rSquared of the ln-count fit", fit.rSquared, 0.99, "oracle", "1");
    double sum = 0.0;
    for (double p : fit.occupancies) sum += p;
    checks.abs("occupancies sum to 1", sum, 1.0, 1e-12, "definition", "1");

    Table table{"occupancies", {"k", "E_k", "count", "occupancy", "boltzmann"}, {}};
    double z = 0.0;
    for (double e : system.energies) z += std::exp(-betaBath * e);
    for (std::size_t k = 0; k < system.levels(); ++k) {
        table.rows.push_back({k, system.energies[k], fit.counts[k], fit.occupancies[k],
                              std::exp(-betaBath * system.energies[k]) / z});
    }
    report.tables.push_back(std::move(table));
    report.quantities["window"] = quantity(fit.window, "energy");
    report.quantities["totalEnergy"] = quantity(totalEnergy, "energy");
    Json sensitivity = Json::array();
    for (const WindowSensitivity &s : fit.sensitivity) {
        sensitivity.push_back({{"window", s.window}, {"beta", s.beta}, {"betaDefined", s.betaDefined}});
    }
    report.quantities["windowSensitivity"] = quantity(sensitivity, "energy, 1/energy");
    report.quantities["warnings"] = quantity(fit.warnings, "text");
}

void spectrumSplit(const ScenarioConfig &cfg, RunReport &report) {
    CheckList checks(report.checks);
    EngineConfig e = cfg.engine;
    if (e.infiniteBarrier()) {
        throw Error(ErrorKind::ConfigError, "engine.U: spectrum-split needs a finite barrier");
    }
    const std::size_t P = cfg.pairs;
    const SplitSpectrum numeric = splitSpectrum(e, SplitMode::Numeric, P);
    const SplitSpectrum formula = splitSpectrum(e, SplitMode::Formula, P);
    const std::size_t usable = std::min(numeric.size(), formula.size());
    std::vector<double> fd = finiteDifferenceLevels(e, 2 * numeric.size());

    double worstFd = 0.0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
        worstFd = std::max(worstFd, std::abs(fd[2 * k] - numeric.pairs[k].lower) / numeric.pairs[k].lower);
        worstFd = std::max(worstFd, std::abs(fd[2 * k + 1] - numeric.pairs[k].upper) / numeric.pairs[k].upper);
    }
    checks.atMost("transcendental vs finite-difference levels, largest relative deviation", worstFd, 1e-6, "oracle",
                  "1");

    Table table{"spectrum", {"k", "E_k", "Delta_formula", "Delta_numeric", "ratio"}, {}};
    for (std::size_t k = 0; k < usable; ++k) {
        const double ratio = formula.pairs[k].delta / numeric.pairs[k].delta;
        table.rows.push_back({k + 1, numeric.pairs[k].energy, formula.pairs[k].delta, numeric.pairs[k].delta, ratio});
        checks.factor("splitting formula vs numeric, k=" + std::to_string(k + 1), formula.pairs[k].delta,
                      numeric.pairs[k].delta, 2.0, "closed-form", "energy");
    }
    report.tables.push_back(std::move(table));

    Table sweep{"u-sweep", {"U", "k", "Delta_numeric"}, {}};
    std::vector<std::vector<double>> deltas;
    for (double scale : {1.0, 2.0, 4.0, 8.0}) {
        EngineConfig s = e;
        s.U = scale * e.U;
        SplitSpectrum sp = splitSpectrum(s, SplitMode::Numeric, P);
        deltas.emplace_back();
        for (const SplitPair &p : sp.pairs) {
            deltas.back().push_back(p.delta);
            sweep.rows.push_back({s.U, p.k, p.delta});
        }
    }
    std::size_t violations = 0;
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        for (std::size_t k = 0; k < std::min(deltas[i].size(), deltas[i - 1].size()); ++k) {
            violations += deltas[i][k] < deltas[i - 1][k] ? 0 : 1;
        }
    }
    checks.exact("splitting fails to shrink as U doubles", static_cast<double>(violations), 0.0, "closed-form",
                 "cases");
    report.tables.push_back(std::move(sweep));

    EngineConfig high = e;
    high.U = 1e4 * e.kT();
    double worstGap = 0.0;
    for (const SplitPair &p : splitSpectrum(high, SplitMode::Numeric, P).pairs) {
        worstGap = std::max(worstGap, 2.0 * p.delta / p.energy);
    }
    checks.atMost("pair gap 2 Delta_k / E_k at U beta = 1e4", worstGap, 1e-6, "closed-form", "1");

    EngineConfig bare = e;
    bare.d = 0.0;
    const SplitSpectrum none = splitSpectrum(bare, SplitMode::Numeric, P);
    double worstBox = 0.0;
    for (const SplitPair &p : none.pairs) {
        const double n1 = static_cast<double>(2 * p.k - 1), n2 = static_cast<double>(2 * p.k);
        worstBox = std::max(worstBox, std::abs(p.lower - bare.epsilon() * n1 * n1) / (bare.epsilon() * n1 * n1));
        worstBox = std::max(worstBox, std::abs(p.upper - bare.epsilon() * n2 * n2) / (bare.epsilon() * n2 * n2));
    }
    checks.atMost("d = 0 spectrum vs box levels, largest relative deviation", worstBox, 1e-6, "definition", "1");

    const double e5 = numeric.size() >= 5 ? numeric.pairs[4].energy : std::nan("");
    report.quantities["U_over_E5"] = quantity(e.U / e5, "1");
    report.quantities["d_over_L"] = quantity(e.d / e.L, "1");
    report.quantities["epsilonPrime"] = quantity(numeric.epsilonPrime, "energy");
    Json flags = numeric.flags;
    for (const std::string &f : formula.flags) flags.push_back("formula: " + f);
    report.quantities["flags"] = quantity(flags, "text");
}

Table ledgerTable(const FreeEnergyLedger &ledger) {
    Table t{"ledger", {"step", "free_energy", "entropy", "work", "heat", "energy_change"}, {}};
    for (const LedgerEntry &e : ledger.entries) {
        t.rows.push_back({e.step, e.freeEnergy, e.entropy, e.work, e.heat, e.energyChange});
    }
    return t;
}

void quantumCycle(const ScenarioConfig &cfg, RunReport &report) {
    CheckList checks(report.checks);
    const EngineConfig &e = cfg.engine;
    const FreeEnergyLedger L = freeEnergyLedger(e);
    const double kT = e.kT();

    if (!L.regimeViolation) {
        checks.atMost("barrier insertion free-energy change (Atilde - A)/k_BT", L.insertionShift / kT,
                      1.1 * e.d / e.L, "closed-form", "k_BT");
        checks.rel("measurement free-energy increase deltaA/k_BT", L.deltaA / kT, kLn2, 0.02, "closed-form", "k_BT");
        checks.abs("entropy drop at measurement S(rho~) - S(rho_L)", L.entropyBarrier - L.entropyLeft, kLn2, 1e-6,
                   "closed-form", "nats");
    }
    checks.abs("p_L", L.pL, 0.5, 1e-10, "closed-form", "1");
    checks.abs("p_R", L.pR, 0.5, 1e-10, "closed-form", "1");
    checks.abs("p_L + p_R", L.pL + L.pR, 1.0, 1e-10, "definition", "1");
    checks.abs("repeated measurement returns the same side", L.repeatProbability, 1.0, 1e-10, "definition", "1");
    checks.abs("entropy decomposition over outcomes", L.entropyDecompositionResidual, 0.0, 1e-6, "definition",
               "nats");
    checks.atMost("largest first-law residual |dU - (Q + W)| per step", L.maxFirstLawResidual(),
                  cfg.tolerances.physics, "definition", "energy");
    // Isothermal expansion from V/2 to V: k_BT times the integral of dv/v.
    checks.exact("isothermal expansion work W/k_BT", std::log(e.L / (0.5 * e.L)), kLn2, "closed-form", "k_BT");

    Json &q = report.quantities;
    q["A"] = quantity(L.A, "energy");
    q["Atilde"] = quantity(L.Atilde, "energy");
    q["A_L"] = quantity(L.AL, "energy");
    q["A_R"] = quantity(L.AR, "energy");
    q["deltaA"] = quantity(L.deltaA, "energy");
    q["deltaA_over_kT"] = quantity(L.deltaA / kT, "k_BT");
    q["insertionShift_over_kT"] = quantity(L.insertionShift / kT, "k_BT");
    q["insertionShiftClosedForm_over_kT"] = quantity(L.insertionShiftClosedForm / kT, "k_BT");
    q["extractedWork_over_kT"] = quantity((L.AL - L.A) / kT, "k_BT");
    q["netWork"] = quantity(L.netWork, "energy");
    q["Z"] = quantity(L.Z, "1");
    q["Ztilde"] = quantity(L.Ztilde, "1");
    q["epsilonBeta"] = quantity(e.epsilon() * e.beta(), "1");
    q["boxLevels"] = quantity(L.boxLevels, "1");
    q["pairs"] = quantity(L.pairs, "1");
    q["measurementLevels"] = quantity(L.measurementLevels, "1");
    q["mode"] = quantity(std::string(to_string(L.mode)), "text");
    q["regimeViolation"] = quantity(L.regimeViolation, "flag");
    q["flags"] = quantity(L.flags, "text");
    report.tables.push_back(ledgerTable(L));
}

void classicalCycle(const ScenarioConfig &cfg, RunReport &report) {
    CheckList checks(report.checks);
    const EngineConfig &e = cfg.engine;
    const double kT = e.kT();
    const ClassicalCycle c = classicalEnsembleCycle(e, cfg.samples, cfg.seeds.front());
    const FreeEnergyLedger quantum = freeEnergyLedger(e);
    const ContrastFlag contrast = insertionContrast(c, quantum, kT);

    checks.abs("left fraction", c.leftFraction, 0.5, 0.005, "oracle", "1");
    checks.exact("largest per-sample net work over the cycle", c.maxAbsNetWork, 0.0, "closed-form", "energy");
    checks.abs("per-sample insertion free-energy jump / k_BT", contrast.classicalInsertion / kT, kLn2, 1e-12,
               "closed-form", "k_BT");
    checks.abs("ensemble measurement deltaA / k_BT", c.ensemble.deltaA / kT, kLn2, 1e-12, "closed-form", "k_BT");
    checks.exact("ensemble net work", c.ensemble.netWork, 0.0, "closed-form", "energy");
    checks.truth("insertion contrast: classical k_BT ln 2 vs quantum ~0", contrast.confirmed, "closed-form");

    report.quantities["samples"] = quantity(c.samples.size(), "1");
    report.quantities["classicalInsertion_over_kT"] = quantity(contrast.classicalInsertion / kT, "k_BT");
    report.quantities["quantumInsertion_over_kT"] = quantity(contrast.quantumInsertion / kT, "k_BT");
    report.quantities["contrastThreshold_over_kT"] = quantity(0.1 * kLn2, "k_BT");
    report.tables.push_back(ledgerTable(c.ensemble));
    if (c.samples.size() <= 1000) {
        Table t{"samples", {"index", "x", "side", "insertion_deltaA", "expand_work", "erase_work", "net_work"}, {}};
        for (std::size_t i = 0; i < c.samples.size(); ++i) {
            const ClassicalSample &s = c.samples[i];
            t.rows.push_back({i, s.x, std::string(to_string(s.side)), s.insertionDeltaA, s.expandWork, s.eraseWork,
                              s.netWork});
        }
        report.tables.push_back(std::move(t));
    }
}

std::string unitSystemOf(const EngineConfig &e) {
    if (e.m == 0.5 && e.hbar == 1.0 && e.kB == 1.0) {
        return "natural (ħ=kB=1, m=1/2)";
    }
    return "user (m, L, ħ, kB as configured; energies in units of ħ²/(m L²) scale)";
}

void runComponent(const ScenarioConfig &cfg, RunReport &report) {
    switch (cfg.scenario) {
        case Scenario::EnvarianceCheck: envarianceCheck(cfg, report); break;
        case Scenario::BornFinegrain: bornFinegrain(cfg, report); break;
        case Scenario::TheoremSweep: theoremSweep(cfg, report); break;
        case Scenario::CanonicalCount: canonicalCount(cfg, report); break;
        case Scenario::SpectrumSplit: spectrumSplit(cfg, report); break;
        case Scenario::QuantumCycle: quantumCycle(cfg, report); break;
        case Scenario::ClassicalCycle: classicalCycle(cfg, report); break;
        case Scenario::FullSuite: break;
    }
}

}  // namespace

RunReport runScenario(const ScenarioConfig &cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.scenario = std::string(to_string(cfg.scenario));
    report.version = ENVAR_VERSION;
    report.unitSystem = unitSystemOf(cfg.engine);
    report.config = toJson(cfg);
    if (cfg.scenario != Scenario::FullSuite) {
        runComponent(cfg, report);
    } else {
        for (const ScenarioConfig &child : cfg.components) {
            RunReport part;
            runComponent(child, part);
            const std::string name(to_string(child.scenario));
            for (Check &c : part.checks) {
                c.name = name + ": " + c.name;
                report.checks.push_back(std::move(c));
            }
            for (Table &t : part.tables) {
                t.name = name + "." + t.name;
                report.tables.push_back(std::move(t));
            }
            report.quantities[name] = part.quantities;
        }
    }
    report.wallTimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace envar::cli
