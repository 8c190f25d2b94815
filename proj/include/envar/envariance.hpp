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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "envar/hilbert.hpp"

namespace envar {

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
   public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend bool operator==(const Rational &a, const Rational &b) = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Diagonal phase rotation sum_k e^{i phases_k} |b_k><b_k|, identity on the
/// orthogonal complement of the listed basis.
struct PhaseShift {
    std::vector<double> phases;
    std::vector<StateVector> basis;

    UnitaryOperator toUnitary() const;
    PhaseShift inverse() const;
};

enum class SwapScope { Full, Partial };

/// Transpositions of Schmidt branch labels. Indices are distinct within and across pairs.
struct SwapSpec {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    SwapScope scope = SwapScope::Partial;

    /// Throws DimensionMismatch when an index reaches `rank`, or when a full swap
    /// leaves some branch untouched.
    void validate(std::size_t rank) const;
};

struct FinegrainSpec {
    std::int64_t mu = 1;
    std::int64_t nu = 1;
};

/// Environment unitary undoing `shift` applied on the system. The shift basis
/// must be Schmidt-aligned with the state (up to phases); otherwise the
/// conditional environment states are not orthogonal and BasisMismatch is thrown.
UnitaryOperator countershiftFor(const BipartitePureState &state, const PhaseShift &shift,
                                const Tolerances &tol = Tolerances{});

/// The system-side swap of Schmidt branches described by `swap`, built on schmidt(state).
UnitaryOperator swapOnSystem(const BipartitePureState &state, const SwapSpec &swap,
                             const Tolerances &tol = Tolerances{});

/// Mirrored permutation of the environment Schmidt partners. Throws NotEven when
/// a swapped pair has unequal coefficients: no environment operation can then
/// restore the state.
UnitaryOperator counterswapFor(const BipartitePureState &state, const SwapSpec &swap,
                               const Tolerances &tol = Tolerances{});

/// Runs swap/counterswap certificates against one fixed branch decomposition.
/// Works in Schmidt coordinates, so each certificate costs O(rank^2) after the
/// decomposition has been checked against the state once.
class SwapCertifier {
   public:
    /// Throws InvalidState when `branches` does not reconstruct `state`.
    SwapCertifier(const BipartitePureState &state, SchmidtForm branches, const Tolerances &tol = Tolerances{});

    std::size_t rank() const { return branches_.rank(); }
    const SchmidtForm &branches() const { return branches_; }

    /// Distance between the original state and the state after swapping
    /// branches k and l on the system and mirroring the swap on the environment.
    double restorationDistance(std::size_t k, std::size_t l) const;
    bool certify(std::size_t k, std::size_t l) const;

   private:
    SchmidtForm branches_;
    Tolerances tol_;
};

/// True iff swapping Schmidt branches k and l admits a counterswap that restores the state.
bool equalProbabilityCertificate(const BipartitePureState &state, std::size_t k, std::size_t l,
                                 const Tolerances &tol = Tolerances{});

struct BranchLabel {
    bool up = true;    // coarse system label
    std::size_t a = 0;  // ancilla index a_k
    std::size_t e = 0;  // environment index e_k
};

struct FinegrainResult {
    /// sqrt(mu/n)|up>|A_up> + sqrt(nu/n)|down>|A_down>, n = mu + nu, A in the a_k basis.
    BipartitePureState coarse;
    /// S | (A (x) E'), environment restricted to the correlated support span{|a_k e_k>};
    /// flat environment index j is the pair labels[j].
    BipartitePureState fine;
    /// (S (x) A) | E': the grouping in which the n equal branches are Schmidt partners.
    BipartitePureState branchGrouping;
    /// Explicit branch decomposition of branchGrouping: |up/down, a_k> paired with |e_k>.
    SchmidtForm branches;
    std::vector<BranchLabel> labels;
    Rational pUp;
    Rational pDown;
    /// |alpha|^2 read off the coarse amplitude.
    double coarseAlphaSquared = 0.0;
};

inline constexpr std::size_t kDefaultMaxBranches = 4096;

/// Throws BadDimension for mu or nu < 1 and OverflowGuard when mu + nu exceeds maxBranches.
FinegrainResult finegrainBornRule(const FinegrainSpec &spec, std::size_t maxBranches = kDefaultMaxBranches);

struct RationalBracket {
    Rational low;
    Rational high;
    /// False only when the endpoint is 0 or 1 (target closer to an edge than 1/maxDen).
    bool lowRealizable = true;
    bool highRealizable = true;

    double width() const { return high.value() - low.value(); }
};

/// Tightest rationals with denominator <= maxDen enclosing target, found by
/// scanning every denominator. A rational within 1e-12 of the target counts as exact.
RationalBracket incommensurateBound(double target, std::int64_t maxDen);

}  // namespace envar
