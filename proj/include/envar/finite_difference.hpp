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
#include <vector>

#include "envar/szilard.hpp"

namespace envar {

struct FiniteDifferenceOptions {
    /// Grid intervals across the box.
    std::size_t intervals = 10000;
    /// Combine grids of N and 2N intervals to cancel the h^2 error.
    bool richardson = true;
};

/// Lowest `count` eigenvalues of the three-point discretized box-plus-barrier Hamiltonian,
/// with the barrier potential averaged over each grid cell. Requires finite U.
std::vector<double> finiteDifferenceLevels(const EngineConfig &cfg, std::size_t count,
                                           const FiniteDifferenceOptions &options = {});

/// Lowest `count` eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence bisection.
std::vector<double> tridiagonalEigenvalues(const std::vector<double> &diagonal, const std::vector<double> &offDiagonal,
                                           std::size_t count);

}  // namespace envar
