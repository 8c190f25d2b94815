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

#include "envar/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "envar/error.hpp"

namespace envar {

namespace {

// Number of eigenvalues strictly below x.
std::size_t countBelow(const std::vector<double> &a, const std::vector<double> &b, double x) {
    std::size_t count = 0;
    double q = a[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < a.size(); ++i) {
        const double prev = q == 0.0 ? std::numeric_limits<double>::epsilon() * (std::abs(b[i - 1]) + 1.0) : q;
        q = a[i] - x - b[i - 1] * b[i - 1] / prev;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace

std::vector<double> tridiagonalEigenvalues(const std::vector<double> &diagonal, const std::vector<double> &offDiagonal,
                                           std::size_t count) {
    const std::size_t n = diagonal.size();
    if (n == 0 || offDiagonal.size() + 1 != n || count > n) {
        throw Error(ErrorKind::DimensionMismatch, "tridiagonal matrix shape does not fit the request");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(offDiagonal[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offDiagonal[i]) : 0.0);
        lo = std::min(lo, diagonal[i] - r);
        hi = std::max(hi, diagonal[i] + r);
    }
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        double a = values.empty() ? lo : values.back() - 1e-12 * std::abs(values.back());
        double b = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (countBelow(diagonal, offDiagonal, mid) > j) {
                b = mid;
            } else {
                a = mid;
            }
        }
        values.push_back(0.5 * (a + b));
    }
    return values;
}

namespace {

std::vector<double> gridLevels(const EngineConfig &cfg, std::size_t intervals, std::size_t count) {
    const double h = cfg.L / static_cast<double>(intervals);
    const double kinetic = cfg.hbar * cfg.hbar / (2.0 * cfg.m * h * h);
    const double half = 0.5 * cfg.d;
    std::vector<double> diag(intervals - 1);
    std::vector<double> off(intervals - 2, -kinetic);
    for (std::size_t i = 1; i < intervals; ++i) {
        const double x = -0.5 * cfg.L + static_cast<double>(i) * h;
        const double overlap = std::max(0.0, std::min(x + 0.5 * h, half) - std::max(x - 0.5 * h, -half));
        diag[i - 1] = 2.0 * kinetic + cfg.U * overlap / h;
    }
    return tridiagonalEigenvalues(diag, off, count);
}

}  // namespace

std::vector<double> finiteDifferenceLevels(const EngineConfig &cfg, std::size_t count,
                                           const FiniteDifferenceOptions &options) {
    cfg.validate();
    if (cfg.infiniteBarrier()) {
        throw Error(ErrorKind::InvalidState, "finite-difference levels need a finite barrier");
    }
    if (options.intervals < 4 || count == 0 || count + 2 > options.intervals) {
        throw Error(ErrorKind::BadDimension, "grid too coarse for the requested level count");
    }
    std::vector<double> coarse = gridLevels(cfg, options.intervals, count);
    if (!options.richardson) {
        return coarse;
    }
    std::vector<double> fine = gridLevels(cfg, 2 * options.intervals, count);
    for (std::size_t i = 0; i < count; ++i) {
        fine[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    return fine;
}

}  // namespace envar
