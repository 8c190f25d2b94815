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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envar/error.hpp"
#include "envar/hilbert.hpp"
#include "envar/szilard.hpp"
#include "json.hpp"

namespace envar::cli {

using Json = nlohmann::ordered_json;

enum class Scenario {
    EnvarianceCheck,
    BornFinegrain,
    TheoremSweep,
    CanonicalCount,
    SpectrumSplit,
    QuantumCycle,
    ClassicalCycle,
    FullSuite,
};

std::string_view to_string(Scenario scenario);
std::optional<Scenario> parseScenario(std::string_view name);
/// Every scenario except full-suite, in run order.
const std::vector<Scenario> &componentScenarios();

enum class Format { Json, Csv };

struct ScenarioConfig {
    Scenario scenario = Scenario::QuantumCycle;
    EngineConfig engine;
    std::vector<std::uint64_t> seeds{20260101};
    Tolerances tolerances;
    std::string outPath;
    Format format = Format::Json;

    std::int64_t mu = 3;
    std::int64_t nu = 5;
    std::size_t evenRank = 4;
    std::size_t maxRank = 8;
    std::size_t trials = 100;
    std::size_t samples = 100000;
    std::size_t pairs = 5;
    /// Resolved component configs, full-suite only.
    std::vector<ScenarioConfig> components;
};

ScenarioConfig defaultConfig(Scenario scenario);

/// Applies `patch` (a config object, possibly partial) on top of the scenario defaults.
/// Unknown fields and ill-typed values raise ConfigError naming the field path.
ScenarioConfig resolveConfig(Scenario scenario, const Json &patch);

/// Scenario named by the patch, if any.
std::optional<Scenario> scenarioOf(const Json &patch);

/// Parses a config file. A report file is accepted and its embedded "config" is used.
Json loadConfigFile(const std::string &path);

/// Fully-resolved config; resolveConfig(scenario, toJson(cfg)) reproduces cfg.
Json toJson(const ScenarioConfig &cfg);

struct Check {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    /// abs: |m - e| <= tol; rel: |m - e| <= tol |e|; max: m <= e; min: m >= e;
    /// factor: 1/tol <= m/e <= tol; exact: m == e.
    std::string comparison;
    bool pass = false;
    /// closed-form, oracle, or definition.
    std::string provenance;
    std::string units;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct RunReport {
    std::string scenario;
    std::string version;
    std::string unitSystem;
    Json config = Json::object();
    std::vector<Check> checks;
    /// Named values that are reported but not checked: {"value": ..., "units": ...}.
    Json quantities = Json::object();
    std::vector<Table> tables;
    double wallTimeSeconds = 0.0;

    bool pass() const;
    std::vector<std::string> failedChecks() const;
};

RunReport runScenario(const ScenarioConfig &cfg);

/// Single JSON object; floating-point values carry 17 significant digits.
std::string renderJson(const RunReport &report);
/// Header plus one row per check, RFC-4180 quoting.
std::string renderChecksCsv(const RunReport &report);
std::string renderTableCsv(const Table &table);

/// Writes the report. CSV puts each table in a sibling file "<path>.<table>.csv".
/// Every file is written to a temporary name first and renamed once all are complete.
/// An empty path writes the JSON report or the checks CSV to stdout.
void emitReport(const RunReport &report, Format format, const std::string &path);

/// Entry point of the envar binary. Returns the process exit code.
int runCli(int argc, char **argv);

}  // namespace envar::cli
