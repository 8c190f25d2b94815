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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "envar/cli.hpp"
#include "envar/envariance.hpp"

namespace envar::cli {

namespace {

struct ScenarioName {
    Scenario scenario;
    std::string_view name;
};

constexpr ScenarioName kScenarioNames[] = {
    {Scenario::EnvarianceCheck, "envariance-check"}, {Scenario::BornFinegrain, "born-finegrain"},
    {Scenario::TheoremSweep, "theorem-sweep"},       {Scenario::CanonicalCount, "canonical-count"},
    {Scenario::SpectrumSplit, "spectrum-split"},     {Scenario::QuantumCycle, "quantum-cycle"},
    {Scenario::ClassicalCycle, "classical-cycle"},   {Scenario::FullSuite, "full-suite"},
};

[[noreturn]] void fail(const std::string &path, const std::string &message) {
    throw Error(ErrorKind::ConfigError, path + ": " + message);
}

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

void requireObject(const Json &v, const std::string &path, std::initializer_list<std::string_view> allowed) {
    if (!v.is_object()) {
        fail(path.empty() ? "config" : path, "expected an object");
    }
    for (const auto &[key, value] : v.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            fail(join(path, key), "unknown field");
        }
    }
}

double number(const Json &v, const std::string &path) {
    if (!v.is_number()) {
        fail(path, "expected a number");
    }
    return v.get<double>();
}

double barrierHeight(const Json &v, const std::string &path) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity") {
            return std::numeric_limits<double>::infinity();
        }
        fail(path, "expected a number or \"inf\"");
    }
    return number(v, path);
}

std::uint64_t unsignedInt(const Json &v, const std::string &path) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        fail(path, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::size_t positiveInt(const Json &v, const std::string &path) {
    const std::uint64_t n = unsignedInt(v, path);
    if (n == 0) {
        fail(path, "must be >= 1");
    }
    return static_cast<std::size_t>(n);
}

void applyEngine(EngineConfig &e, const Json &v) {
    requireObject(v, "engine", {"m", "L", "d", "U", "T", "hbar", "kB", "nTrunc"});
    if (v.contains("m")) e.m = number(v["m"], "engine.m");
    if (v.contains("L")) e.L = number(v["L"], "engine.L");
    if (v.contains("d")) e.d = number(v["d"], "engine.d");
    if (v.contains("U")) e.U = barrierHeight(v["U"], "engine.U");
    if (v.contains("T")) e.T = number(v["T"], "engine.T");
    if (v.contains("hbar")) e.hbar = number(v["hbar"], "engine.hbar");
    if (v.contains("kB")) e.kB = number(v["kB"], "engine.kB");
    if (v.contains("nTrunc")) e.nTrunc = static_cast<std::size_t>(unsignedInt(v["nTrunc"], "engine.nTrunc"));
}

void applyTolerances(Tolerances &t, const Json &v) {
    requireObject(v, "tolerances", {"construction", "decomposition", "physics", "evenness", "eigenClamp"});
    auto set = [&](const char *key, double &slot) {
        if (v.contains(key)) {
            slot = number(v[key], std::string("tolerances.") + key);
            if (!(slot > 0.0)) fail(std::string("tolerances.") + key, "must be positive");
        }
    };
    set("construction", t.construction);
    set("decomposition", t.decomposition);
    set("physics", t.physics);
    set("evenness", t.evenness);
    set("eigenClamp", t.eigenClamp);
}

void applyShared(ScenarioConfig &cfg, const Json &patch) {
    if (patch.contains("engine")) applyEngine(cfg.engine, patch["engine"]);
    if (patch.contains("tolerances")) applyTolerances(cfg.tolerances, patch["tolerances"]);
    if (patch.contains("seeds")) {
        const Json &s = patch["seeds"];
        if (!s.is_array() || s.empty()) fail("seeds", "expected a non-empty array of integers");
        cfg.seeds.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            cfg.seeds.push_back(unsignedInt(s[i], "seeds[" + std::to_string(i) + "]"));
        }
    }
    if (patch.contains("output")) {
        const Json &o = patch["output"];
        requireObject(o, "output", {"path", "format"});
        if (o.contains("path")) {
            if (!o["path"].is_string()) fail("output.path", "expected a string");
            cfg.outPath = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            const std::string f = o["format"].is_string() ? o["format"].get<std::string>() : "";
            if (f == "json") cfg.format = Format::Json;
            else if (f == "csv") cfg.format = Format::Csv;
            else fail("output.format", "expected \"json\" or \"csv\"");
        }
    }
    if (patch.contains("born")) {
        const Json &b = patch["born"];
        requireObject(b, "born", {"mu", "nu"});
        if (b.contains("mu")) cfg.mu = static_cast<std::int64_t>(positiveInt(b["mu"], "born.mu"));
        if (b.contains("nu")) cfg.nu = static_cast<std::int64_t>(positiveInt(b["nu"], "born.nu"));
    }
    if (patch.contains("envariance")) {
        const Json &e = patch["envariance"];
        requireObject(e, "envariance", {"rank"});
        if (e.contains("rank")) cfg.evenRank = positiveInt(e["rank"], "envariance.rank");
    }
    if (patch.contains("sweep")) {
        const Json &s = patch["sweep"];
        requireObject(s, "sweep", {"maxRank", "trials"});
        if (s.contains("maxRank")) cfg.maxRank = positiveInt(s["maxRank"], "sweep.maxRank");
        if (s.contains("trials")) cfg.trials = positiveInt(s["trials"], "sweep.trials");
    }
    if (patch.contains("classical")) {
        const Json &c = patch["classical"];
        requireObject(c, "classical", {"samples"});
        if (c.contains("samples")) cfg.samples = positiveInt(c["samples"], "classical.samples");
    }
    if (patch.contains("spectrum")) {
        const Json &s = patch["spectrum"];
        requireObject(s, "spectrum", {"pairs"});
        if (s.contains("pairs")) cfg.pairs = positiveInt(s["pairs"], "spectrum.pairs");
    }
}

void validateSemantics(const ScenarioConfig &cfg) {
    try {
        cfg.engine.validate();
    } catch (const Error &e) {
        fail("engine", e.what());
    }
    if (cfg.evenRank > 64) fail("envariance.rank", "must be <= 64");
    if (cfg.maxRank > 32) fail("sweep.maxRank", "must be <= 32");
    if (cfg.mu + cfg.nu > static_cast<std::int64_t>(kDefaultMaxBranches)) {
        fail("born", "mu + nu must be <= " + std::to_string(kDefaultMaxBranches));
    }
}

}  // namespace

std::string_view to_string(Scenario scenario) {
    for (const ScenarioName &s : kScenarioNames) {
        if (s.scenario == scenario) return s.name;
    }
    return "unknown";
}

std::optional<Scenario> parseScenario(std::string_view name) {
    for (const ScenarioName &s : kScenarioNames) {
        if (s.name == name) return s.scenario;
    }
    return std::nullopt;
}

const std::vector<Scenario> &componentScenarios() {
    static const std::vector<Scenario> all{Scenario::EnvarianceCheck, Scenario::BornFinegrain, Scenario::TheoremSweep,
                                           Scenario::CanonicalCount,  Scenario::SpectrumSplit, Scenario::QuantumCycle,
                                           Scenario::ClassicalCycle};
    return all;
}

ScenarioConfig defaultConfig(Scenario scenario) {
    ScenarioConfig cfg;
    cfg.scenario = scenario;
    if (scenario == Scenario::SpectrumSplit) {
        cfg.engine.U = 2000.0;
        cfg.engine.d = 0.05 * std::numbers::pi;
        cfg.engine.T = 1.0;
    }
    return cfg;
}

std::optional<Scenario> scenarioOf(const Json &patch) {
    if (!patch.is_object() || !patch.contains("scenario")) {
        return std::nullopt;
    }
    const Json &s = patch["scenario"];
    if (!s.is_string()) fail("scenario", "expected a string");
    auto parsed = parseScenario(s.get<std::string>());
    if (!parsed) fail("scenario", "unknown scenario \"" + s.get<std::string>() + "\"");
    return parsed;
}

ScenarioConfig resolveConfig(Scenario scenario, const Json &patch) {
    const Json empty = Json::object();
    const Json &p = patch.is_null() ? empty : patch;
    requireObject(p, "", {"scenario", "engine", "seeds", "tolerances", "output", "born", "envariance", "sweep",
                          "classical", "spectrum", "scenarios"});
    if (auto named = scenarioOf(p); named && *named != scenario) {
        fail("scenario", "config names \"" + std::string(to_string(*named)) + "\" but \"" +
                             std::string(to_string(scenario)) + "\" was requested");
    }
    ScenarioConfig cfg = defaultConfig(scenario);
    applyShared(cfg, p);
    validateSemantics(cfg);

    if (p.contains("scenarios")) {
        if (scenario != Scenario::FullSuite) fail("scenarios", "only valid for full-suite");
        const Json &s = p["scenarios"];
        if (!s.is_object()) fail("scenarios", "expected an object");
        for (const auto &[key, value] : s.items()) {
            auto child = parseScenario(key);
            if (!child || *child == Scenario::FullSuite) fail("scenarios." + key, "unknown scenario");
        }
    }
    if (scenario == Scenario::FullSuite) {
        for (Scenario child : componentScenarios()) {
            Json childPatch = p;
            childPatch.erase("scenario");
            childPatch.erase("output");
            childPatch.erase("scenarios");
            const std::string name(to_string(child));
            if (p.contains("scenarios") && p["scenarios"].contains(name)) {
                const Json &own = p["scenarios"][name];
                requireObject(own, "scenarios." + name,
                              {"engine", "seeds", "tolerances", "born", "envariance", "sweep", "classical", "spectrum"});
                for (const auto &[key, value] : own.items()) {
                    if (value.is_object() && childPatch.contains(key) && childPatch[key].is_object()) {
                        childPatch[key].update(value);
                    } else {
                        childPatch[key] = value;
                    }
                }
            }
            try {
                cfg.components.push_back(resolveConfig(child, childPatch));
            } catch (const Error &e) {
                throw Error(ErrorKind::ConfigError, "scenarios." + name + ": " + e.what());
            }
        }
    }
    return cfg;
}

namespace {

Json engineJson(const EngineConfig &e) {
    Json j;
    j["m"] = e.m;
    j["L"] = e.L;
    j["d"] = e.d;
    if (e.infiniteBarrier()) {
        j["U"] = "inf";
    } else {
        j["U"] = e.U;
    }
    j["T"] = e.T;
    j["hbar"] = e.hbar;
    j["kB"] = e.kB;
    j["nTrunc"] = e.levelCount();
    return j;
}

Json sectionsJson(const ScenarioConfig &cfg) {
    Json j;
    j["engine"] = engineJson(cfg.engine);
    j["seeds"] = cfg.seeds;
    j["tolerances"] = {{"construction", cfg.tolerances.construction},
                       {"decomposition", cfg.tolerances.decomposition},
                       {"physics", cfg.tolerances.physics},
                       {"evenness", cfg.tolerances.evenness},
                       {"eigenClamp", cfg.tolerances.eigenClamp}};
    j["born"] = {{"mu", cfg.mu}, {"nu", cfg.nu}};
    j["envariance"] = {{"rank", cfg.evenRank}};
    j["sweep"] = {{"maxRank", cfg.maxRank}, {"trials", cfg.trials}};
    j["classical"] = {{"samples", cfg.samples}};
    j["spectrum"] = {{"pairs", cfg.pairs}};
    return j;
}

}  // namespace

Json toJson(const ScenarioConfig &cfg) {
    Json j;
    j["scenario"] = to_string(cfg.scenario);
    j["output"] = {{"path", cfg.outPath}, {"format", cfg.format == Format::Json ? "json" : "csv"}};
    if (cfg.scenario != Scenario::FullSuite) {
        j.update(sectionsJson(cfg));
        return j;
    }
    Json children = Json::object();
    for (const ScenarioConfig &child : cfg.components) {
        children[std::string(to_string(child.scenario))] = sectionsJson(child);
    }
    j["scenarios"] = children;
    return j;
}

Json loadConfigFile(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read config file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buffer.str());
    } catch (const Json::parse_error &e) {
        throw Error(ErrorKind::ConfigError, path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorKind::ConfigError, path + ": top level must be an object");
    }
    if (j.contains("checks") && j.contains("config")) {
        return j["config"];
    }
    return j;
}

}  // namespace envar::cli
