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

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "envar/cli.hpp"

namespace envar::cli {

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
    std::int64_t mu = 0;
    std::int64_t nu = 0;
    double L = 0.0;
    double d = 0.0;
    std::string U;
    double T = 0.0;
    std::size_t nTrunc = 0;
};

double parseHeight(const std::string &text) {
    if (text == "inf" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception &) {
    }
    throw Error(ErrorKind::ConfigError, "--U: expected a number or \"inf\", got \"" + text + "\"");
}

}  // namespace

int runCli(int argc, char **argv) {
    CLI::App app{"Envariance and Szilard-engine scenarios", "envar"};
    app.set_version_flag("--version", std::string(ENVAR_VERSION));
    app.require_subcommand(0, 1);

    Flags f;
    auto *config = app.add_option("--config", f.config, "JSON config file, or a report to re-run");
    auto *seed = app.add_option("--seed", f.seed, "seed (replaces the seed list)");
    auto *out = app.add_option("--out", f.out, "output path; stdout when absent");
    auto *format = app.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    auto *mu = app.add_option("--mu", f.mu, "finegraining: up-branch count");
    auto *nu = app.add_option("--nu", f.nu, "finegraining: down-branch count");
    auto *L = app.add_option("--L", f.L, "box length");
    auto *d = app.add_option("--d", f.d, "barrier width");
    auto *U = app.add_option("--U", f.U, "barrier height, or inf");
    auto *T = app.add_option("--T", f.T, "temperature");
    auto *nTrunc = app.add_option("--n-trunc", f.nTrunc, "box levels kept; 0 picks automatically");

    std::vector<CLI::App *> subcommands;
    for (std::string_view name :
         {"envariance-check", "born-finegrain", "theorem-sweep", "canonical-count", "spectrum-split", "quantum-cycle",
          "classical-cycle", "full-suite"}) {
        subcommands.push_back(app.add_subcommand(std::string(name), "run the " + std::string(name) + " scenario")
                                  ->fallthrough());
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Json patch = config->count() > 0 ? loadConfigFile(f.config) : Json::object();
        std::optional<Scenario> chosen = scenarioOf(patch);
        for (CLI::App *sub : subcommands) {
            if (sub->parsed()) chosen = parseScenario(sub->get_name());
        }
        if (!chosen) {
            throw Error(ErrorKind::ConfigError, "no scenario: name a subcommand or set \"scenario\" in --config");
        }
        const Scenario scenario = *chosen;
        if (seed->count() > 0) patch["seeds"] = Json::array({f.seed});
        if (out->count() > 0) patch["output"]["path"] = f.out;
        if (format->count() > 0) patch["output"]["format"] = f.format;
        if (mu->count() > 0) patch["born"]["mu"] = f.mu;
        if (nu->count() > 0) patch["born"]["nu"] = f.nu;
        if (L->count() > 0) patch["engine"]["L"] = f.L;
        if (d->count() > 0) patch["engine"]["d"] = f.d;
        if (U->count() > 0) {
            const double height = parseHeight(f.U);
            if (std::isinf(height)) patch["engine"]["U"] = "inf";
            else patch["engine"]["U"] = height;
        }
        if (T->count() > 0) patch["engine"]["T"] = f.T;
        if (nTrunc->count() > 0) patch["engine"]["nTrunc"] = f.nTrunc;
        patch.erase("scenario");

        const ScenarioConfig cfg = resolveConfig(scenario, patch);
        const RunReport report = runScenario(cfg);
        emitReport(report, cfg.format, cfg.outPath);

        const auto failed = report.failedChecks();
        std::cerr << "envar " << report.scenario << ": " << report.checks.size() << " checks, " << failed.size()
                  << " failed\n";
        for (const std::string &name : failed) {
            std::cerr << "  FAIL " << name << "\n";
        }
        return failed.empty() ? 0 : 1;
    } catch (const Error &e) {
        std::cerr << "envar: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "envar: error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace envar::cli
