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
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <fmt/format.h>

#include "envar/cli.hpp"

namespace envar::cli {

bool RunReport::pass() const {
    for (const Check &c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

std::vector<std::string> RunReport::failedChecks() const {
    std::vector<std::string> names;
    for (const Check &c : checks) {
        if (!c.pass) names.push_back(c.name);
    }
    return names;
}

namespace {

std::string formatDouble(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    return fmt::format("{:.16e}", v);
}

bool isScalar(const Json &v) { return !v.is_object() && !v.is_array(); }

void writeJson(const Json &v, int depth, std::string &out) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string closePad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
        case Json::value_t::number_float:
            out += formatDouble(v.get<double>());
            return;
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto &[key, value] : v.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                writeJson(value, depth + 1, out);
            }
            out += "\n" + closePad + "}";
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            bool flat = std::all_of(v.begin(), v.end(), isScalar);
            out += flat ? "[" : "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i > 0) out += flat ? ", " : ",\n";
                if (!flat) out += pad;
                writeJson(v[i], depth + 1, out);
            }
            out += flat ? "]" : "\n" + closePad + "]";
            return;
        }
        default:
            out += v.dump();
    }
}

Json checkJson(const Check &c) {
    return Json{{"name", c.name},           {"measured", c.measured},     {"expected", c.expected},
                {"tolerance", c.tolerance}, {"comparison", c.comparison}, {"pass", c.pass},
                {"provenance", c.provenance}, {"units", c.units}};
}

std::string csvField(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char ch : s) {
        quoted += ch;
        if (ch == '"') quoted += '"';
    }
    return quoted + "\"";
}

std::string csvCell(const Json &v) {
    if (v.is_string()) return csvField(v.get<std::string>());
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isnan(d)) return "";
        if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
        return fmt::format("{:.16e}", d);
    }
    return csvField(v.dump());
}

std::string csvRow(const std::vector<std::string> &fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) line += ',';
        line += fields[i];
    }
    return line + "\r\n";
}

}  // namespace

std::string renderJson(const RunReport &report) {
    Json j;
    j["scenario"] = report.scenario;
    j["version"] = report.version;
    j["pass"] = report.pass();
    j["unitSystem"] = report.unitSystem;
    j["config"] = report.config;
    Json checks = Json::array();
    for (const Check &c : report.checks) {
        checks.push_back(checkJson(c));
    }
    j["checks"] = checks;
    j["quantities"] = report.quantities;
    Json tables = Json::object();
    for (const Table &t : report.tables) {
        Json rows = Json::array();
        for (const auto &row : t.rows) {
            rows.push_back(Json(row));
        }
        tables[t.name] = {{"columns", t.columns}, {"rows", rows}};
    }
    j["tables"] = tables;
    j["wallTimeSeconds"] = report.wallTimeSeconds;
    std::string out;
    writeJson(j, 0, out);
    return out + "\n";
}

std::string renderChecksCsv(const RunReport &report) {
    std::string out = csvRow({"name", "measured", "expected", "tolerance", "comparison", "pass", "provenance", "units"});
    for (const Check &c : report.checks) {
        out += csvRow({csvField(c.name), csvCell(c.measured), csvCell(c.expected), csvCell(c.tolerance),
                       csvField(c.comparison), c.pass ? "true" : "false", csvField(c.provenance), csvField(c.units)});
    }
    return out;
}

std::string renderTableCsv(const Table &table) {
    std::vector<std::string> header;
    for (const std::string &c : table.columns) {
        header.push_back(csvField(c));
    }
    std::string out = csvRow(header);
    for (const auto &row : table.rows) {
        std::vector<std::string> cells;
        for (const Json &v : row) {
            cells.push_back(csvCell(v));
        }
        out += csvRow(cells);
    }
    return out;
}

void emitReport(const RunReport &report, Format format, const std::string &path) {
    std::vector<std::pair<std::string, std::string>> files;
    if (format == Format::Json) {
        files.emplace_back(path, renderJson(report));
    } else {
        files.emplace_back(path, renderChecksCsv(report));
        if (!path.empty()) {
            for (const Table &t : report.tables) {
                files.emplace_back(path + "." + t.name + ".csv", renderTableCsv(t));
            }
        }
    }
    if (path.empty()) {
        std::cout << files.front().second << std::flush;
        return;
    }

    std::vector<std::string> temps;
    auto cleanup = [&] {
        std::error_code ec;
        for (const std::string &t : temps) std::filesystem::remove(t, ec);
    };
    for (const auto &[target, content] : files) {
        const std::string tmp = target + ".tmp";
        temps.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
            cleanup();
            throw Error(ErrorKind::IoError, "cannot write " + tmp);
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::error_code ec;
        std::filesystem::rename(temps[i], files[i].first, ec);
        if (ec) {
            cleanup();
            throw Error(ErrorKind::IoError, "cannot move " + temps[i] + " to " + files[i].first + ": " + ec.message());
        }
    }
}

}  // namespace envar::cli
