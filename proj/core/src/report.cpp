// Copyright 2026 The pqt Authors
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

#include "pqt/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace pqt::harness {

namespace {

void round_numbers(Json &j) {
    if (j.is_number_float()) {
        j = round_significant(j.get<double>());
    } else if (j.is_structured()) {
        for (auto &child : j) {
            round_numbers(child);
        }
    }
}

std::string csv_cell(const Json &cell) {
    if (cell.is_string()) {
        const auto s = cell.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string quoted = "\"";
        for (char c : s) {
            quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return quoted + "\"";
    }
    if (cell.is_array() && cell.size() == 2 && cell[0].is_number()) {
        // complex entry: written as two space-separated reals
        return cell[0].dump() + " " + cell[1].dump();
    }
    return cell.dump();
}

} // namespace

double round_significant(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        return x == 0.0 ? 0.0 : x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json to_json(const Report &report) {
    Json j = Json::object();
    j["config"] = to_json(report.config);
    j["seed"] = report.config.seed;

    Json metrics = Json::object();
    for (const auto &[name, m] : report.metrics) {
        Json entry = {{"value", m.value}};
        if (m.uncertainty) {
            entry["uncertainty"] = *m.uncertainty;
        }
        metrics[name] = std::move(entry);
    }
    j["metrics"] = std::move(metrics);

    Json tables = Json::object();
    for (const auto &[name, t] : report.tables) {
        tables[name] = {{"columns", t.columns}, {"rows", t.rows}};
    }
    j["tables"] = std::move(tables);
    j["verdicts"] = report.verdicts;
    j["resources"] = report.resources;
    j["log"] = report.log;
    if (report.wall_clock_seconds) {
        j["wall_clock_seconds"] = *report.wall_clock_seconds;
    }
    round_numbers(j);
    return j;
}

std::string serialize_json(const Report &report) {
    return to_json(report).dump(2) + "\n";
}

std::string serialize_csv(const Report &report) {
    std::ostringstream out;
    bool first = true;
    for (const auto &[name, table] : report.tables) {
        if (!first) {
            out << "\n";
        }
        first = false;
        out << "# " << name << "\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << table.columns[c];
        }
        out << "\n";
        for (const auto &row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                Json cell = row[c];
                round_numbers(cell);
                out << (c ? "," : "") << csv_cell(cell);
            }
            out << "\n";
        }
    }
    return out.str();
}

} // namespace pqt::harness
