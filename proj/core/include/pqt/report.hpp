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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqt/config.hpp"

namespace pqt::harness {

struct Metric {
    double value = 0.0;
    std::optional<double> uncertainty;
};

/// A named outcome table. Cells are JSON scalars, or [re, im] pairs for
/// complex entries.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct Report {
    ExperimentConfig config;
    std::map<std::string, Metric> metrics;
    std::map<std::string, Table> tables;
    std::map<std::string, std::string> verdicts;
    std::map<std::string, std::uint64_t> resources;
    std::vector<std::string> log;
    /// Only filled in when timing was requested; reports without it are
    /// reproducible byte for byte.
    std::optional<double> wall_clock_seconds;
};

/// Rounds to 12 significant digits, the precision reports are written at.
[[nodiscard]] double round_significant(double x);
[[nodiscard]] Json complex_json(Complex z);

[[nodiscard]] Json to_json(const Report &report);
/// Pretty-printed JSON with lexicographically sorted keys.
[[nodiscard]] std::string serialize_json(const Report &report);
/// Tables only, one block per table in name order.
[[nodiscard]] std::string serialize_csv(const Report &report);

} // namespace pqt::harness
