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

// Experiment configuration: a JSON object naming a protocol, the state and
// observables it acts on, and the sampling budget. Parsing validates every
// preset and explicit matrix up front so that `run` only sees configs it can
// execute.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqt/hilbert.hpp"
#include "pqt/measurement.hpp"

namespace pqt::harness {

using Json = nlohmann::json;

struct ExperimentConfig {
    std::string name;
    std::string protocol;
    Mode mode = Mode::passive;
    std::optional<Shape> shape;
    /// Preset string or an array of [re, im] amplitude pairs; null if unused.
    Json initial_state;
    /// Each entry is a preset string or a flat row-major array of [re, im].
    std::vector<Json> observables;
    std::uint64_t shots = 1000;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    /// Protocol-specific options, always a JSON object.
    Json params = Json::object();

    friend bool operator==(const ExperimentConfig &,
                           const ExperimentConfig &) = default;
};

struct ProtocolInfo {
    std::string_view id;
    std::string_view summary;
    bool needs_state;
    std::size_t min_observables;
    std::vector<std::string_view> required_params;
};

/// Every protocol id accepted by `parse_config`, in listing order.
[[nodiscard]] const std::vector<ProtocolInfo> &protocols();
[[nodiscard]] const ProtocolInfo *find_protocol(std::string_view id);

/// Parses and validates configuration text; throws ValidationError naming
/// the offending field.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);
[[nodiscard]] ExperimentConfig config_from_json(const Json &json);
/// Re-checks a config built or modified in code (e.g. after CLI overrides).
void validate(const ExperimentConfig &config);

[[nodiscard]] Json to_json(const ExperimentConfig &config);

/// Resolves a state specification. `field` is used in diagnostics.
[[nodiscard]] QuantumState resolve_state(const Json &spec,
                                         const std::optional<Shape> &shape,
                                         const std::string &field);
/// Resolves an observable specification for a state of the given shape.
[[nodiscard]] Observable resolve_observable(const Json &spec,
                                            const std::optional<Shape> &shape,
                                            const std::string &field);

[[nodiscard]] QuantumState initial_state(const ExperimentConfig &config);
[[nodiscard]] std::vector<Observable>
observables(const ExperimentConfig &config);

} // namespace pqt::harness
