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

#include "pqt/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "pqt/errors.hpp"
#include "pqt/protocols.hpp"
#include "pqt/random_states.hpp"

namespace pqt::harness {

namespace {

constexpr double kNormalizable = 1e-6;
constexpr double kConfigHermitian = 1e-8;

[[noreturn]] void fail(const std::string &field, const std::string &what) {
    throw ValidationError(field, what);
}

std::string indexed(const std::string &field, std::size_t i) {
    return field + "[" + std::to_string(i) + "]";
}

Complex complex_entry(const Json &pair, const std::string &field) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
        fail(field, "expected a [real, imag] pair");
    }
    return {pair[0].get<double>(), pair[1].get<double>()};
}

Shape single_qubit(const std::optional<Shape> &shape, const std::string &field,
                   std::string_view preset) {
    if (shape && *shape != Shape{2}) {
        fail(field, "preset '" + std::string(preset) + "' is a qubit state");
    }
    return {2};
}

std::uint64_t parse_count(const std::string &digits, const std::string &field) {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
        fail(field, "expected a non-negative integer, got '" + digits + "'");
    }
    try {
        return std::stoull(digits);
    } catch (const std::exception &) {
        fail(field, "integer out of range");
    }
}

QuantumState state_preset(const std::string &name,
                          const std::optional<Shape> &shape,
                          const std::string &field) {
    const Shape qubit_default = shape.value_or(Shape{2});
    if (name == "zero" || name == "one" || name == "plus" || name == "minus") {
        (void)single_qubit(shape, field, name);
        if (name == "zero") {
            return states::zero();
        }
        if (name == "one") {
            return states::one();
        }
        return name == "plus" ? states::plus() : states::minus();
    }
    if (name.rfind("basis:", 0) == 0) {
        const std::uint64_t k = parse_count(name.substr(6), field);
        if (k >= shape_dimension(qubit_default)) {
            fail(field, "basis index " + std::to_string(k) +
                            " out of range for dimension " +
                            std::to_string(shape_dimension(qubit_default)));
        }
        return StateVector::basis(k, qubit_default);
    }
    if (name.rfind("bell:", 0) == 0) {
        if (shape && *shape != Shape{2, 2}) {
            fail(field, "Bell states live on shape [2, 2]");
        }
        const std::string which = name.substr(5);
        if (which == "phi+") {
            return states::bell(states::Bell::phi_plus);
        }
        if (which == "phi-") {
            return states::bell(states::Bell::phi_minus);
        }
        if (which == "psi+") {
            return states::bell(states::Bell::psi_plus);
        }
        if (which == "psi-") {
            return states::bell(states::Bell::psi_minus);
        }
        fail(field, "unknown Bell state '" + which + "'");
    }
    if (name == "maximally-mixed") {
        return DensityOperator::maximally_mixed(qubit_default);
    }
    if (name.rfind("random-pure:", 0) == 0) {
        Rng rng(parse_count(name.substr(12), field));
        return random::pure_state(qubit_default, rng);
    }
    fail(field, "unknown state preset '" + name + "'");
}

Matrix explicit_matrix(const Json &spec, const std::string &field) {
    const std::size_t n = spec.size();
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(n)));
    if (d < 2 || d * d != n) {
        fail(field, "matrix must list d*d entries with d >= 2, got " +
                        std::to_string(n));
    }
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        m(static_cast<Eigen::Index>(i / d), static_cast<Eigen::Index>(i % d)) =
            complex_entry(spec[i], indexed(field, i));
    }
    if (hermiticity_defect(m) > kConfigHermitian) {
        fail(field, "matrix is not Hermitian within 1e-8");
    }
    return hermitian_part(m);
}

template <typename T>
T count_field(const Json &obj, const char *key, T fallback, bool positive) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json &v = obj.at(key);
    if (!v.is_number_unsigned()) {
        fail(key, "expected a non-negative integer");
    }
    const auto value = v.get<T>();
    if (positive && value == 0) {
        fail(key, "must be positive");
    }
    return value;
}

std::string string_field(const Json &obj, const char *key) {
    if (!obj.contains(key)) {
        fail(key, "missing required field");
    }
    if (!obj.at(key).is_string()) {
        fail(key, "expected a string");
    }
    return obj.at(key).get<std::string>();
}

void check_state_param(const Json &params, const char *key) {
    (void)resolve_state(params.at(key), std::nullopt,
                        std::string("params.") + key);
}

void validate_params(const ExperimentConfig &c) {
    const Json &p = c.params;
    const auto field = [](const char *key) {
        return std::string("params.") + key;
    };
    if (p.contains("candidates")) {
        const Json &cand = p.at("candidates");
        if (!cand.is_array() || cand.size() < 2) {
            fail(field("candidates"), "expected at least two state specs");
        }
        for (std::size_t i = 0; i < cand.size(); ++i) {
            (void)resolve_state(cand[i], c.shape,
                                indexed(field("candidates"), i));
        }
    }
    for (const char *key : {"psi", "phi", "rho1", "rho2", "projector"}) {
        if (p.contains(key)) {
            check_state_param(p, key);
        }
    }
    if (p.contains("truth_table")) {
        const Json &t = p.at("truth_table");
        if (!t.is_array()) {
            fail(field("truth_table"), "expected an array of 0/1 values");
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!t[i].is_number_unsigned() || t[i].get<unsigned>() > 1) {
                fail(indexed(field("truth_table"), i), "expected 0 or 1");
            }
        }
        const std::size_t n = t.size();
        if (n < 2 || (n & (n - 1)) != 0 || n > 32) {
            fail(field("truth_table"),
                 "length must be 2^n with 1 <= n <= 5");
        }
    }
    if (p.contains("promise")) {
        if (!p.at("promise").is_string()) {
            fail(field("promise"), "expected a string");
        }
        try {
            (void)parse_promise(p.at("promise").get<std::string>());
        } catch (const Error &e) {
            fail(field("promise"), e.what());
        }
    }
    if (p.contains("mixture")) {
        const Json &m = p.at("mixture");
        if (!m.is_array() || m.empty()) {
            fail(field("mixture"), "expected a non-empty array");
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            const std::string f = indexed(field("mixture"), i);
            if (!m[i].is_object() || !m[i].contains("state") ||
                !m[i].contains("weight") || !m[i].at("weight").is_number()) {
                fail(f, "expected {\"state\": ..., \"weight\": number}");
            }
            (void)resolve_state(m[i].at("state"), std::nullopt, f + ".state");
        }
    }
    if (p.contains("lambda")) {
        const Json &l = p.at("lambda");
        if (!l.is_number() || !(l.get<double>() > 0.0) ||
            !(l.get<double>() < 1.0)) {
            fail(field("lambda"), "expected a number in (0, 1)");
        }
    }
    for (const char *key : {"source", "action", "presentation", "side",
                            "unitary"}) {
        if (p.contains(key) && !p.at(key).is_string()) {
            fail(field(key), "expected a string");
        }
    }
    if (p.contains("tomography_shots") &&
        !(p.at("tomography_shots").is_number_unsigned() &&
          p.at("tomography_shots").get<std::uint64_t>() > 0)) {
        fail(field("tomography_shots"), "expected a positive integer");
    }
}

} // namespace

const std::vector<ProtocolInfo> &protocols() {
    static const std::vector<ProtocolInfo> table = {
        {"born", "Born-rule sampling of one observable", true, 1, {}},
        {"repeatability", "agreement of consecutive outcome pairs", true, 1,
         {}},
        {"reconstruct", "single-copy state reconstruction", true, 0, {}},
        {"discriminate", "single-copy state discrimination", true, 0,
         {"candidates"}},
        {"spectrum", "eigenvalue recovery from passive outcomes", true, 1, {}},
        {"entanglement", "single-copy entanglement detection", true, 0, {}},
        {"joint-global", "joint statistics of a global product measurement",
         true, 2, {}},
        {"joint-local-passive", "joint statistics of two local passive "
                                "measurements", true, 2, {}},
        {"chsh", "CHSH value from sampled correlators", true, 0, {}},
        {"signalling", "remote-action signalling check", true, 2, {"action"}},
        {"function-recovery", "full truth-table recovery from oracle calls",
         false, 0, {"truth_table"}},
        {"deutsch-jozsa", "constant versus balanced promise problem", false, 0,
         {"truth_table", "promise"}},
        {"clone", "clone a system through its reconstruction", true, 0, {}},
        {"no-cloning", "no-cloning obstruction for a candidate unitary", false,
         0, {"psi", "phi"}},
        {"proper-vs-improper", "distinguish proper and improper mixtures",
         false, 0, {"mixture", "presentation"}},
        {"simulate-qt", "simulate collapse by replacement", true, 2, {}},
        {"teleportation", "teleportation fidelity", true, 0, {}},
        {"nonlinearity", "instrument non-linearity witness", false, 0,
         {"rho1", "rho2", "projector", "lambda"}},
    };
    return table;
}

const ProtocolInfo *find_protocol(std::string_view id) {
    for (const auto &p : protocols()) {
        if (p.id == id) {
            return &p;
        }
    }
    return nullptr;
}

QuantumState resolve_state(const Json &spec, const std::optional<Shape> &shape,
                           const std::string &field) {
    if (spec.is_string()) {
        return state_preset(spec.get<std::string>(), shape, field);
    }
    if (!spec.is_array()) {
        fail(field, "expected a preset name or an array of [re, im] pairs");
    }
    Vector v(static_cast<Eigen::Index>(spec.size()));
    for (std::size_t i = 0; i < spec.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) =
            complex_entry(spec[i], indexed(field, i));
    }
    if (v.size() < 2) {
        fail(field, "state needs at least two amplitudes");
    }
    if (shape && shape_dimension(*shape) != spec.size()) {
        fail(field, "amplitude count does not match shape");
    }
    if (!(v.norm() >= kNormalizable)) {
        fail(field, "state is not normalizable");
    }
    return StateVector::normalized(std::move(v), shape.value_or(Shape{}));
}

Observable resolve_observable(const Json &spec,
                              const std::optional<Shape> &shape,
                              const std::string &field) {
    if (spec.is_string()) {
        const std::string name = spec.get<std::string>();
        if (name.rfind("pauli:", 0) == 0) {
            const std::string label = name.substr(6);
            if (label.empty() ||
                label.find_first_not_of("IXYZ") != std::string::npos) {
                fail(field, "unknown observable preset '" + name +
                                "' (Pauli labels use I, X, Y, Z)");
            }
            if (label.size() > 10) {
                fail(field, "Pauli label longer than 10 qubits");
            }
            return Observable::pauli(label);
        }
        if (name == "basis") {
            return Observable::computational_basis(shape.value_or(Shape{2}));
        }
        fail(field, "unknown observable preset '" + name + "'");
    }
    if (!spec.is_array()) {
        fail(field, "expected a preset name or a row-major matrix");
    }
    try {
        return Observable(field, explicit_matrix(spec, field));
    } catch (const ValidationError &) {
        throw;
    } catch (const Error &e) {
        fail(field, e.what());
    }
}

void validate(const ExperimentConfig &c) {
    if (c.name.empty()) {
        fail("name", "must not be empty");
    }
    const ProtocolInfo *info = find_protocol(c.protocol);
    if (info == nullptr) {
        fail("protocol", "unknown protocol id '" + c.protocol + "'");
    }
    if (c.shape) {
        if (c.shape->empty() ||
            std::any_of(c.shape->begin(), c.shape->end(),
                        [](std::size_t f) { return f < 2; })) {
            fail("shape", "factors must all be at least 2");
        }
    }
    if (c.shots == 0) {
        fail("shots", "must be positive");
    }
    if (c.trials == 0) {
        fail("trials", "must be positive");
    }
    if (info->needs_state && c.initial_state.is_null()) {
        fail("initial_state", "missing required field");
    }
    if (!c.initial_state.is_null()) {
        (void)resolve_state(c.initial_state, c.shape, "initial_state");
    }
    if (c.observables.size() < info->min_observables) {
        fail("observables", "protocol '" + c.protocol + "' needs at least " +
                                std::to_string(info->min_observables) +
                                " observables");
    }
    for (std::size_t i = 0; i < c.observables.size(); ++i) {
        (void)resolve_observable(c.observables[i], c.shape,
                                 indexed("observables", i));
    }
    if (!c.params.is_object()) {
        fail("params", "expected an object");
    }
    for (std::string_view key : info->required_params) {
        if (!c.params.contains(key)) {
            fail("params." + std::string(key), "missing required field");
        }
    }
    validate_params(c);
}

ExperimentConfig config_from_json(const Json &json) {
    if (!json.is_object()) {
        fail("$", "configuration must be a JSON object");
    }
    static const std::vector<std::string> known = {
        "name",   "protocol", "mode",  "shape", "initial_state", "observables",
        "shots",  "trials",   "seed",  "params"};
    for (const auto &[key, value] : json.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            fail(key, "unknown field");
        }
    }

    ExperimentConfig c;
    c.name = string_field(json, "name");
    c.protocol = string_field(json, "protocol");
    if (json.contains("mode")) {
        try {
            c.mode = parse_mode(string_field(json, "mode"));
        } catch (const ValidationError &) {
            throw;
        } catch (const Error &e) {
            fail("mode", e.what());
        }
    }
    if (json.contains("shape")) {
        const Json &s = json.at("shape");
        if (!s.is_array()) {
            fail("shape", "expected an array of factor dimensions");
        }
        Shape shape;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s[i].is_number_unsigned()) {
                fail(indexed("shape", i), "expected a positive integer");
            }
            shape.push_back(s[i].get<std::size_t>());
        }
        c.shape = std::move(shape);
    }
    if (json.contains("initial_state")) {
        c.initial_state = json.at("initial_state");
    }
    if (json.contains("observables")) {
        const Json &o = json.at("observables");
        if (!o.is_array()) {
            fail("observables", "expected an array");
        }
        c.observables.assign(o.begin(), o.end());
    }
    c.shots = count_field<std::uint64_t>(json, "shots", c.shots, true);
    c.trials = count_field<std::uint64_t>(json, "trials", c.trials, true);
    c.seed = count_field<std::uint64_t>(json, "seed", c.seed, false);
    if (json.contains("params")) {
        c.params = json.at("params");
    }
    validate(c);
    return c;
}

ExperimentConfig parse_config(std::string_view text) {
    Json json;
    try {
        json = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        fail("$", std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(json);
}

Json to_json(const ExperimentConfig &c) {
    Json j = Json::object();
    j["name"] = c.name;
    j["protocol"] = c.protocol;
    j["mode"] = std::string(to_string(c.mode));
    if (c.shape) {
        j["shape"] = *c.shape;
    }
    if (!c.initial_state.is_null()) {
        j["initial_state"] = c.initial_state;
    }
    j["observables"] = c.observables;
    j["shots"] = c.shots;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["params"] = c.params;
    return j;
}

QuantumState initial_state(const ExperimentConfig &config) {
    return resolve_state(config.initial_state, config.shape, "initial_state");
}

std::vector<Observable> observables(const ExperimentConfig &config) {
    std::vector<Observable> out;
    for (std::size_t i = 0; i < config.observables.size(); ++i) {
        out.push_back(resolve_observable(config.observables[i], config.shape,
                                         indexed("observables", i)));
    }
    return out;
}

} // namespace pqt::harness
