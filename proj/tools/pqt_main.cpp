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

// pqt — run seeded measurement experiments from JSON configs.
//
//   pqt run --config FILE [--seed N] [--mode quantum|passive]
//           [--format json|csv] [--out PATH] [--timing]
//   pqt list-protocols
//   pqt validate --config FILE
//
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pqt/config.hpp"
#include "pqt/errors.hpp"
#include "pqt/report.hpp"
#include "pqt/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw pqt::ValidationError("--config", "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Seeded experiments with collapsing and passive measurement"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string mode;
    std::string format = "json";
    std::string out_path;
    bool timing = false;

    auto *run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("--config", config_path, "Config file")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--mode", mode, "Override the config mode")
        ->check(CLI::IsMember({"quantum", "passive"}));
    run->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--out", out_path, "Write the report here instead of stdout");
    run->add_flag("--timing", timing,
                  "Record wall-clock time (reports are then not reproducible)");

    auto *list = app.add_subcommand("list-protocols", "List protocol ids");

    auto *check = app.add_subcommand("validate", "Validate a config file");
    check->add_option("--config", config_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    if (list->parsed()) {
        for (const auto &p : pqt::harness::protocols()) {
            std::cout << p.id << "\t" << p.summary << "\n";
        }
        return kOk;
    }

    pqt::harness::ExperimentConfig config;
    try {
        config = pqt::harness::parse_config(read_file(config_path));
        if (seed) {
            config.seed = *seed;
        }
        if (!mode.empty()) {
            config.mode = pqt::parse_mode(mode);
        }
        pqt::harness::validate(config);
    } catch (const pqt::ValidationError &e) {
        std::cerr << "pqt: invalid config: " << e.what() << "\n";
        return kValidation;
    }
    if (check->parsed()) {
        std::cout << "ok: " << config.name << " (" << config.protocol << ")\n";
        return kOk;
    }

    try {
        const auto report = pqt::harness::run(config, {timing});
        const std::string text = format == "csv"
                                     ? pqt::harness::serialize_csv(report)
                                     : pqt::harness::serialize_json(report);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out || !(out << text)) {
                std::cerr << "pqt: cannot write '" << out_path << "'\n";
                return kRuntime;
            }
        }
    } catch (const pqt::ValidationError &e) {
        std::cerr << "pqt: invalid config: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception &e) {
        std::cerr << "pqt: " << e.what() << "\n";
        return kRuntime;
    }
    return kOk;
}
