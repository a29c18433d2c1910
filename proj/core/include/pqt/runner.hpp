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

#include <string>

#include "pqt/config.hpp"
#include "pqt/errors.hpp"
#include "pqt/report.hpp"

namespace pqt::harness {

/// A protocol failed while running; the message carries the protocol id.
class RunError : public Error {
  public:
    RunError(const std::string &protocol, const std::string &what)
        : Error(protocol + ": " + what), protocol_(protocol) {}

    [[nodiscard]] const std::string &protocol() const noexcept {
        return protocol_;
    }

  private:
    std::string protocol_;
};

struct RunOptions {
    bool timing = false;
};

/// Runs a validated configuration. All randomness descends from
/// `config.seed`, so equal configs give byte-identical serialized reports
/// unless timing is requested.
[[nodiscard]] Report run(const ExperimentConfig &config,
                         const RunOptions &options = {});

} // namespace pqt::harness
