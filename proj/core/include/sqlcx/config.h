// Copyright 2026 The sqlcx Authors
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

#include <memory>
#include <string>

#include "sqlcx/clients.h"

namespace sqlcx {

struct EngineConfig {
    std::string kind = "sqlite";  ///< "sqlite" or "postgres"
    /// sqlite: database path (default ":memory:"); postgres: libpq conninfo.
    std::string connection;
    ValidationMode mode = ValidationMode::kExecute;
    int row_limit = 100;
    int statement_timeout_ms = 30000;
};

struct LlmConfig {
    std::string endpoint;
    std::string model;
    std::string api_key_env = "SQLCX_API_KEY";
    int timeout_seconds = 120;
};

struct HarnessConfig {
    EngineConfig engine;
    LlmConfig llm;
    int max_retries = 3;
    int parallelism = 1;
    SamplingParams sampling;
};

/// Parses the JSON config. Unknown keys are rejected so typos surface early.
/// Throws std::invalid_argument.
HarnessConfig parse_harness_config(const std::string& json);

/// Builds the configured validator. For sqlite the DDL is loaded into the database first.
std::unique_ptr<Validator> make_validator(const EngineConfig& engine, const std::string& ddl);

}  // namespace sqlcx
