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


#include "sqlcx/config.h"

#include <set>
#include <stdexcept>

#include <json.hpp>

namespace sqlcx {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw std::invalid_argument(where + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!ok.count(key)) throw std::invalid_argument("unknown config key: " + where + "." + key);
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

HarnessConfig parse_harness_config(const std::string& text) {
    HarnessConfig cfg;
    json doc;
    try {
        doc = json::parse(text);
        check_keys(doc, "config", {"engine", "llm", "max_retries", "parallelism", "sampling"});
        if (doc.contains("engine")) {
            const json& e = doc["engine"];
            check_keys(e, "engine", {"kind", "connection", "mode", "row_limit", "statement_timeout_ms"});
            read(e, "kind", cfg.engine.kind);
            read(e, "connection", cfg.engine.connection);
            std::string mode = "execute";
            read(e, "mode", mode);
            if (mode == "execute") {
                cfg.engine.mode = ValidationMode::kExecute;
            } else if (mode == "plan") {
                cfg.engine.mode = ValidationMode::kPlan;
            } else {
                throw std::invalid_argument("engine.mode must be execute or plan");
            }
            read(e, "row_limit", cfg.engine.row_limit);
            read(e, "statement_timeout_ms", cfg.engine.statement_timeout_ms);
            if (cfg.engine.kind != "sqlite" && cfg.engine.kind != "postgres")
                throw std::invalid_argument("engine.kind must be sqlite or postgres");
        }
        if (doc.contains("llm")) {
            const json& l = doc["llm"];
            check_keys(l, "llm", {"endpoint", "model", "api_key_env", "timeout_seconds"});
            read(l, "endpoint", cfg.llm.endpoint);
            read(l, "model", cfg.llm.model);
            read(l, "api_key_env", cfg.llm.api_key_env);
            read(l, "timeout_seconds", cfg.llm.timeout_seconds);
        }
        read(doc, "max_retries", cfg.max_retries);
        read(doc, "parallelism", cfg.parallelism);
        if (doc.contains("sampling")) {
            const json& s = doc["sampling"];
            check_keys(s, "sampling", {"temperature", "top_p", "max_tokens", "seed"});
            read(s, "temperature", cfg.sampling.temperature);
            read(s, "top_p", cfg.sampling.top_p);
            read(s, "max_tokens", cfg.sampling.max_tokens);
            if (s.contains("seed") && !s["seed"].is_null()) cfg.sampling.seed = s["seed"].get<int64_t>();
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (cfg.max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
    if (cfg.parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
    return cfg;
}

std::unique_ptr<Validator> make_validator(const EngineConfig& engine, const std::string& ddl) {
    if (engine.kind == "postgres")
        return std::make_unique<PostgresValidator>(engine.connection, engine.mode, engine.statement_timeout_ms);
    return std::make_unique<SqliteValidator>(ddl, engine.connection.empty() ? ":memory:" : engine.connection,
                                             engine.mode, engine.row_limit);
}

}  // namespace sqlcx
