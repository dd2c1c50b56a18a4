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

#include "sqlcx/harness.h"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "sqlcx/csv.h"
#include "sqlcx/errors.h"
#include "sqlcx/strings.h"
#include "sqlcx_templates.h"

namespace sqlcx {

namespace {

constexpr std::string_view kRetryConvention = "1 initial attempt + max_retries repairs";

std::string fill_repair(std::string_view sql, std::string_view error_message) {
    std::string prompt(templates::kRepairPrompt);
    replace_once(prompt, "{{ sql }}", sql);
    // The error placeholder sits after the inserted SQL; search from there so
    // SQL text that happens to contain the placeholder is left alone.
    std::string_view marker = "{{ error_message }}";
    size_t pos = prompt.rfind(marker);
    if (pos != std::string::npos) prompt.replace(pos, marker.size(), error_message);
    return prompt;
}

}  // namespace

std::string_view system_prompt_template() { return templates::kSystemPrompt; }
std::string_view user_prompt_template() { return templates::kUserPrompt; }
std::string_view repair_prompt_template() { return templates::kRepairPrompt; }

PromptBundle build_prompts(std::string_view ddl, std::string_view question) {
    if (ddl.empty()) throw EmptyInput("DDL statements");
    if (question.empty()) throw EmptyInput("question");
    PromptBundle bundle{std::string(templates::kSystemPrompt), std::string(templates::kUserPrompt)};
    replace_once(bundle.system, "{{ DDL_statements }}", ddl);
    replace_once(bundle.user, "{{ question }}", question);
    return bundle;
}

std::string build_repair_prompt(std::string_view sql, std::string_view error_message) {
    if (sql.empty()) throw EmptyInput("query");
    if (error_message.empty()) throw EmptyInput("error message");
    return fill_repair(sql, error_message);
}

std::string extract_sql(std::string_view response) {
    size_t open = response.find("```");
    if (open != std::string_view::npos) {
        size_t body = response.find('\n', open + 3);
        if (body != std::string_view::npos) {
            size_t close = response.find("```", body + 1);
            std::string_view inner = response.substr(body + 1, close == std::string_view::npos
                                                                   ? std::string_view::npos
                                                                   : close - body - 1);
            return std::string(trim(inner));
        }
    }
    return std::string(trim(response));
}

GenerationRecord generate_with_retry(LlmClient& llm, Validator& validator, const PromptBundle& prompts,
                                     int max_retries, const SamplingParams& sampling, std::string query_id) {
    GenerationRecord record;
    record.query_id = std::move(query_id);
    record.model = llm.model();
    record.max_retries = std::max(0, max_retries);
    record.sampling = sampling;
    record.transcript = {{"system", prompts.system}, {"user", prompts.user}};

    for (int attempt = 0; attempt <= record.max_retries; ++attempt) {
        std::string reply;
        try {
            reply = llm.complete(record.transcript, sampling);
        } catch (const LlmUnavailable& e) {
            record.failure_reason = e.what();
            return record;
        }
        record.transcript.push_back({"assistant", reply});
        std::string sql = extract_sql(reply);
        ValidationResult result;
        if (sql.empty()) {
            result = ValidationResult::rejected("empty query");
        } else {
            try {
                result = validator.validate(sql);
            } catch (const ValidatorUnavailable& e) {
                record.attempts.push_back({sql, std::string(e.what())});
                record.failure_reason = e.what();
                return record;
            }
        }
        if (result.ok) {
            record.attempts.push_back({sql, std::nullopt});
            record.success = true;
            record.final_sql = sql;
            return record;
        }
        if (result.error.empty()) result.error = "unknown error";
        record.attempts.push_back({sql, result.error});
        if (attempt < record.max_retries) record.transcript.push_back({"user", fill_repair(sql, result.error)});
    }
    return record;
}

std::string generation_record_json(const GenerationRecord& r) {
    nlohmann::ordered_json doc;
    doc["query_id"] = r.query_id;
    doc["model"] = r.model;
    doc["success"] = r.success;
    doc["final_sql"] = r.final_sql ? nlohmann::ordered_json(*r.final_sql) : nlohmann::ordered_json(nullptr);
    doc["failure_reason"] =
        r.failure_reason ? nlohmann::ordered_json(*r.failure_reason) : nlohmann::ordered_json(nullptr);
    doc["max_retries"] = r.max_retries;
    doc["retry_convention"] = kRetryConvention;
    nlohmann::ordered_json sampling;
    sampling["temperature"] = r.sampling.temperature;
    sampling["top_p"] = r.sampling.top_p;
    sampling["max_tokens"] = r.sampling.max_tokens;
    sampling["seed"] = r.sampling.seed ? nlohmann::ordered_json(*r.sampling.seed) : nlohmann::ordered_json(nullptr);
    doc["sampling"] = std::move(sampling);
    nlohmann::ordered_json attempts = nlohmann::ordered_json::array();
    for (const auto& a : r.attempts) {
        nlohmann::ordered_json item;
        item["sql"] = a.sql;
        item["error"] = a.error ? nlohmann::ordered_json(*a.error) : nlohmann::ordered_json(nullptr);
        attempts.push_back(std::move(item));
    }
    doc["attempts"] = std::move(attempts);
    nlohmann::ordered_json transcript = nlohmann::ordered_json::array();
    for (const auto& m : r.transcript) transcript.push_back({{"role", m.role}, {"content", m.content}});
    doc["transcript"] = std::move(transcript);
    return doc.dump(2) + "\n";
}

GenerationRecord generation_record_from_json(std::string_view json) {
    auto doc = nlohmann::json::parse(json);
    GenerationRecord r;
    r.query_id = doc.value("query_id", "");
    r.model = doc.value("model", "");
    r.success = doc.value("success", false);
    if (doc.contains("final_sql") && doc["final_sql"].is_string()) r.final_sql = doc["final_sql"].get<std::string>();
    if (doc.contains("failure_reason") && doc["failure_reason"].is_string())
        r.failure_reason = doc["failure_reason"].get<std::string>();
    r.max_retries = doc.value("max_retries", 3);
    if (doc.contains("sampling")) {
        const auto& s = doc["sampling"];
        r.sampling.temperature = s.value("temperature", 0.0);
        r.sampling.top_p = s.value("top_p", 1.0);
        r.sampling.max_tokens = s.value("max_tokens", 2048);
        if (s.contains("seed") && s["seed"].is_number_integer()) r.sampling.seed = s["seed"].get<int64_t>();
    }
    for (const auto& a : doc.value("attempts", nlohmann::json::array())) {
        Attempt attempt;
        attempt.sql = a.value("sql", "");
        if (a.contains("error") && a["error"].is_string()) attempt.error = a["error"].get<std::string>();
        r.attempts.push_back(std::move(attempt));
    }
    for (const auto& m : doc.value("transcript", nlohmann::json::array()))
        r.transcript.push_back({m.value("role", ""), m.value("content", "")});
    return r;
}

std::string SuccessRow::render() const { return std::to_string(successes) + " out of " + std::to_string(total); }

std::string SuccessTable::to_csv() const {
    CsvWriter csv({"model", "successes", "total", "summary"});
    for (const auto& row : rows)
        csv.add_row({row.model, std::to_string(row.successes), std::to_string(row.total), row.render()});
    return csv.str();
}

SuccessTable success_table(const std::vector<GenerationRecord>& records) {
    std::map<std::string, SuccessRow> by_model;
    for (const auto& r : records) {
        SuccessRow& row = by_model[r.model];
        row.model = r.model;
        ++row.total;
        if (r.success) ++row.successes;
    }
    SuccessTable table;
    for (auto& [model, row] : by_model) table.rows.push_back(std::move(row));
    return table;
}

}  // namespace sqlcx
