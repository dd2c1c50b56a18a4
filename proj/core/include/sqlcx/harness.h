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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlcx/clients.h"

namespace sqlcx {

/// Template texts, byte-exact. Placeholders: {{ DDL_statements }},
/// {{ question }}, {{ sql }}, {{ error_message }}.
std::string_view system_prompt_template();
std::string_view user_prompt_template();
std::string_view repair_prompt_template();

struct PromptBundle {
    std::string system;
    std::string user;
};

/// Fills the system and user templates. Substitution happens once per
/// placeholder; inserted text is never rescanned or escaped.
/// Throws EmptyInput if either argument is empty.
PromptBundle build_prompts(std::string_view ddl, std::string_view question);

/// Throws EmptyInput if either argument is empty.
std::string build_repair_prompt(std::string_view sql, std::string_view error_message);

/// SQL inside the first ``` fence of an LLM reply (an optional language tag
/// after the opening fence is dropped), else the trimmed reply.
std::string extract_sql(std::string_view response);

struct Attempt {
    std::string sql;
    /// Validator error text, verbatim; empty optional when the attempt validated.
    std::optional<std::string> error;
};

struct GenerationRecord {
    std::string query_id;
    std::string model;
    std::vector<Attempt> attempts;
    bool success = false;
    std::optional<std::string> final_sql;
    /// Non-retryable failure (LLM or validator unavailable).
    std::optional<std::string> failure_reason;
    int max_retries = 3;
    SamplingParams sampling;
    /// Full conversation: system, user, assistant, repair user, assistant, ...
    std::vector<ChatMessage> transcript;
};

/// Attempt 1 sends the bundle; each further attempt appends the assistant
/// reply and a repair prompt built from that attempt's SQL and error. Stops
/// at the first accepted query or after `max_retries` repairs, so at most
/// 1 + max_retries attempts are made.
GenerationRecord generate_with_retry(LlmClient& llm, Validator& validator, const PromptBundle& prompts,
                                     int max_retries = 3, const SamplingParams& sampling = {},
                                     std::string query_id = {});

/// Stable JSON rendering (fixed key order). Includes the retry convention.
std::string generation_record_json(const GenerationRecord& record);
GenerationRecord generation_record_from_json(std::string_view json);

struct SuccessRow {
    std::string model;
    int successes = 0;
    int total = 0;
    /// "94 out of 99".
    std::string render() const;
};

struct SuccessTable {
    /// Sorted by model name.
    std::vector<SuccessRow> rows;
    /// `model,successes,total,summary`.
    std::string to_csv() const;
};

SuccessTable success_table(const std::vector<GenerationRecord>& records);

}  // namespace sqlcx
