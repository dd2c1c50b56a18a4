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

#include "sqlcx/clients.h"

#include <sqlite3.h>

#include <algorithm>

#include <json.hpp>

#include "sqlcx/errors.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

constexpr std::string_view kQuestionMarker = "User question:\n";

// The question is whatever follows the marker in the first user message.
std::string question_of(const std::vector<ChatMessage>& messages) {
    for (const auto& m : messages) {
        if (m.role != "user") continue;
        size_t pos = m.content.find(kQuestionMarker);
        if (pos == std::string::npos) return m.content;
        return std::string(trim(std::string_view(m.content).substr(pos + kQuestionMarker.size())));
    }
    return {};
}

}  // namespace

ScriptedLlm::ScriptedLlm(Script script, std::string model) : script_(std::move(script)), model_(std::move(model)) {}

ScriptedLlm::ScriptedLlm(std::vector<std::string> replies, std::string model)
    : fallback_(std::move(replies)), model_(std::move(model)) {}

std::string ScriptedLlm::complete(const std::vector<ChatMessage>& messages, const SamplingParams&) {
    const std::vector<std::string>* replies = nullptr;
    auto it = script_.find(question_of(messages));
    if (it != script_.end()) {
        replies = &it->second;
    } else if (fallback_) {
        replies = &*fallback_;
    }
    if (replies == nullptr || replies->empty()) throw LlmUnavailable("no scripted reply for question");
    auto turn = static_cast<size_t>(
        std::count_if(messages.begin(), messages.end(), [](const ChatMessage& m) { return m.role == "assistant"; }));
    return (*replies)[std::min(turn, replies->size() - 1)];
}

ScriptedLlm ScriptedLlm::from_json(const std::string& json) {
    auto doc = nlohmann::json::parse(json);
    std::string model = doc.value("model", "scripted");
    const auto& replies = doc.at("replies");
    if (replies.is_array()) return ScriptedLlm(replies.get<std::vector<std::string>>(), model);
    Script script;
    for (auto& [question, seq] : replies.items()) {
        if (seq.is_string()) {
            script[question] = {seq.get<std::string>()};
        } else {
            script[question] = seq.get<std::vector<std::string>>();
        }
    }
    return ScriptedLlm(std::move(script), model);
}

MockValidator MockValidator::rejecting(std::map<std::string, std::string> errors) {
    return MockValidator([errors = std::move(errors)](const std::string& sql) {
        auto it = errors.find(sql);
        return it == errors.end() ? ValidationResult::accepted() : ValidationResult::rejected(it->second);
    });
}

ValidationResult MockValidator::validate(const std::string& sql) { return fn_(sql); }

struct SqliteValidator::Impl {
    sqlite3* db = nullptr;
    ValidationMode mode;
    int row_limit;
    ~Impl() {
        if (db != nullptr) sqlite3_close(db);
    }
};

SqliteValidator::SqliteValidator(const std::string& ddl, const std::string& database, ValidationMode mode,
                                 int row_limit)
    : impl_(std::make_unique<Impl>()) {
    impl_->mode = mode;
    impl_->row_limit = std::max(0, row_limit);
    if (sqlite3_open(database.c_str(), &impl_->db) != SQLITE_OK) {
        std::string msg = impl_->db ? sqlite3_errmsg(impl_->db) : "out of memory";
        throw ValidatorUnavailable("sqlite: " + msg);
    }
    if (!ddl.empty()) {
        char* err = nullptr;
        if (sqlite3_exec(impl_->db, ddl.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
            std::string msg = err ? err : "unknown error";
            sqlite3_free(err);
            throw ValidatorUnavailable("sqlite DDL: " + msg);
        }
    }
}

SqliteValidator::~SqliteValidator() = default;

ValidationResult SqliteValidator::validate(const std::string& sql) {
    std::lock_guard lock(mu_);
    sqlite3_stmt* stmt = nullptr;
    const char* tail = nullptr;
    if (sqlite3_prepare_v2(impl_->db, sql.c_str(), static_cast<int>(sql.size()), &stmt, &tail) != SQLITE_OK)
        return ValidationResult::rejected(sqlite3_errmsg(impl_->db));
    if (stmt == nullptr) return ValidationResult::rejected("empty query");
    std::unique_ptr<sqlite3_stmt, int (*)(sqlite3_stmt*)> guard(stmt, sqlite3_finalize);
    if (tail != nullptr && !trim(std::string_view(tail)).empty() && trim(std::string_view(tail)) != ";")
        return ValidationResult::rejected("multiple statements are not allowed");
    if (!sqlite3_stmt_readonly(stmt)) return ValidationResult::rejected("only read-only queries are allowed");
    if (impl_->mode == ValidationMode::kPlan) return ValidationResult::accepted();
    for (int rows = 0; rows < impl_->row_limit; ++rows) {
        int rc = sqlite3_step(stmt);
        if (rc == SQLITE_DONE) break;
        if (rc != SQLITE_ROW) return ValidationResult::rejected(sqlite3_errmsg(impl_->db));
    }
    return ValidationResult::accepted();
}

}  // namespace sqlcx
