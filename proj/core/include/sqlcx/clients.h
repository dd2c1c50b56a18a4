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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sqlcx {

struct ChatMessage {
    std::string role;  ///< "system", "user" or "assistant"
    std::string content;
    bool operator==(const ChatMessage&) const = default;
};

struct SamplingParams {
    double temperature = 0.0;
    double top_p = 1.0;
    int max_tokens = 2048;
    std::optional<int64_t> seed;
    bool operator==(const SamplingParams&) const = default;
};

/// Chat-completion back end. Implementations must be safe for concurrent calls.
class LlmClient {
   public:
    virtual ~LlmClient() = default;
    /// Returns the assistant reply. Throws LlmUnavailable.
    virtual std::string complete(const std::vector<ChatMessage>& messages, const SamplingParams& sampling) = 0;
    virtual std::string model() const = 0;
};

struct ValidationResult {
    bool ok = true;
    std::string error;

    static ValidationResult accepted() { return {}; }
    static ValidationResult rejected(std::string message) { return {false, std::move(message)}; }
};

/// Execution engine that accepts or rejects a statement. Implementations must
/// be safe for concurrent calls.
class Validator {
   public:
    virtual ~Validator() = default;
    /// Throws ValidatorUnavailable.
    virtual ValidationResult validate(const std::string& sql) = 0;
};

/// Deterministic LLM stand-in. Replies are keyed by the question text (the
/// part of the first user message after "User question:\n"); the n-th call
/// within a conversation gets the n-th scripted reply, the last one repeating.
class ScriptedLlm : public LlmClient {
   public:
    using Script = std::map<std::string, std::vector<std::string>>;
    explicit ScriptedLlm(Script script, std::string model = "scripted");
    /// One reply sequence used for every question.
    explicit ScriptedLlm(std::vector<std::string> replies, std::string model = "scripted");

    std::string complete(const std::vector<ChatMessage>& messages, const SamplingParams& sampling) override;
    std::string model() const override { return model_; }

    /// Loads {"model": ..., "replies": {question: [reply, ...]}} JSON.
    static ScriptedLlm from_json(const std::string& json);

   private:
    Script script_;
    std::optional<std::vector<std::string>> fallback_;
    std::string model_;
};

/// Validator driven by a function; for tests.
class MockValidator : public Validator {
   public:
    using Fn = std::function<ValidationResult(const std::string&)>;
    explicit MockValidator(Fn fn) : fn_(std::move(fn)) {}
    /// Rejects exactly the statements in `errors` with the mapped message.
    static MockValidator rejecting(std::map<std::string, std::string> errors);

    ValidationResult validate(const std::string& sql) override;

   private:
    Fn fn_;
};

enum class ValidationMode {
    kExecute,  ///< Run the statement, fetching at most `row_limit` rows.
    kPlan,     ///< Only prepare/plan the statement.
};

/// In-process SQLite engine loaded with a DDL script.
class SqliteValidator : public Validator {
   public:
    /// `database` is a file path or ":memory:". Throws ValidatorUnavailable if
    /// the database cannot be opened or the DDL fails.
    SqliteValidator(const std::string& ddl, const std::string& database = ":memory:",
                    ValidationMode mode = ValidationMode::kExecute, int row_limit = 100);
    ~SqliteValidator() override;
    SqliteValidator(const SqliteValidator&) = delete;
    SqliteValidator& operator=(const SqliteValidator&) = delete;

    ValidationResult validate(const std::string& sql) override;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::mutex mu_;
};

/// PostgreSQL through libpq, loaded at run time (libpq.so.5). Each statement
/// runs inside a read-only transaction with a statement timeout and is rolled back.
class PostgresValidator : public Validator {
   public:
    /// Throws ValidatorUnavailable if libpq cannot be loaded or the connection fails.
    explicit PostgresValidator(const std::string& conninfo, ValidationMode mode = ValidationMode::kExecute,
                               int statement_timeout_ms = 30000, const std::string& library = "libpq.so.5");
    ~PostgresValidator() override;
    PostgresValidator(const PostgresValidator&) = delete;
    PostgresValidator& operator=(const PostgresValidator&) = delete;

    ValidationResult validate(const std::string& sql) override;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::mutex mu_;
};

/// OpenAI-compatible chat-completions client over HTTP(S).
class HttpChatClient : public LlmClient {
   public:
    /// `endpoint` is the full URL, e.g. "https://host/v1/chat/completions".
    /// The API key, if any, is read from the environment variable `api_key_env`.
    HttpChatClient(std::string endpoint, std::string model, std::string api_key_env = "SQLCX_API_KEY",
                   int timeout_seconds = 120);

    std::string complete(const std::vector<ChatMessage>& messages, const SamplingParams& sampling) override;
    std::string model() const override { return model_; }

   private:
    std::string scheme_host_port_;
    std::string path_;
    std::string model_;
    std::string api_key_env_;
    int timeout_seconds_;
};

}  // namespace sqlcx
