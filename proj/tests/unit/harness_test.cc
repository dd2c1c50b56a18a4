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


#include <gtest/gtest.h>

#include "sqlcx/clients.h"
#include "sqlcx/config.h"
#include "sqlcx/errors.h"
#include "sqlcx/harness.h"
#include "sqlcx/io.h"

namespace sqlcx {
namespace {

const char* kDdl = "CREATE TABLE t (a INTEGER, b TEXT);";

class UnavailableLlm : public LlmClient {
   public:
    std::string complete(const std::vector<ChatMessage>&, const SamplingParams&) override {
        throw LlmUnavailable("connection refused");
    }
    std::string model() const override { return "down"; }
};

TEST(Templates, CompiledInByteForByte) {
    std::string dir = SQLCX_TEMPLATE_DIR;
    EXPECT_EQ(system_prompt_template(), read_file(dir + "/system_prompt.txt"));
    EXPECT_EQ(user_prompt_template(), read_file(dir + "/user_prompt.txt"));
    EXPECT_EQ(repair_prompt_template(), read_file(dir + "/repair_prompt.txt"));
    EXPECT_EQ(user_prompt_template(), "User question:\n{{ question }}");
}

TEST(Prompts, FillsPlaceholdersOnce) {
    PromptBundle p = build_prompts(kDdl, "How many {{ question }} rows?");
    EXPECT_EQ(p.user, "User question:\nHow many {{ question }} rows?");
    EXPECT_NE(p.system.find(kDdl), std::string::npos);
    EXPECT_EQ(p.system.find("{{ DDL_statements }}"), std::string::npos);
    EXPECT_THROW(build_prompts("", "q"), EmptyInput);
    EXPECT_THROW(build_prompts(kDdl, ""), EmptyInput);
}

TEST(Prompts, RepairPromptEmbedsErrorVerbatim) {
    std::string r = build_repair_prompt("SELECT '{{ error_message }}'", "near \"x\": syntax error");
    EXPECT_NE(r.find("SELECT '{{ error_message }}'"), std::string::npos);
    EXPECT_NE(r.find("near \"x\": syntax error"), std::string::npos);
    EXPECT_THROW(build_repair_prompt("", "e"), EmptyInput);
    EXPECT_THROW(build_repair_prompt("SELECT 1", ""), EmptyInput);
}

TEST(ExtractSql, FencesAndPlainText) {
    EXPECT_EQ(extract_sql("Here:\n```sql\nSELECT 1;\n```\nDone."), "SELECT 1;");
    EXPECT_EQ(extract_sql("```\nSELECT 2\n```"), "SELECT 2");
    EXPECT_EQ(extract_sql("  SELECT 3  \n"), "SELECT 3");
}

TEST(Retry, AlwaysInvalidMakesOnePlusMaxRetriesAttempts) {
    ScriptedLlm llm(std::vector<std::string>{"SELECT nope FROM t"});
    MockValidator v([](const std::string&) { return ValidationResult::rejected("no such column: nope"); });
    GenerationRecord r = generate_with_retry(llm, v, build_prompts(kDdl, "q"), 3);
    EXPECT_EQ(r.attempts.size(), 4u);
    EXPECT_FALSE(r.success);
    EXPECT_FALSE(r.final_sql.has_value());
    EXPECT_FALSE(r.failure_reason.has_value());
    // system, user, then assistant/repair pairs; no repair after the last attempt.
    EXPECT_EQ(r.transcript.size(), 9u);
    EXPECT_EQ(r.transcript.back().role, "assistant");
}

TEST(Retry, InvalidThenValidEmbedsFirstError) {
    ScriptedLlm llm(std::vector<std::string>{"SELECT nope FROM t", "SELECT a FROM t"});
    SqliteValidator v(kDdl);
    GenerationRecord r = generate_with_retry(llm, v, build_prompts(kDdl, "q"), 3);
    ASSERT_EQ(r.attempts.size(), 2u);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.final_sql, "SELECT a FROM t");
    ASSERT_TRUE(r.attempts[0].error.has_value());
    EXPECT_EQ(*r.attempts[0].error, "no such column: nope");
    EXPECT_FALSE(r.attempts[1].error.has_value());
    ASSERT_EQ(r.transcript.size(), 5u);
    EXPECT_EQ(r.transcript[3].role, "user");
    EXPECT_EQ(r.transcript[3].content, build_repair_prompt("SELECT nope FROM t", "no such column: nope"));
}

TEST(Retry, ZeroRetriesMeansOneAttempt) {
    ScriptedLlm llm(std::vector<std::string>{"bad"});
    MockValidator v([](const std::string&) { return ValidationResult::rejected("x"); });
    EXPECT_EQ(generate_with_retry(llm, v, build_prompts(kDdl, "q"), 0).attempts.size(), 1u);
}

TEST(Retry, EmptyReplyIsRejected) {
    ScriptedLlm llm(std::vector<std::string>{"```sql\n```", "SELECT 1"});
    MockValidator v([](const std::string&) { return ValidationResult::accepted(); });
    GenerationRecord r = generate_with_retry(llm, v, build_prompts(kDdl, "q"), 3);
    ASSERT_EQ(r.attempts.size(), 2u);
    EXPECT_EQ(r.attempts[0].error, "empty query");
}

TEST(Retry, LlmUnavailableStopsWithoutAttempts) {
    UnavailableLlm llm;
    MockValidator v([](const std::string&) { return ValidationResult::accepted(); });
    GenerationRecord r = generate_with_retry(llm, v, build_prompts(kDdl, "q"), 3);
    EXPECT_TRUE(r.attempts.empty());
    EXPECT_FALSE(r.success);
    ASSERT_TRUE(r.failure_reason.has_value());
    EXPECT_NE(r.failure_reason->find("connection refused"), std::string::npos);
}

TEST(Retry, ValidatorUnavailableIsNotRetried) {
    ScriptedLlm llm(std::vector<std::string>{"SELECT 1"});
    MockValidator v([](const std::string&) -> ValidationResult { throw ValidatorUnavailable("db gone"); });
    GenerationRecord r = generate_with_retry(llm, v, build_prompts(kDdl, "q"), 3);
    EXPECT_EQ(r.attempts.size(), 1u);
    EXPECT_TRUE(r.failure_reason.has_value());
}

TEST(Retry, ScriptKeyedByQuestion) {
    ScriptedLlm llm(ScriptedLlm::Script{{"one", {"SELECT 1"}}, {"two", {"bad", "SELECT 2"}}});
    MockValidator v = MockValidator::rejecting({{"bad", "nope"}});
    EXPECT_EQ(generate_with_retry(llm, v, build_prompts(kDdl, "one")).final_sql, "SELECT 1");
    EXPECT_EQ(generate_with_retry(llm, v, build_prompts(kDdl, "two")).final_sql, "SELECT 2");
}

TEST(Retry, ScriptFromJson) {
    ScriptedLlm llm = ScriptedLlm::from_json(R"({"model": "m1", "replies": {"q": ["SELECT 1"], "r": "SELECT 2"}})");
    EXPECT_EQ(llm.model(), "m1");
    MockValidator v([](const std::string&) { return ValidationResult::accepted(); });
    EXPECT_EQ(generate_with_retry(llm, v, build_prompts(kDdl, "r")).final_sql, "SELECT 2");
}

TEST(Record, JsonRoundTripAndDeterminism) {
    auto run = [] {
        ScriptedLlm llm(std::vector<std::string>{"SELECT nope FROM t", "SELECT a FROM t"}, "gpt-x");
        SqliteValidator v(kDdl);
        SamplingParams s{.temperature = 0.0, .top_p = 1.0, .max_tokens = 512, .seed = 7};
        return generate_with_retry(llm, v, build_prompts(kDdl, "q"), 3, s, "q01");
    };
    std::string a = generation_record_json(run());
    EXPECT_EQ(a, generation_record_json(run()));
    EXPECT_NE(a.find("\"retry_convention\": \"1 initial attempt + max_retries repairs\""), std::string::npos);
    EXPECT_EQ(generation_record_json(generation_record_from_json(a)), a);
}

TEST(SuccessTable, NinetyFourOutOfNinetyNine) {
    std::vector<GenerationRecord> records(99);
    for (int i = 0; i < 99; ++i) {
        records[i].model = "gpt-4";
        records[i].success = i < 94;
    }
    SuccessTable table = success_table(records);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0].render(), "94 out of 99");
    EXPECT_EQ(table.to_csv(), "model,successes,total,summary\ngpt-4,94,99,94 out of 99\n");
}

TEST(SuccessTable, SortedByModel) {
    std::vector<GenerationRecord> records(3);
    records[0].model = "b";
    records[1].model = "a";
    records[2].model = "b";
    records[2].success = true;
    SuccessTable table = success_table(records);
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_EQ(table.rows[0].model, "a");
    EXPECT_EQ(table.rows[1].render(), "1 out of 2");
}

// SQLite's messages are returned untouched; these are the texts of the
// bundled engine and are frozen so a silent rewording shows up here.
TEST(SqliteValidator, FrozenErrorMessages) {
    SqliteValidator v(kDdl);
    EXPECT_TRUE(v.validate("SELECT a, b FROM t").ok);
    EXPECT_EQ(v.validate("SELECT zz FROM t").error, "no such column: zz");
    EXPECT_EQ(v.validate("SELECT a FROM nope").error, "no such table: nope");
    EXPECT_EQ(v.validate("SELEC a FROM t").error, "near \"SELEC\": syntax error");
    EXPECT_EQ(v.validate("SELECT 1; SELECT 2").error, "multiple statements are not allowed");
    EXPECT_EQ(v.validate("DELETE FROM t").error, "only read-only queries are allowed");
    EXPECT_TRUE(v.validate("SELECT 1;").ok);
}

TEST(SqliteValidator, PlanModeDoesNotExecute) {
    SqliteValidator v(kDdl, ":memory:", ValidationMode::kPlan);
    EXPECT_TRUE(v.validate("SELECT a FROM t").ok);
    EXPECT_FALSE(v.validate("SELECT zz FROM t").ok);
}

TEST(SqliteValidator, BadDdlIsUnavailable) { EXPECT_THROW(SqliteValidator("CREATE TABL x"), ValidatorUnavailable); }

TEST(PostgresValidator, MissingLibraryIsUnavailable) {
    EXPECT_THROW(PostgresValidator("host=localhost", ValidationMode::kExecute, 1000, "libdoes-not-exist.so"),
                 ValidatorUnavailable);
}

TEST(HttpChatClient, UnreachableEndpointIsUnavailable) {
    HttpChatClient client("http://127.0.0.1:9/v1/chat/completions", "m", "SQLCX_API_KEY", 2);
    EXPECT_THROW(client.complete({{"user", "hi"}}, {}), LlmUnavailable);
}

TEST(Config, DefaultsAndOverrides) {
    HarnessConfig c = parse_harness_config("{}");
    EXPECT_EQ(c.engine.kind, "sqlite");
    EXPECT_EQ(c.max_retries, 3);
    c = parse_harness_config(R"({
        "engine": {"kind": "postgres", "connection": "dbname=x", "mode": "plan", "statement_timeout_ms": 500},
        "llm": {"endpoint": "http://h/v1/chat/completions", "model": "m"},
        "max_retries": 5, "parallelism": 4,
        "sampling": {"temperature": 0.2, "top_p": 0.9, "max_tokens": 100, "seed": 3}
    })");
    EXPECT_EQ(c.engine.kind, "postgres");
    EXPECT_EQ(c.engine.mode, ValidationMode::kPlan);
    EXPECT_EQ(c.engine.statement_timeout_ms, 500);
    EXPECT_EQ(c.llm.model, "m");
    EXPECT_EQ(c.max_retries, 5);
    EXPECT_EQ(c.parallelism, 4);
    EXPECT_EQ(c.sampling.seed, 3);
    EXPECT_DOUBLE_EQ(c.sampling.top_p, 0.9);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_harness_config(R"({"max_retry": 2})"), std::invalid_argument);
    EXPECT_THROW(parse_harness_config(R"({"engine": {"kind": "oracle"}})"), std::invalid_argument);
    EXPECT_THROW(parse_harness_config(R"({"engine": {"mode": "dry"}})"), std::invalid_argument);
    EXPECT_THROW(parse_harness_config("not json"), std::invalid_argument);
}

TEST(Config, MakesSqliteValidator) {
    auto v = make_validator(EngineConfig{}, kDdl);
    EXPECT_TRUE(v->validate("SELECT a FROM t").ok);
}

}  // namespace
}  // namespace sqlcx
