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

#include "sqlcx/catalog.h"

#include <algorithm>
#include <array>

#include <json.hpp>

#include "sqlcx/errors.h"
#include "sqlcx/lexer.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

constexpr std::array kTableConstraintWords = {"CONSTRAINT", "PRIMARY", "FOREIGN", "UNIQUE",
                                              "CHECK",      "KEY",     "INDEX",   "EXCLUDE"};
constexpr std::array kColumnConstraintWords = {"NOT",        "NULL",    "PRIMARY", "UNIQUE",  "DEFAULT",
                                               "REFERENCES", "CHECK",   "CONSTRAINT", "COLLATE", "GENERATED",
                                               "AUTOINCREMENT", "AUTO_INCREMENT", "IDENTITY"};

template <size_t N> bool is_one_of(const Token& t, const std::array<const char*, N>& words) {
    return t.type == TokenType::kWord &&
           std::any_of(words.begin(), words.end(), [&](const char* w) { return t.upper == w; });
}

std::string normalize_name(const Token& t) { return t.type == TokenType::kQuotedIdent ? t.text : to_lower(t.text); }

std::string render_tokens(const std::vector<Token>& tokens, size_t begin, size_t end) {
    std::string out;
    for (size_t i = begin; i < end; ++i) {
        const Token& t = tokens[i];
        bool glue = t.type == TokenType::kLParen || t.type == TokenType::kRParen || t.type == TokenType::kComma ||
                    (i > begin && (tokens[i - 1].type == TokenType::kLParen));
        if (!out.empty() && !glue) out += ' ';
        out += t.type == TokenType::kWord ? t.upper : t.text;
    }
    return out;
}

class DdlReader {
   public:
    DdlReader(std::vector<Token> tokens, size_t base) : tokens_(std::move(tokens)), base_(base) {}

    bool is_create_table() const {
        size_t i = 0;
        if (!tokens_[i].is_word("CREATE")) return false;
        ++i;
        while (tokens_[i].is_word("TEMP") || tokens_[i].is_word("TEMPORARY") || tokens_[i].is_word("UNLOGGED") ||
               tokens_[i].is_word("GLOBAL") || tokens_[i].is_word("LOCAL"))
            ++i;
        return tokens_[i].is_word("TABLE");
    }

    TableSchema read() {
        while (!tokens_[pos_].is_word("TABLE")) ++pos_;
        ++pos_;
        if (tokens_[pos_].is_word("IF")) {
            expect_word("IF");
            expect_word("NOT");
            expect_word("EXISTS");
        }
        TableSchema table;
        table.name = name("table name");
        while (tokens_[pos_].is_op(".")) {
            ++pos_;
            table.name = name("table name");
        }
        if (tokens_[pos_].type != TokenType::kLParen) fail("(");
        ++pos_;
        while (true) {
            read_element(table);
            if (tokens_[pos_].type == TokenType::kComma) {
                ++pos_;
                continue;
            }
            if (tokens_[pos_].type == TokenType::kRParen) {
                ++pos_;
                break;
            }
            fail(", or )");
        }
        if (table.columns.empty()) fail("column definition");
        return table;
    }

   private:
    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = tokens_[pos_];
        throw SyntaxError(base_ + t.offset, expected, t.type == TokenType::kEnd ? "end of input" : t.text);
    }

    void expect_word(std::string_view w) {
        if (!tokens_[pos_].is_word(w)) fail(std::string(w));
        ++pos_;
    }

    std::string name(const char* what) {
        const Token& t = tokens_[pos_];
        if (t.type != TokenType::kWord && t.type != TokenType::kQuotedIdent) fail(what);
        ++pos_;
        return normalize_name(t);
    }

    /// Index one past the end of the current element (next top-level comma or closing paren).
    size_t element_end() const {
        int depth = 0;
        for (size_t i = pos_; i < tokens_.size(); ++i) {
            const Token& t = tokens_[i];
            if (t.type == TokenType::kEnd) return i;
            if (t.type == TokenType::kLParen) ++depth;
            if (t.type == TokenType::kRParen) {
                if (depth == 0) return i;
                --depth;
            }
            if (t.type == TokenType::kComma && depth == 0) return i;
        }
        return tokens_.size() - 1;
    }

    void read_element(TableSchema& table) {
        size_t end = element_end();
        if (end == pos_) fail("column definition");
        if (is_one_of(tokens_[pos_], kTableConstraintWords)) {
            table.constraints.push_back(render_tokens(tokens_, pos_, end));
            pos_ = end;
            return;
        }
        ColumnDef col;
        col.name = name("column name");
        size_t type_end = pos_;
        int depth = 0;
        while (type_end < end) {
            const Token& t = tokens_[type_end];
            if (depth == 0 && is_one_of(t, kColumnConstraintWords)) break;
            if (t.type == TokenType::kLParen) ++depth;
            if (t.type == TokenType::kRParen) --depth;
            ++type_end;
        }
        col.type = render_tokens(tokens_, pos_, type_end);
        col.constraints = render_tokens(tokens_, type_end, end);
        if (table.has_column(col.name)) {
            throw SyntaxError(base_ + tokens_[pos_ - 1].offset, "unique column name", col.name);
        }
        table.columns.push_back(std::move(col));
        pos_ = end;
    }

    std::vector<Token> tokens_;
    size_t base_;
    size_t pos_ = 0;
};

}  // namespace

bool TableSchema::has_column(std::string_view column) const {
    return std::any_of(columns.begin(), columns.end(), [&](const ColumnDef& c) { return c.name == column; });
}

std::vector<std::string> TableSchema::column_names() const {
    std::vector<std::string> names;
    for (const auto& c : columns) names.push_back(c.name);
    return names;
}

void SchemaCatalog::add_table(TableSchema table) {
    if (tables_.count(table.name)) throw DuplicateTable(table.name);
    std::string key = table.name;
    tables_.emplace(std::move(key), std::move(table));
}

const TableSchema* SchemaCatalog::find(std::string_view table) const {
    auto it = tables_.find(table);
    return it == tables_.end() ? nullptr : &it->second;
}

bool SchemaCatalog::has_column(std::string_view table, std::string_view column) const {
    const TableSchema* t = find(table);
    return t && t->has_column(column);
}

std::string SchemaCatalog::to_json() const {
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const auto& [name, table] : tables_) tables[name] = table.column_names();
    nlohmann::ordered_json doc;
    doc["source"] = source_hash_;
    doc["tables"] = std::move(tables);
    return doc.dump(2) + "\n";
}

SchemaCatalog ingest_ddl(std::string_view ddl, Dialect dialect) {
    SchemaCatalog catalog;
    catalog.set_source_hash(fnv1a_hex(ddl));
    for (const auto& stmt : split_statements(ddl)) {
        std::vector<Token> tokens;
        try {
            tokens = tokenize(stmt.text, dialect);
        } catch (const SyntaxError& e) {
            throw SyntaxError(stmt.offset + e.offset(), e.expected(), e.found());
        }
        DdlReader reader(std::move(tokens), stmt.offset);
        if (!reader.is_create_table()) continue;
        catalog.add_table(reader.read());
    }
    return catalog;
}

}  // namespace sqlcx
