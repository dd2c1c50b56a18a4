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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sqlcx/ast.h"

namespace sqlcx {

enum class TokenType {
    kEnd,
    kWord,         ///< Unquoted identifier or keyword.
    kQuotedIdent,  ///< "name" or `name`
    kString,       ///< 'text' (text holds the raw literal including quotes)
    kNumber,
    kOperator,  ///< = <> != < <= > >= + - * / % || :: .
    kComma,
    kLParen,
    kRParen,
    kSemicolon,
    kParam,  ///< $1, ?, :name
};

struct Token {
    TokenType type = TokenType::kEnd;
    /// Raw text, except kQuotedIdent which holds the unescaped name.
    std::string text;
    /// Uppercased text for kWord, to match keywords.
    std::string upper;
    size_t offset = 0;

    bool is_word(std::string_view keyword) const { return type == TokenType::kWord && upper == keyword; }
    bool is_op(std::string_view op) const { return type == TokenType::kOperator && text == op; }
};

/// Splits SQL text into tokens. Comments and whitespace are dropped; string
/// literals keep their exact bytes. Always ends with a kEnd token.
std::vector<Token> tokenize(std::string_view sql, Dialect dialect = Dialect::kPostgres);

/// One statement cut out of a multi-statement script.
struct StatementText {
    std::string text;
    size_t offset = 0;
};

/// Splits a script at top-level semicolons (outside strings, comments, and
/// parentheses). Empty statements are dropped; the terminating semicolon is not
/// part of the returned text.
std::vector<StatementText> split_statements(std::string_view script);

/// Removes comments while leaving string literals and quoted identifiers untouched.
std::string strip_comments(std::string_view sql);

}  // namespace sqlcx
