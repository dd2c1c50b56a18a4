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

#include "sqlcx/lexer.h"

#include <cctype>

#include "sqlcx/errors.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

bool is_word_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

/// Length of the comment starting at `pos`, or 0 if none starts there.
size_t comment_length(std::string_view s, size_t pos) {
    if (s.compare(pos, 2, "--") == 0) {
        size_t end = s.find('\n', pos);
        return (end == std::string_view::npos ? s.size() : end) - pos;
    }
    if (s.compare(pos, 2, "/*") == 0) {
        int depth = 0;
        size_t i = pos;
        while (i < s.size()) {
            if (s.compare(i, 2, "/*") == 0) {
                ++depth;
                i += 2;
            } else if (s.compare(i, 2, "*/") == 0) {
                --depth;
                i += 2;
                if (depth == 0) return i - pos;
            } else {
                ++i;
            }
        }
        throw SyntaxError(pos, "end of block comment", "end of input");
    }
    return 0;
}

/// Length of the quoted run starting at `pos` (quote char doubled to escape).
size_t quoted_length(std::string_view s, size_t pos, char quote, bool backslash_escapes) {
    size_t i = pos + 1;
    while (i < s.size()) {
        if (backslash_escapes && s[i] == '\\') {
            i += 2;
            continue;
        }
        if (s[i] == quote) {
            if (i + 1 < s.size() && s[i + 1] == quote) {
                i += 2;
                continue;
            }
            return i + 1 - pos;
        }
        ++i;
    }
    throw SyntaxError(pos, std::string("closing ") + quote, "end of input");
}

std::string unescape_quoted(std::string_view body, char quote) {
    std::string out;
    out.reserve(body.size());
    for (size_t i = 0; i < body.size(); ++i) {
        out.push_back(body[i]);
        if (body[i] == quote && i + 1 < body.size() && body[i + 1] == quote) ++i;
    }
    return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view sql, Dialect dialect) {
    std::vector<Token> tokens;
    size_t i = 0;
    auto push = [&](TokenType type, size_t start, size_t len) {
        Token t;
        t.type = type;
        t.text = std::string(sql.substr(start, len));
        t.offset = start;
        if (type == TokenType::kWord) t.upper = to_upper(t.text);
        tokens.push_back(std::move(t));
        i = start + len;
    };
    while (i < sql.size()) {
        unsigned char c = static_cast<unsigned char>(sql[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (size_t n = comment_length(sql, i); n > 0) {
            i += n;
            continue;
        }
        // Prefixed string literals: E'..', N'..', X'..', B'..'
        if ((c == 'E' || c == 'e' || c == 'N' || c == 'n' || c == 'X' || c == 'x' || c == 'B' || c == 'b') &&
            i + 1 < sql.size() && sql[i + 1] == '\'') {
            bool backslash = (c == 'E' || c == 'e');
            push(TokenType::kString, i, 1 + quoted_length(sql, i + 1, '\'', backslash));
            continue;
        }
        if (is_word_start(c)) {
            size_t j = i + 1;
            while (j < sql.size() && is_word_char(static_cast<unsigned char>(sql[j]))) ++j;
            push(TokenType::kWord, i, j - i);
            continue;
        }
        if (std::isdigit(c) || (c == '.' && i + 1 < sql.size() && std::isdigit(static_cast<unsigned char>(sql[i + 1])))) {
            size_t j = i;
            while (j < sql.size() && std::isdigit(static_cast<unsigned char>(sql[j]))) ++j;
            if (j < sql.size() && sql[j] == '.' && !(j + 1 < sql.size() && sql[j + 1] == '.')) {
                ++j;
                while (j < sql.size() && std::isdigit(static_cast<unsigned char>(sql[j]))) ++j;
            }
            if (j < sql.size() && (sql[j] == 'e' || sql[j] == 'E')) {
                size_t k = j + 1;
                if (k < sql.size() && (sql[k] == '+' || sql[k] == '-')) ++k;
                if (k < sql.size() && std::isdigit(static_cast<unsigned char>(sql[k]))) {
                    j = k;
                    while (j < sql.size() && std::isdigit(static_cast<unsigned char>(sql[j]))) ++j;
                }
            }
            push(TokenType::kNumber, i, j - i);
            continue;
        }
        switch (c) {
            case '\'':
                push(TokenType::kString, i, quoted_length(sql, i, '\'', false));
                continue;
            case '"':
            case '`': {
                if (c == '`' && dialect != Dialect::kSqlite) throw SyntaxError(i, "token", "`");
                size_t len = quoted_length(sql, i, static_cast<char>(c), false);
                Token t;
                t.type = TokenType::kQuotedIdent;
                t.text = unescape_quoted(sql.substr(i + 1, len - 2), static_cast<char>(c));
                t.offset = i;
                tokens.push_back(std::move(t));
                i += len;
                continue;
            }
            case '[':
                if (dialect == Dialect::kSqlite) {
                    size_t end = sql.find(']', i);
                    if (end == std::string_view::npos) throw SyntaxError(i, "closing ]", "end of input");
                    Token t;
                    t.type = TokenType::kQuotedIdent;
                    t.text = std::string(sql.substr(i + 1, end - i - 1));
                    t.offset = i;
                    tokens.push_back(std::move(t));
                    i = end + 1;
                    continue;
                }
                throw SyntaxError(i, "token", "[");
            case ',':
                push(TokenType::kComma, i, 1);
                continue;
            case '(':
                push(TokenType::kLParen, i, 1);
                continue;
            case ')':
                push(TokenType::kRParen, i, 1);
                continue;
            case ';':
                push(TokenType::kSemicolon, i, 1);
                continue;
            case '?':
                push(TokenType::kParam, i, 1);
                continue;
            case '$': {
                size_t j = i + 1;
                while (j < sql.size() && std::isdigit(static_cast<unsigned char>(sql[j]))) ++j;
                if (j == i + 1) throw SyntaxError(i, "parameter number", "$");
                push(TokenType::kParam, i, j - i);
                continue;
            }
            default:
                break;
        }
        static constexpr std::string_view kTwoChar[] = {"<>", "!=", "<=", ">=", "||", "::", "==", "=>"};
        bool matched = false;
        for (auto op : kTwoChar) {
            if (sql.compare(i, 2, op) == 0) {
                push(TokenType::kOperator, i, 2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (c == ':' && i + 1 < sql.size() && is_word_start(static_cast<unsigned char>(sql[i + 1]))) {
            size_t j = i + 1;
            while (j < sql.size() && is_word_char(static_cast<unsigned char>(sql[j]))) ++j;
            push(TokenType::kParam, i, j - i);
            continue;
        }
        if (std::string_view("=<>+-*/%.|&^~").find(static_cast<char>(c)) != std::string_view::npos) {
            push(TokenType::kOperator, i, 1);
            continue;
        }
        throw SyntaxError(i, "token", std::string(1, static_cast<char>(c)));
    }
    Token end;
    end.type = TokenType::kEnd;
    end.offset = sql.size();
    tokens.push_back(end);
    return tokens;
}

namespace {

/// Advances past a string, quoted identifier, or comment at `i`; returns the
/// new position, or `i` if none starts there. Unterminated runs extend to the end.
size_t skip_opaque(std::string_view s, size_t i) {
    char c = s[i];
    if (c == '\'' || c == '"' || c == '`') {
        size_t j = i + 1;
        while (j < s.size()) {
            if (s[j] == c) {
                if (j + 1 < s.size() && s[j + 1] == c) {
                    j += 2;
                    continue;
                }
                return j + 1;
            }
            ++j;
        }
        return s.size();
    }
    if (s.compare(i, 2, "--") == 0) {
        size_t end = s.find('\n', i);
        return end == std::string_view::npos ? s.size() : end;
    }
    if (s.compare(i, 2, "/*") == 0) {
        size_t end = s.find("*/", i + 2);
        return end == std::string_view::npos ? s.size() : end + 2;
    }
    return i;
}

bool is_blank(std::string_view s) {
    std::string stripped = strip_comments(s);
    for (unsigned char c : stripped)
        if (!std::isspace(c)) return false;
    return true;
}

}  // namespace

std::vector<StatementText> split_statements(std::string_view script) {
    std::vector<StatementText> out;
    size_t start = 0;
    int depth = 0;
    size_t i = 0;
    auto flush = [&](size_t end) {
        std::string_view piece = script.substr(start, end - start);
        if (!is_blank(piece)) {
            size_t lead = 0;
            while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
            size_t trail = piece.size();
            while (trail > lead && std::isspace(static_cast<unsigned char>(piece[trail - 1]))) --trail;
            out.push_back({std::string(piece.substr(lead, trail - lead)), start + lead});
        }
    };
    while (i < script.size()) {
        size_t next = skip_opaque(script, i);
        if (next != i) {
            i = next;
            continue;
        }
        char c = script[i];
        if (c == '(') ++depth;
        if (c == ')' && depth > 0) --depth;
        if (c == ';' && depth == 0) {
            flush(i);
            start = i + 1;
        }
        ++i;
    }
    flush(script.size());
    return out;
}

std::string strip_comments(std::string_view sql) {
    std::string out;
    out.reserve(sql.size());
    size_t i = 0;
    while (i < sql.size()) {
        char c = sql[i];
        if (c == '\'' || c == '"' || c == '`') {
            size_t next = skip_opaque(sql, i);
            out.append(sql.substr(i, next - i));
            i = next;
            continue;
        }
        if (sql.compare(i, 2, "--") == 0 || sql.compare(i, 2, "/*") == 0) {
            i = skip_opaque(sql, i);
            out.push_back(' ');
            continue;
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

}  // namespace sqlcx
