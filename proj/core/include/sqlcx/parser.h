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

#include <string_view>
#include <vector>

#include "sqlcx/ast.h"
#include "sqlcx/lexer.h"

namespace sqlcx {

/// Parses exactly one SELECT statement (optionally WITH-prefixed, optionally
/// followed by a semicolon).
///
/// Throws SyntaxError, UnsupportedConstruct (DML, DDL, LATERAL, table
/// functions, VALUES, ...) or MultipleStatements. Offsets are byte offsets
/// into `sql`.
QueryTree parse(std::string_view sql, Dialect dialect = Dialect::kPostgres);

/// Parses a standalone scalar expression. Mostly useful in tests.
Expr parse_expression(std::string_view sql, Dialect dialect = Dialect::kPostgres);

/// Parses every statement of a script (see `split_statements`).
std::vector<QueryTree> parse_script(std::string_view script, Dialect dialect = Dialect::kPostgres);

/// True for words that cannot serve as an implicit (AS-less) alias.
bool is_reserved_word(std::string_view upper_word);

}  // namespace sqlcx
