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

#include "sqlcx/errors.h"

#include <utility>

namespace sqlcx {

namespace {

std::string syntax_message(size_t offset, const std::string& expected, const std::string& found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": expected " + expected;
    if (!found.empty()) msg += ", found '" + found + "'";
    return msg;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ", ";
        out += item;
    }
    return out;
}

}  // namespace

SyntaxError::SyntaxError(size_t offset, std::string expected, std::string found)
    : Error(syntax_message(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

UnsupportedConstruct::UnsupportedConstruct(std::string name, size_t offset)
    : Error("unsupported construct " + name + " at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

MultipleStatements::MultipleStatements(size_t offset)
    : Error("multiple statements: second statement starts at offset " + std::to_string(offset)), offset_(offset) {}

DuplicateTable::DuplicateTable(std::string table) : Error("duplicate table: " + table), table_(std::move(table)) {}

AmbiguousColumn::AmbiguousColumn(std::string column, std::vector<std::string> candidates)
    : Error("ambiguous column " + column + " (candidates: " + join(candidates) + ")"),
      column_(std::move(column)),
      candidates_(std::move(candidates)) {}

}  // namespace sqlcx
