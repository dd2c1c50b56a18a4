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
#include <stdexcept>
#include <string>
#include <vector>

namespace sqlcx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed SQL. `offset` is a byte offset into the statement text.
class SyntaxError : public Error {
   public:
    SyntaxError(size_t offset, std::string expected, std::string found = {});
    size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

   private:
    size_t offset_;
    std::string expected_;
    std::string found_;
};

/// Well-formed SQL that uses a construct outside the supported grammar.
class UnsupportedConstruct : public Error {
   public:
    UnsupportedConstruct(std::string name, size_t offset);
    const std::string& name() const { return name_; }
    size_t offset() const { return offset_; }

   private:
    std::string name_;
    size_t offset_;
};

/// More than one top-level statement handed to `parse`.
class MultipleStatements : public Error {
   public:
    explicit MultipleStatements(size_t offset);
    size_t offset() const { return offset_; }

   private:
    size_t offset_;
};

class DuplicateTable : public Error {
   public:
    explicit DuplicateTable(std::string table);
    const std::string& table() const { return table_; }

   private:
    std::string table_;
};

/// Raised in strict resolution mode when a bare column matches several sources.
class AmbiguousColumn : public Error {
   public:
    AmbiguousColumn(std::string column, std::vector<std::string> candidates);
    const std::string& column() const { return column_; }
    const std::vector<std::string>& candidates() const { return candidates_; }

   private:
    std::string column_;
    std::vector<std::string> candidates_;
};

/// A required input was empty.
class EmptyInput : public Error {
   public:
    explicit EmptyInput(const std::string& what) : Error("empty input: " + what) {}
};

class LlmUnavailable : public Error {
   public:
    explicit LlmUnavailable(const std::string& what) : Error("LLM unavailable: " + what) {}
};

class ValidatorUnavailable : public Error {
   public:
    explicit ValidatorUnavailable(const std::string& what) : Error("validator unavailable: " + what) {}
};

}  // namespace sqlcx
