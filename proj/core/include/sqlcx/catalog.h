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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sqlcx/ast.h"

namespace sqlcx {

struct ColumnDef {
    std::string name;
    /// Declared type, uppercased ("DECIMAL(7, 2)"); may be empty.
    std::string type;
    /// Inline constraints in source order ("NOT NULL", "PRIMARY KEY", ...).
    std::string constraints;
};

struct TableSchema {
    std::string name;
    std::vector<ColumnDef> columns;
    /// Table-level constraints, rendered from tokens.
    std::vector<std::string> constraints;

    bool has_column(std::string_view column) const;
    std::vector<std::string> column_names() const;
};

/// Tables and columns known to the resolver. Immutable once built.
class SchemaCatalog {
   public:
    /// Throws DuplicateTable if a table of the same name exists.
    void add_table(TableSchema table);

    const TableSchema* find(std::string_view table) const;
    bool has_column(std::string_view table, std::string_view column) const;
    bool empty() const { return tables_.empty(); }
    size_t size() const { return tables_.size(); }
    /// Tables keyed by normalized name (sorted).
    const std::map<std::string, TableSchema, std::less<>>& tables() const { return tables_; }

    /// FNV-1a hash of the DDL text the catalog was built from.
    const std::string& source_hash() const { return source_hash_; }
    void set_source_hash(std::string hash) { source_hash_ = std::move(hash); }

    /// {"source": hash, "tables": {name: [columns...]}} with sorted keys.
    std::string to_json() const;

   private:
    std::map<std::string, TableSchema, std::less<>> tables_;
    std::string source_hash_;
};

/// Builds a catalog from a script of CREATE TABLE statements. Other
/// statements are skipped. Identifiers are lowercased unless quoted.
///
/// Throws SyntaxError on malformed CREATE TABLE and DuplicateTable.
SchemaCatalog ingest_ddl(std::string_view ddl, Dialect dialect = Dialect::kPostgres);

}  // namespace sqlcx
