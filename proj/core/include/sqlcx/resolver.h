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

#include "sqlcx/ast.h"
#include "sqlcx/catalog.h"

namespace sqlcx {

struct ResolveOptions {
    /// Throw AmbiguousColumn when a bare column matches several FROM items.
    /// ORDER BY is always resolved leniently.
    bool strict = false;
};

/// Annotates every column reference, star, and FROM item of `tree`.
///
/// Lookup order for a bare column: FROM items of the current node with known
/// columns, then enclosing nodes (correlation), then the single FROM item of
/// the current node whose columns are unknown. Anything else binds to the
/// sentinel table "?<node id>" with resolved = false.
///
/// CTE and derived-table outputs are traced back to base columns, so
/// `WITH x AS (SELECT a AS z FROM t) SELECT z FROM x` binds z to t.a.
QueryTree resolve(QueryTree tree, const SchemaCatalog& catalog, const ResolveOptions& options = {});

/// Sentinel table name used for unresolvable references inside node `node_id`.
std::string sentinel_table(int node_id);

}  // namespace sqlcx
