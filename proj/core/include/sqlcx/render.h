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

#include <string>
#include <string_view>
#include <vector>

#include "sqlcx/ast.h"

namespace sqlcx {

struct RenderOptions {
    /// Replace `*` / `t.*` select items by the resolver's expanded column list.
    bool expand_stars = false;
};

/// SQL text that re-parses to a structurally equal tree.
std::string render_sql(const QueryTree& tree, const RenderOptions& options = {});
std::string render_sql(const QueryNode& node, const RenderOptions& options = {});
std::string render_sql(const Expr& expr);

/// Normalized numeric literal: no redundant zeros, no '+' signs ("007.50" -> "7.5").
std::string normalize_number(std::string_view text);

/// Alias-free rendering used for feature items.
///
/// Columns render through their resolver binding, CTE references are inlined,
/// table and select aliases are dropped, and numeric literals are normalized.
/// `nodes` maps node ids to nodes (see `collect_nodes`).
class CanonicalRenderer {
   public:
    explicit CanonicalRenderer(std::vector<const QueryNode*> nodes) : nodes_(std::move(nodes)) {}
    explicit CanonicalRenderer(const QueryTree& tree) : nodes_(collect_nodes(tree.root)) {}

    std::string expr(const Expr& e) const;
    std::string node(const QueryNode& n) const;

   private:
    std::vector<const QueryNode*> nodes_;
};

}  // namespace sqlcx
