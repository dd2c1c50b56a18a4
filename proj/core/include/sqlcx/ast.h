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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlcx/box.h"

namespace sqlcx {

enum class Dialect {
    kPostgres,  ///< ANSI core plus `::` casts, ILIKE, DISTINCT ON.
    kAnsi,
    kSqlite,  ///< Backtick identifiers; double-quoted names may fall back to string literals.
};

std::string_view dialect_name(Dialect dialect);
std::optional<Dialect> dialect_from_name(std::string_view name);

/// An identifier after case normalization. Unquoted names are lowercased,
/// quoted names are kept verbatim.
struct Identifier {
    std::string name;
    bool quoted = false;

    bool empty() const { return name.empty(); }
    bool operator==(const Identifier&) const = default;
};

// --------------------------------------------------------------------------
// Resolution annotations (filled by `resolve`, ignored by structural equality)
// --------------------------------------------------------------------------

/// A column reference rewritten to its physical identity.
struct CanonicalColumn {
    std::string table;
    std::string column;
    /// True iff (table, column) exists in the catalog used for resolution.
    bool resolved = false;

    std::string str() const { return table + "." + column; }
    bool operator==(const CanonicalColumn& o) const { return table == o.table && column == o.column; }
    auto operator<=>(const CanonicalColumn& o) const {
        if (auto c = table <=> o.table; c != 0) return c;
        return column <=> o.column;
    }
};

/// Where a column reference was bound and what it stands for.
struct ColumnBinding {
    /// Query node whose FROM item the reference binds to; -1 when unbound.
    int node_id = -1;
    /// Index into that node's flattened source list; -1 for select-list aliases.
    int source_index = -1;
    /// Base columns the reference denotes (transitively through CTEs and
    /// derived tables). Empty for derived outputs without column lineage.
    std::vector<CanonicalColumn> columns;
    /// Alias-free rendering used by canonical expression strings.
    std::string canonical;
    bool bound() const { return !canonical.empty(); }
};

// --------------------------------------------------------------------------
// Expressions
// --------------------------------------------------------------------------

struct QueryNode;
struct Expr;

struct OrderItem;

struct WindowSpec {
    std::vector<Expr> partition_by;
    std::vector<OrderItem> order_by;
    /// Rendered frame clause (e.g. "ROWS BETWEEN UNBOUNDED PRECEDING AND CURRENT ROW"), or empty.
    std::string frame;

    bool operator==(const WindowSpec&) const;
};

enum class ExprKind {
    kLiteral,
    kColumn,
    kStar,
    kUnary,
    kBinary,
    kLike,
    kBetween,
    kInList,
    kInSubquery,
    kExists,
    kSubquery,
    kQuantified,
    kIsNull,
    kIs,  ///< IS [NOT] TRUE / FALSE / UNKNOWN / DISTINCT FROM
    kFunction,
    kCast,
    kCase,
    kInterval,
    kRow,
    kGroupingSet,  ///< ROLLUP / CUBE / GROUPING SETS inside GROUP BY.
};

enum class LiteralKind { kNumber, kString, kNull, kBool, kTyped };

/// Special call syntaxes that take keyword-separated arguments.
enum class CallStyle { kPlain, kExtract, kSubstringFrom, kPosition, kTrim, kNiladic };

struct Expr {
    ExprKind kind = ExprKind::kLiteral;
    /// Operator, function name (uppercase), literal text, keyword, or type name.
    std::string text;
    /// Secondary text: typed-literal type, interval unit, EXTRACT field, TRIM mode, quantifier.
    std::string text2;
    LiteralKind literal = LiteralKind::kNumber;
    /// Column/star qualifier path (e.g. {"s"} for s.a) and column name.
    std::vector<Identifier> qualifier;
    Identifier column;
    bool negated = false;
    bool distinct = false;
    CallStyle style = CallStyle::kPlain;
    /// CAST(x AS t) vs x::t
    bool colon_cast = false;
    /// CASE with operand (CASE x WHEN ...).
    bool case_operand = false;
    bool case_else = false;
    std::vector<Expr> children;
    Box<QueryNode> subquery;
    std::optional<WindowSpec> window;
    Box<Expr> filter;

    /// Byte offset in the source text; not part of structural equality.
    size_t offset = 0;
    /// Filled by the resolver for kColumn; not part of structural equality.
    ColumnBinding binding;
    /// kSqlite: a double-quoted name that may fall back to a string literal.
    bool maybe_string = false;

    bool operator==(const Expr& o) const;
};

struct OrderItem {
    Expr expr;
    bool descending = false;
    /// "", "FIRST" or "LAST".
    std::string nulls;
    bool operator==(const OrderItem&) const = default;
};

// --------------------------------------------------------------------------
// FROM items
// --------------------------------------------------------------------------

enum class JoinType { kInner, kLeft, kRight, kFull, kCross };

std::string_view join_type_name(JoinType type);

enum class TableRefKind { kTable, kSubquery, kJoin };

/// What a leaf FROM item turned out to be after resolution.
enum class SourceKind { kUnresolved, kBaseTable, kCte, kDerived };

struct TableRef {
    TableRefKind kind = TableRefKind::kTable;
    /// Qualified table name parts (kTable).
    std::vector<Identifier> name;
    Identifier alias;
    std::vector<Identifier> column_aliases;
    Box<QueryNode> subquery;  ///< kSubquery

    JoinType join = JoinType::kInner;
    bool natural = false;
    Box<TableRef> left;
    Box<TableRef> right;
    std::optional<Expr> condition;
    std::vector<Identifier> using_columns;

    size_t offset = 0;
    /// Resolver annotations.
    SourceKind source_kind = SourceKind::kUnresolved;
    int source_index = -1;
    /// Base columns named by USING (kJoin), from both sides.
    std::vector<CanonicalColumn> using_resolved;

    const Identifier& table_name() const { return name.back(); }
    bool operator==(const TableRef& o) const;
};

// --------------------------------------------------------------------------
// Query nodes
// --------------------------------------------------------------------------

struct SelectItem {
    Expr expr;
    Identifier alias;
    bool operator==(const SelectItem&) const = default;
};

struct Cte {
    Identifier name;
    std::vector<Identifier> column_aliases;
    Box<QueryNode> body;
    /// MATERIALIZED / NOT MATERIALIZED hint, rendered verbatim.
    std::string materialized;
    bool operator==(const Cte&) const = default;
};

enum class SetOpKind { kUnion, kIntersect, kExcept };

std::string_view set_op_name(SetOpKind op);

struct SetOpArm {
    SetOpKind op = SetOpKind::kUnion;
    bool all = false;
    Box<QueryNode> operand;
    bool operator==(const SetOpArm&) const = default;
};

/// One output column of a query node, as seen by the enclosing scope.
struct OutputColumn {
    Identifier name;
    std::vector<CanonicalColumn> columns;
    std::string canonical;
};

/// A leaf FROM item of a node after resolution.
struct ResolvedSource {
    SourceKind kind = SourceKind::kUnresolved;
    /// Alias if present, otherwise the table or CTE name.
    std::string visible_name;
    /// Physical table (kBaseTable) or CTE name (kCte).
    std::string table;
    /// Node id of the derived body (kCte, kDerived).
    int body_node = -1;
    /// Known output columns; empty with `columns_known == false` when unknown.
    std::vector<OutputColumn> columns;
    bool columns_known = false;
    /// Physical tables reachable from this source.
    std::vector<std::string> base_tables;
};

/// One SELECT core. Set operations chain further cores as operands of the head;
/// ORDER BY / LIMIT on the head apply to the whole chain.
struct QueryNode {
    std::vector<Cte> ctes;
    bool recursive = false;
    bool distinct = false;
    std::vector<Expr> distinct_on;
    std::vector<SelectItem> select;
    std::vector<TableRef> from;
    std::optional<Expr> where;
    std::vector<Expr> group_by;
    std::optional<Expr> having;
    std::vector<OrderItem> order_by;
    std::optional<Expr> limit;
    std::optional<Expr> offset_rows;
    std::vector<SetOpArm> set_ops;

    /// Pre-order index within the tree (root = 0).
    int id = -1;
    size_t offset = 0;
    /// Resolver annotations.
    std::vector<ResolvedSource> sources;
    std::vector<OutputColumn> outputs;
    /// False when a star expands over a source whose columns are unknown.
    bool outputs_known = false;
    bool resolved = false;

    bool operator==(const QueryNode& o) const;
};

/// Parsed representation of one statement.
struct QueryTree {
    QueryNode root;
    std::string source_text;
    Dialect dialect = Dialect::kPostgres;
    bool resolved = false;

    /// CTE definitions of the top-level WITH clause.
    const std::vector<Cte>& cte_defs() const { return root.ctes; }
    /// Number of query nodes (SELECT cores).
    size_t node_count() const;
    /// Structural equality (ignores offsets, source text, and annotations).
    bool operator==(const QueryTree& o) const { return root == o.root; }
};

// --------------------------------------------------------------------------
// Traversal helpers
// --------------------------------------------------------------------------

/// Calls `fn` for each query node directly nested in `node` (CTE bodies,
/// subqueries in SELECT/FROM/WHERE/GROUP BY/HAVING/ORDER BY, set-op operands),
/// in textual order.
template <typename Node, typename Fn> void for_each_child_node(Node& node, Fn&& fn);

/// Calls `fn` for every query node directly nested in `expr` (not deeper).
template <typename E, typename Fn> void for_each_subquery_in_expr(E& expr, Fn&& fn) {
    if (expr.subquery) fn(*expr.subquery);
    for (auto& child : expr.children) for_each_subquery_in_expr(child, fn);
    if (expr.window) {
        for (auto& p : expr.window->partition_by) for_each_subquery_in_expr(p, fn);
        for (auto& o : expr.window->order_by) for_each_subquery_in_expr(o.expr, fn);
    }
    if (expr.filter) for_each_subquery_in_expr(*expr.filter, fn);
}

template <typename T, typename Fn> void for_each_subquery_in_table_ref(T& ref, Fn&& fn) {
    switch (ref.kind) {
        case TableRefKind::kTable:
            break;
        case TableRefKind::kSubquery:
            fn(*ref.subquery);
            break;
        case TableRefKind::kJoin:
            for_each_subquery_in_table_ref(*ref.left, fn);
            for_each_subquery_in_table_ref(*ref.right, fn);
            if (ref.condition) for_each_subquery_in_expr(*ref.condition, fn);
            break;
    }
}

template <typename Node, typename Fn> void for_each_child_node(Node& node, Fn&& fn) {
    for (auto& cte : node.ctes) fn(*cte.body);
    for (auto& e : node.distinct_on) for_each_subquery_in_expr(e, fn);
    for (auto& item : node.select) for_each_subquery_in_expr(item.expr, fn);
    for (auto& ref : node.from) for_each_subquery_in_table_ref(ref, fn);
    if (node.where) for_each_subquery_in_expr(*node.where, fn);
    for (auto& g : node.group_by) for_each_subquery_in_expr(g, fn);
    if (node.having) for_each_subquery_in_expr(*node.having, fn);
    for (auto& o : node.order_by) for_each_subquery_in_expr(o.expr, fn);
    if (node.limit) for_each_subquery_in_expr(*node.limit, fn);
    if (node.offset_rows) for_each_subquery_in_expr(*node.offset_rows, fn);
    for (auto& arm : node.set_ops) fn(*arm.operand);
}

/// Pre-order walk over `node` and all of its descendants.
template <typename Node, typename Fn> void walk_nodes(Node& node, Fn&& fn) {
    fn(node);
    for_each_child_node(node, [&](auto& child) { walk_nodes(child, fn); });
}

/// Visits `expr` and its sub-expressions without entering nested query nodes.
template <typename E, typename Fn> void walk_expr(E& expr, Fn&& fn) {
    fn(expr);
    for (auto& child : expr.children) walk_expr(child, fn);
    if (expr.window) {
        for (auto& p : expr.window->partition_by) walk_expr(p, fn);
        for (auto& o : expr.window->order_by) walk_expr(o.expr, fn);
    }
    if (expr.filter) walk_expr(*expr.filter, fn);
}

/// Pointers to every query node in pre-order, indexed by node id after `assign_node_ids`.
std::vector<const QueryNode*> collect_nodes(const QueryNode& root);

/// Assigns pre-order ids to every node; returns the node count.
int assign_node_ids(QueryNode& root);

/// Every proper descendant query node of the root, in pre-order.
std::vector<const QueryNode*> enumerate_subqueries(const QueryTree& tree);

// Expression constructors used by the parser and tests.
Expr make_literal(LiteralKind kind, std::string text);
Expr make_column(std::vector<Identifier> qualifier, Identifier column);
Expr make_binary(std::string op, Expr lhs, Expr rhs);
Expr make_unary(std::string op, Expr operand);

}  // namespace sqlcx
