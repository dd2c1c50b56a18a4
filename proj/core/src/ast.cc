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

#include "sqlcx/ast.h"

namespace sqlcx {

std::string_view dialect_name(Dialect dialect) {
    switch (dialect) {
        case Dialect::kPostgres:
            return "postgres";
        case Dialect::kAnsi:
            return "ansi";
        case Dialect::kSqlite:
            return "sqlite";
    }
    return "postgres";
}

std::optional<Dialect> dialect_from_name(std::string_view name) {
    if (name == "postgres" || name == "postgresql") return Dialect::kPostgres;
    if (name == "ansi") return Dialect::kAnsi;
    if (name == "sqlite") return Dialect::kSqlite;
    return std::nullopt;
}

std::string_view join_type_name(JoinType type) {
    switch (type) {
        case JoinType::kInner:
            return "INNER";
        case JoinType::kLeft:
            return "LEFT";
        case JoinType::kRight:
            return "RIGHT";
        case JoinType::kFull:
            return "FULL";
        case JoinType::kCross:
            return "CROSS";
    }
    return "INNER";
}

std::string_view set_op_name(SetOpKind op) {
    switch (op) {
        case SetOpKind::kUnion:
            return "UNION";
        case SetOpKind::kIntersect:
            return "INTERSECT";
        case SetOpKind::kExcept:
            return "EXCEPT";
    }
    return "UNION";
}

bool WindowSpec::operator==(const WindowSpec& o) const {
    return partition_by == o.partition_by && order_by == o.order_by && frame == o.frame;
}

bool Expr::operator==(const Expr& o) const {
    return kind == o.kind && text == o.text && text2 == o.text2 && literal == o.literal &&
           qualifier == o.qualifier && column == o.column && negated == o.negated && distinct == o.distinct &&
           style == o.style && colon_cast == o.colon_cast && case_operand == o.case_operand &&
           case_else == o.case_else && children == o.children && subquery == o.subquery && window == o.window &&
           filter == o.filter;
}

bool TableRef::operator==(const TableRef& o) const {
    return kind == o.kind && name == o.name && alias == o.alias && column_aliases == o.column_aliases &&
           subquery == o.subquery && join == o.join && natural == o.natural && left == o.left &&
           right == o.right && condition == o.condition && using_columns == o.using_columns;
}

bool QueryNode::operator==(const QueryNode& o) const {
    return ctes == o.ctes && recursive == o.recursive && distinct == o.distinct && distinct_on == o.distinct_on &&
           select == o.select && from == o.from && where == o.where && group_by == o.group_by &&
           having == o.having && order_by == o.order_by && limit == o.limit && offset_rows == o.offset_rows &&
           set_ops == o.set_ops;
}

size_t QueryTree::node_count() const {
    size_t count = 0;
    walk_nodes(root, [&](const QueryNode&) { ++count; });
    return count;
}

std::vector<const QueryNode*> collect_nodes(const QueryNode& root) {
    std::vector<const QueryNode*> nodes;
    walk_nodes(root, [&](const QueryNode& n) { nodes.push_back(&n); });
    return nodes;
}

int assign_node_ids(QueryNode& root) {
    int next = 0;
    walk_nodes(root, [&](QueryNode& n) { n.id = next++; });
    return next;
}

std::vector<const QueryNode*> enumerate_subqueries(const QueryTree& tree) {
    auto nodes = collect_nodes(tree.root);
    nodes.erase(nodes.begin());
    return nodes;
}

Expr make_literal(LiteralKind kind, std::string text) {
    Expr e;
    e.kind = ExprKind::kLiteral;
    e.literal = kind;
    e.text = std::move(text);
    return e;
}

Expr make_column(std::vector<Identifier> qualifier, Identifier column) {
    Expr e;
    e.kind = ExprKind::kColumn;
    e.qualifier = std::move(qualifier);
    e.column = std::move(column);
    return e;
}

Expr make_binary(std::string op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = ExprKind::kBinary;
    e.text = std::move(op);
    e.offset = lhs.offset;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

Expr make_unary(std::string op, Expr operand) {
    Expr e;
    e.kind = ExprKind::kUnary;
    e.text = std::move(op);
    e.children.push_back(std::move(operand));
    return e;
}

}  // namespace sqlcx
