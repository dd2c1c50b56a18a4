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

#include "sqlcx/render.h"

#include <algorithm>
#include <set>

#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

std::string quote_ident(const Identifier& id) {
    if (!id.quoted) return id.name;
    std::string out = "\"";
    for (char c : id.name) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

bool is_atomic(const Expr& e) {
    switch (e.kind) {
        case ExprKind::kLiteral:
            return e.text.empty() || e.text[0] != '-';
        case ExprKind::kColumn:
        case ExprKind::kStar:
        case ExprKind::kFunction:
        case ExprKind::kCast:
        case ExprKind::kCase:
        case ExprKind::kExists:
        case ExprKind::kSubquery:
        case ExprKind::kInterval:
        case ExprKind::kRow:
        case ExprKind::kGroupingSet:
            return true;
        default:
            return false;
    }
}

class Writer {
   public:
    Writer(bool canonical, RenderOptions options, const std::vector<const QueryNode*>* nodes)
        : canonical_(canonical), options_(options), nodes_(nodes) {}

    std::string name(const Identifier& id) const { return canonical_ ? id.name : quote_ident(id); }

    std::string names(const std::vector<Identifier>& ids) const {
        std::vector<std::string> parts;
        for (const auto& id : ids) parts.push_back(name(id));
        return join(parts, ".");
    }

    std::string operand(const Expr& e) {
        std::string s = expr(e);
        return is_atomic(e) ? s : "(" + s + ")";
    }

    std::string list(const std::vector<Expr>& items, size_t from = 0) {
        std::vector<std::string> parts;
        for (size_t i = from; i < items.size(); ++i) parts.push_back(expr(items[i]));
        return join(parts, ", ");
    }

    std::string expr(const Expr& e) {
        switch (e.kind) {
            case ExprKind::kLiteral:
                if (e.literal == LiteralKind::kNumber && canonical_) return normalize_number(e.text);
                if (e.literal == LiteralKind::kTyped) return e.text2 + " " + e.text;
                return e.text;
            case ExprKind::kColumn:
                if (canonical_ && e.binding.bound()) return e.binding.canonical;
                if (canonical_ || e.qualifier.empty()) return name(e.column);
                return names(e.qualifier) + "." + name(e.column);
            case ExprKind::kStar:
                if (canonical_ && e.binding.bound()) return e.binding.canonical;
                return e.qualifier.empty() ? "*" : names(e.qualifier) + ".*";
            case ExprKind::kUnary:
                if (e.text == "NOT") return "NOT " + operand(e.children[0]);
                // "-(5)" must not collapse into the literal -5 on re-parse.
                if (e.children[0].kind == ExprKind::kLiteral && e.children[0].literal == LiteralKind::kNumber)
                    return e.text + "(" + expr(e.children[0]) + ")";
                return e.text + operand(e.children[0]);
            case ExprKind::kBinary: {
                std::string op = e.text;
                if (canonical_ && op == "!=") op = "<>";
                return operand(e.children[0]) + " " + op + " " + operand(e.children[1]);
            }
            case ExprKind::kLike: {
                std::string s = operand(e.children[0]) + (e.negated ? " NOT " : " ") + e.text + " " +
                                operand(e.children[1]);
                if (e.children.size() > 2) s += " ESCAPE " + operand(e.children[2]);
                return s;
            }
            case ExprKind::kBetween:
                return operand(e.children[0]) + (e.negated ? " NOT BETWEEN " : " BETWEEN ") +
                       operand(e.children[1]) + " AND " + operand(e.children[2]);
            case ExprKind::kInList:
                return operand(e.children[0]) + (e.negated ? " NOT IN (" : " IN (") + list(e.children, 1) + ")";
            case ExprKind::kInSubquery:
                return operand(e.children[0]) + (e.negated ? " NOT IN (" : " IN (") + node(*e.subquery) + ")";
            case ExprKind::kExists:
                return "EXISTS (" + node(*e.subquery) + ")";
            case ExprKind::kSubquery:
                return "(" + node(*e.subquery) + ")";
            case ExprKind::kQuantified:
                return operand(e.children[0]) + " " + e.text + " " + e.text2 + " (" + node(*e.subquery) + ")";
            case ExprKind::kIsNull:
                return operand(e.children[0]) + (e.negated ? " IS NOT NULL" : " IS NULL");
            case ExprKind::kIs: {
                std::string s = operand(e.children[0]) + (e.negated ? " IS NOT " : " IS ") + e.text;
                if (e.children.size() > 1) s += " " + operand(e.children[1]);
                return s;
            }
            case ExprKind::kFunction:
                return function(e);
            case ExprKind::kCast:
                if (e.colon_cast) return operand(e.children[0]) + "::" + e.text;
                return "CAST(" + expr(e.children[0]) + " AS " + e.text + ")";
            case ExprKind::kCase: {
                std::string s = "CASE";
                size_t i = 0;
                if (e.case_operand) s += " " + expr(e.children[i++]);
                size_t end = e.children.size() - (e.case_else ? 1 : 0);
                for (; i + 1 < end; i += 2)
                    s += " WHEN " + expr(e.children[i]) + " THEN " + expr(e.children[i + 1]);
                if (e.case_else) s += " ELSE " + expr(e.children.back());
                return s + " END";
            }
            case ExprKind::kInterval:
                return "INTERVAL " + e.text + (e.text2.empty() ? "" : " " + e.text2);
            case ExprKind::kRow:
                return "(" + list(e.children) + ")";
            case ExprKind::kGroupingSet:
                return e.text + " (" + list(e.children) + ")";
        }
        return {};
    }

    std::string function(const Expr& e) {
        std::string s = e.text;
        switch (e.style) {
            case CallStyle::kNiladic:
                return s;
            case CallStyle::kExtract:
                return s + "(" + e.text2 + " FROM " + expr(e.children[0]) + ")";
            case CallStyle::kSubstringFrom:
                s += "(" + expr(e.children[0]) + " FROM " + expr(e.children[1]);
                if (e.children.size() > 2) s += " FOR " + expr(e.children[2]);
                return s + ")";
            case CallStyle::kPosition:
                return s + "(" + operand(e.children[0]) + " IN " + expr(e.children[1]) + ")";
            case CallStyle::kTrim:
                s += "(";
                if (!e.text2.empty()) s += e.text2 + " ";
                if (e.children.size() > 1) s += expr(e.children[1]) + " ";
                return s + "FROM " + expr(e.children[0]) + ")";
            case CallStyle::kPlain:
                break;
        }
        s += "(";
        if (e.distinct) s += "DISTINCT ";
        s += list(e.children) + ")";
        if (e.filter) s += " FILTER (WHERE " + expr(*e.filter) + ")";
        if (e.window) {
            std::vector<std::string> parts;
            if (!e.window->partition_by.empty()) parts.push_back("PARTITION BY " + list(e.window->partition_by));
            if (!e.window->order_by.empty()) parts.push_back("ORDER BY " + order_items(e.window->order_by));
            if (!e.window->frame.empty()) parts.push_back(e.window->frame);
            s += " OVER (" + join(parts, " ") + ")";
        }
        return s;
    }

    std::string order_items(const std::vector<OrderItem>& items) {
        std::vector<std::string> parts;
        for (const auto& item : items) {
            std::string s = expr(item.expr);
            if (item.descending) s += " DESC";
            if (!item.nulls.empty()) s += " NULLS " + item.nulls;
            parts.push_back(std::move(s));
        }
        return join(parts, ", ");
    }

    std::string select_item(const QueryNode& n, const SelectItem& item) {
        if (options_.expand_stars && item.expr.kind == ExprKind::kStar && n.resolved) {
            std::vector<std::string> cols;
            for (size_t i = 0; i < n.sources.size(); ++i) {
                const auto& src = n.sources[i];
                if (!item.expr.qualifier.empty() && src.visible_name != item.expr.qualifier.back().name) continue;
                if (!src.columns_known) return expr(item.expr);
                Identifier q{src.visible_name, false};
                for (const auto& col : src.columns) cols.push_back(name(q) + "." + name(col.name));
            }
            if (!cols.empty()) return join(cols, ", ");
        }
        std::string s = expr(item.expr);
        if (!canonical_ && !item.alias.empty()) s += " AS " + name(item.alias);
        return s;
    }

    std::string table_ref(const QueryNode& n, const TableRef& ref) {
        switch (ref.kind) {
            case TableRefKind::kTable: {
                if (canonical_) return canonical_leaf(n, ref);
                std::string s = names(ref.name);
                return s + alias_suffix(ref);
            }
            case TableRefKind::kSubquery:
                if (canonical_) return "(" + node(*ref.subquery) + ")";
                return "(" + node(*ref.subquery) + ")" + alias_suffix(ref);
            case TableRefKind::kJoin: {
                std::string s = table_ref(n, *ref.left) + " ";
                if (ref.natural) s += "NATURAL ";
                if (ref.join != JoinType::kInner) s += std::string(join_type_name(ref.join)) + " ";
                s += "JOIN ";
                std::string right = table_ref(n, *ref.right);
                s += ref.right->kind == TableRefKind::kJoin ? "(" + right + ")" : right;
                if (ref.condition) s += " ON " + expr(*ref.condition);
                if (!ref.using_columns.empty()) {
                    std::vector<std::string> cols;
                    for (const auto& c : ref.using_columns) cols.push_back(name(c));
                    s += " USING (" + join(cols, ", ") + ")";
                }
                return s;
            }
        }
        return {};
    }

    std::string alias_suffix(const TableRef& ref) const {
        if (ref.alias.empty()) return {};
        std::string s = " AS " + name(ref.alias);
        if (!ref.column_aliases.empty()) {
            std::vector<std::string> cols;
            for (const auto& c : ref.column_aliases) cols.push_back(name(c));
            s += " (" + join(cols, ", ") + ")";
        }
        return s;
    }

    std::string canonical_leaf(const QueryNode& n, const TableRef& ref) {
        if (ref.source_index < 0 || static_cast<size_t>(ref.source_index) >= n.sources.size()) {
            return to_lower(names(ref.name));
        }
        const ResolvedSource& src = n.sources[ref.source_index];
        if (src.kind == SourceKind::kBaseTable) return src.table;
        if (src.kind == SourceKind::kCte && nodes_ && src.body_node >= 0 &&
            static_cast<size_t>(src.body_node) < nodes_->size() && !inlining_.count(src.body_node)) {
            inlining_.insert(src.body_node);
            std::string body = node(*(*nodes_)[src.body_node]);
            inlining_.erase(src.body_node);
            return "(" + body + ")";
        }
        return src.table.empty() ? to_lower(names(ref.name)) : src.table;
    }

    std::string node(const QueryNode& n) {
        std::string s;
        if (!n.ctes.empty() && !canonical_) {
            s += n.recursive ? "WITH RECURSIVE " : "WITH ";
            std::vector<std::string> defs;
            for (const auto& cte : n.ctes) {
                std::string d = name(cte.name);
                if (!cte.column_aliases.empty()) {
                    std::vector<std::string> cols;
                    for (const auto& c : cte.column_aliases) cols.push_back(name(c));
                    d += " (" + join(cols, ", ") + ")";
                }
                d += " AS ";
                if (!cte.materialized.empty()) d += cte.materialized + " ";
                d += "(" + node(*cte.body) + ")";
                defs.push_back(std::move(d));
            }
            s += join(defs, ", ") + " ";
        }
        s += core(n);
        for (const auto& arm : n.set_ops) {
            s += " " + std::string(set_op_name(arm.op)) + (arm.all ? " ALL " : " ");
            const QueryNode& op = *arm.operand;
            bool wrap = !op.ctes.empty() || !op.set_ops.empty() || !op.order_by.empty() || op.limit || op.offset_rows;
            s += wrap ? "(" + node(op) + ")" : node(op);
        }
        if (!n.order_by.empty()) s += " ORDER BY " + order_items(n.order_by);
        if (n.limit) s += " LIMIT " + expr(*n.limit);
        if (n.offset_rows) s += " OFFSET " + expr(*n.offset_rows);
        return s;
    }

    std::string core(const QueryNode& n) {
        std::string s = "SELECT ";
        if (n.distinct) {
            s += "DISTINCT ";
            if (!n.distinct_on.empty()) s += "ON (" + list(n.distinct_on) + ") ";
        }
        std::vector<std::string> items;
        for (const auto& item : n.select) items.push_back(select_item(n, item));
        s += join(items, ", ");
        if (!n.from.empty()) {
            std::vector<std::string> refs;
            for (const auto& ref : n.from) refs.push_back(table_ref(n, ref));
            s += " FROM " + join(refs, ", ");
        }
        if (n.where) s += " WHERE " + expr(*n.where);
        if (!n.group_by.empty()) s += " GROUP BY " + list(n.group_by);
        if (n.having) s += " HAVING " + expr(*n.having);
        return s;
    }

   private:
    bool canonical_;
    RenderOptions options_;
    const std::vector<const QueryNode*>* nodes_;
    std::set<int> inlining_;
};

}  // namespace

std::string render_sql(const QueryTree& tree, const RenderOptions& options) { return render_sql(tree.root, options); }

std::string render_sql(const QueryNode& node, const RenderOptions& options) {
    return Writer(false, options, nullptr).node(node);
}

std::string render_sql(const Expr& expr) { return Writer(false, {}, nullptr).expr(expr); }

std::string normalize_number(std::string_view text) {
    std::string s(text);
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.size() > 1 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return std::string(negative ? "-" : "") + s;
    std::string exponent;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        exponent = s.substr(e + 1);
        s.erase(e);
    }
    std::string int_part = s, frac;
    if (auto dot = s.find('.'); dot != std::string::npos) {
        int_part = s.substr(0, dot);
        frac = s.substr(dot + 1);
    }
    int_part.erase(0, std::min(int_part.find_first_not_of('0'), int_part.size()));
    if (int_part.empty()) int_part = "0";
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = int_part;
    if (!frac.empty()) out += "." + frac;
    if (!exponent.empty()) {
        bool exp_negative = exponent[0] == '-';
        if (exponent[0] == '-' || exponent[0] == '+') exponent.erase(0, 1);
        exponent.erase(0, std::min(exponent.find_first_not_of('0'), exponent.size()));
        if (!exponent.empty() && out != "0") out += std::string("e") + (exp_negative ? "-" : "") + exponent;
    }
    if (negative && out != "0") out = "-" + out;
    return out;
}

std::string CanonicalRenderer::expr(const Expr& e) const { return Writer(true, {}, &nodes_).expr(e); }

std::string CanonicalRenderer::node(const QueryNode& n) const { return Writer(true, {}, &nodes_).node(n); }

}  // namespace sqlcx
