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

#include "sqlcx/resolver.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "sqlcx/errors.h"
#include "sqlcx/render.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

struct CteEntry {
    std::string name;
    QueryNode* body = nullptr;
    const Cte* def = nullptr;
};
using CteEnv = std::vector<CteEntry>;

struct Scope {
    QueryNode* node;
    const Scope* parent;
};

enum class Clause { kPlain, kGroupBy, kOrderBy };

void add_unique(std::vector<CanonicalColumn>& out, const CanonicalColumn& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
}

void add_unique(std::vector<std::string>& out, const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

bool is_atomic_rendering(const Expr& e) {
    switch (e.kind) {
        case ExprKind::kColumn:
        case ExprKind::kStar:
        case ExprKind::kFunction:
        case ExprKind::kCast:
        case ExprKind::kCase:
        case ExprKind::kSubquery:
        case ExprKind::kInterval:
            return true;
        case ExprKind::kLiteral:
            return e.text.empty() || e.text[0] != '-';
        default:
            return false;
    }
}

std::string output_name(const Expr& e) {
    switch (e.kind) {
        case ExprKind::kColumn:
            return e.column.name;
        case ExprKind::kFunction:
            return to_lower(e.text);
        case ExprKind::kCast:
            return output_name(e.children[0]);
        default:
            return "?column?";
    }
}

class Resolver {
   public:
    Resolver(const SchemaCatalog& catalog, const ResolveOptions& options, std::vector<const QueryNode*> nodes)
        : catalog_(catalog), options_(options), renderer_(std::move(nodes)) {}

    void resolve_node(QueryNode& n, const Scope* outer, CteEnv env) {
        for (auto& cte : n.ctes) {
            CteEntry entry{cte.name.name, &*cte.body, &cte};
            if (n.recursive) {
                CteEnv inner = env;
                inner.push_back(entry);
                in_progress_.insert(cte.body->id);
                resolve_node(*cte.body, outer, std::move(inner));
                in_progress_.erase(cte.body->id);
            } else {
                resolve_node(*cte.body, outer, env);
            }
            env.push_back(entry);
        }

        n.sources.clear();
        for (auto& ref : n.from) add_sources(n, ref, outer, env);

        Scope here{&n, outer};
        for (auto& ref : n.from) resolve_join_conditions(n, ref, here, env);
        for (auto& item : n.select) resolve_expr(item.expr, n, here, env, Clause::kPlain, true);
        compute_outputs(n);
        if (n.where) resolve_expr(*n.where, n, here, env, Clause::kPlain);
        for (auto& g : n.group_by) resolve_expr(g, n, here, env, Clause::kGroupBy);
        if (n.having) resolve_expr(*n.having, n, here, env, Clause::kGroupBy);
        for (auto& d : n.distinct_on) resolve_expr(d, n, here, env, Clause::kOrderBy);

        for (auto& arm : n.set_ops) resolve_node(*arm.operand, outer, env);
        merge_set_op_outputs(n);

        for (auto& o : n.order_by) resolve_expr(o.expr, n, here, env, Clause::kOrderBy);
        if (n.limit) resolve_expr(*n.limit, n, here, env, Clause::kOrderBy);
        if (n.offset_rows) resolve_expr(*n.offset_rows, n, here, env, Clause::kOrderBy);
        n.resolved = true;
    }

   private:
    // ------------------------------------------------------------- sources

    std::vector<std::string> node_base_tables(const QueryNode& n) const {
        std::vector<std::string> tables;
        for (const auto& src : n.sources)
            for (const auto& t : src.base_tables) add_unique(tables, t);
        for (const auto& arm : n.set_ops)
            for (const auto& t : node_base_tables(*arm.operand)) add_unique(tables, t);
        return tables;
    }

    void add_sources(QueryNode& n, TableRef& ref, const Scope* outer, const CteEnv& env) {
        if (ref.kind == TableRefKind::kJoin) {
            add_sources(n, *ref.left, outer, env);
            add_sources(n, *ref.right, outer, env);
            return;
        }
        ResolvedSource src;
        if (ref.kind == TableRefKind::kSubquery) {
            resolve_node(*ref.subquery, outer, env);
            src.kind = SourceKind::kDerived;
            src.visible_name = ref.alias.name;
            src.body_node = ref.subquery->id;
            src.columns = ref.subquery->outputs;
            src.columns_known = ref.subquery->outputs_known;
            src.base_tables = node_base_tables(*ref.subquery);
        } else {
            const std::string& table = ref.table_name().name;
            const CteEntry* cte = nullptr;
            if (ref.name.size() == 1) {
                for (auto it = env.rbegin(); it != env.rend(); ++it) {
                    if (it->name == table) {
                        cte = &*it;
                        break;
                    }
                }
            }
            src.visible_name = ref.alias.empty() ? table : ref.alias.name;
            if (cte) {
                src.kind = SourceKind::kCte;
                src.table = cte->name;
                src.body_node = cte->body->id;
                if (!in_progress_.count(cte->body->id)) {
                    src.columns = cte->body->outputs;
                    src.columns_known = cte->body->outputs_known;
                    src.base_tables = node_base_tables(*cte->body);
                }
                rename_columns(src, cte->def->column_aliases, cte->body->id);
            } else {
                src.kind = SourceKind::kBaseTable;
                src.table = table;
                src.base_tables = {table};
                if (const TableSchema* schema = catalog_.find(table)) {
                    src.columns_known = true;
                    for (const auto& col : schema->columns) {
                        CanonicalColumn cc{table, col.name, true};
                        src.columns.push_back({Identifier{col.name, false}, {cc}, cc.str()});
                    }
                }
            }
        }
        rename_columns(src, ref.column_aliases, n.id);
        ref.source_kind = src.kind;
        ref.source_index = static_cast<int>(n.sources.size());
        n.sources.push_back(std::move(src));
    }

    static void rename_columns(ResolvedSource& src, const std::vector<Identifier>& aliases, int node_id) {
        if (aliases.empty()) return;
        if (!src.columns_known) {
            src.columns.clear();
            for (const auto& a : aliases) {
                CanonicalColumn cc{src.base_tables.size() == 1 ? src.base_tables[0] : sentinel_table(node_id),
                                   a.name, false};
                src.columns.push_back({a, {cc}, cc.str()});
            }
            src.columns_known = true;
            return;
        }
        for (size_t i = 0; i < aliases.size() && i < src.columns.size(); ++i) src.columns[i].name = aliases[i];
    }

    void resolve_join_conditions(QueryNode& n, TableRef& ref, const Scope& here, const CteEnv& env) {
        if (ref.kind != TableRefKind::kJoin) return;
        resolve_join_conditions(n, *ref.left, here, env);
        resolve_join_conditions(n, *ref.right, here, env);
        if (ref.condition) resolve_expr(*ref.condition, n, here, env, Clause::kPlain);
        ref.using_resolved.clear();
        for (const auto& col : ref.using_columns) {
            std::vector<int> leaves;
            collect_leaves(ref, leaves);
            for (int idx : leaves) {
                const ResolvedSource& src = n.sources[idx];
                if (src.columns_known) {
                    for (const auto& out : src.columns)
                        if (out.name.name == col.name)
                            for (const auto& c : out.columns) add_unique(ref.using_resolved, c);
                } else if (src.base_tables.size() == 1) {
                    add_unique(ref.using_resolved, CanonicalColumn{src.base_tables[0], col.name, false});
                }
            }
        }
    }

    static void collect_leaves(const TableRef& ref, std::vector<int>& out) {
        if (ref.kind == TableRefKind::kJoin) {
            collect_leaves(*ref.left, out);
            collect_leaves(*ref.right, out);
        } else {
            out.push_back(ref.source_index);
        }
    }

    static bool node_uses_column(const QueryNode& n, const std::string& name) {
        bool found = false;
        std::function<void(const TableRef&)> visit = [&](const TableRef& ref) {
            if (ref.kind != TableRefKind::kJoin) return;
            if (ref.natural) found = true;
            for (const auto& c : ref.using_columns)
                if (c.name == name) found = true;
            visit(*ref.left);
            visit(*ref.right);
        };
        for (const auto& ref : n.from) visit(ref);
        return found;
    }

    // ------------------------------------------------------------- outputs

    void compute_outputs(QueryNode& n) {
        n.outputs.clear();
        n.outputs_known = true;
        for (auto& item : n.select) {
            if (item.expr.kind == ExprKind::kStar) {
                for (size_t i = 0; i < n.sources.size(); ++i) {
                    const auto& src = n.sources[i];
                    if (!item.expr.qualifier.empty() && src.visible_name != item.expr.qualifier.back().name) continue;
                    if (!src.columns_known) {
                        n.outputs_known = false;
                        continue;
                    }
                    for (const auto& c : src.columns) n.outputs.push_back(c);
                }
                continue;
            }
            OutputColumn out;
            out.name = item.alias.empty() ? Identifier{output_name(item.expr), false} : item.alias;
            out.columns = expression_columns(item.expr);
            out.canonical = renderer_.expr(item.expr);
            if (!is_atomic_rendering(item.expr)) out.canonical = "(" + out.canonical + ")";
            n.outputs.push_back(std::move(out));
        }
    }

    /// Base columns mentioned by an expression; a scalar subquery contributes its output lineage.
    static std::vector<CanonicalColumn> expression_columns(const Expr& e) {
        std::vector<CanonicalColumn> cols;
        walk_expr(e, [&](const Expr& x) {
            if (x.kind == ExprKind::kColumn || x.kind == ExprKind::kStar)
                for (const auto& c : x.binding.columns) add_unique(cols, c);
            if (x.kind == ExprKind::kSubquery && x.subquery)
                for (const auto& out : x.subquery->outputs)
                    for (const auto& c : out.columns) add_unique(cols, c);
        });
        return cols;
    }

    static void merge_set_op_outputs(QueryNode& head) {
        if (head.set_ops.empty()) return;
        std::vector<std::vector<std::string>> canon(head.outputs.size());
        for (size_t i = 0; i < head.outputs.size(); ++i) canon[i].push_back(head.outputs[i].canonical);
        for (const auto& arm : head.set_ops) {
            const QueryNode& op = *arm.operand;
            if (!op.outputs_known) head.outputs_known = false;
            for (size_t i = 0; i < head.outputs.size() && i < op.outputs.size(); ++i) {
                for (const auto& c : op.outputs[i].columns) add_unique(head.outputs[i].columns, c);
                add_unique(canon[i], op.outputs[i].canonical);
            }
        }
        for (size_t i = 0; i < head.outputs.size(); ++i) {
            if (canon[i].size() == 1) continue;
            std::sort(canon[i].begin(), canon[i].end());
            head.outputs[i].canonical = "{" + join(canon[i], ",") + "}";
        }
    }

    // --------------------------------------------------------- expressions

    void resolve_expr(Expr& e, QueryNode& n, const Scope& here, const CteEnv& env, Clause clause,
                      bool select_item = false) {
        switch (e.kind) {
            case ExprKind::kColumn:
                bind_column(e, n, here, clause);
                return;
            case ExprKind::kStar:
                bind_star(e, n, select_item);
                return;
            case ExprKind::kLiteral:
                return;
            default:
                break;
        }
        if (e.subquery) resolve_node(*e.subquery, &here, env);
        for (auto& child : e.children) resolve_expr(child, n, here, env, clause);
        if (e.window) {
            for (auto& p : e.window->partition_by) resolve_expr(p, n, here, env, clause);
            for (auto& o : e.window->order_by) resolve_expr(o.expr, n, here, env, clause);
        }
        if (e.filter) resolve_expr(*e.filter, n, here, env, clause);
    }

    ColumnBinding from_source(const QueryNode& owner, int idx, const std::string& column, int sentinel_node) const {
        const ResolvedSource& src = owner.sources[idx];
        ColumnBinding b;
        b.node_id = owner.id;
        b.source_index = idx;
        if (src.columns_known) {
            for (const auto& out : src.columns) {
                if (out.name.name == column) {
                    b.columns = out.columns;
                    b.canonical = out.canonical;
                    return b;
                }
            }
        }
        CanonicalColumn cc{src.base_tables.size() == 1 ? src.base_tables[0] : sentinel_table(sentinel_node), column,
                           false};
        if (src.kind == SourceKind::kBaseTable) cc.table = src.table;
        cc.resolved = catalog_.has_column(cc.table, cc.column);
        b.columns = {cc};
        b.canonical = cc.str();
        return b;
    }

    ColumnBinding sentinel(const std::string& column, int node_id) const {
        ColumnBinding b;
        CanonicalColumn cc{sentinel_table(node_id), column, false};
        b.columns = {cc};
        b.canonical = cc.str();
        return b;
    }

    std::optional<ColumnBinding> select_alias(const QueryNode& n, const std::string& name) const {
        for (size_t i = 0; i < n.select.size() && i < n.outputs.size(); ++i) {
            const auto& item = n.select[i];
            if (item.expr.kind == ExprKind::kStar) return std::nullopt;
            if (!item.alias.empty() && item.alias.name == name) {
                ColumnBinding b;
                b.node_id = n.id;
                b.columns = n.outputs[i].columns;
                b.canonical = n.outputs[i].canonical;
                return b;
            }
        }
        return std::nullopt;
    }

    /// Known-column matches for `name` among the sources of `n`.
    std::optional<ColumnBinding> known_in(const QueryNode& n, const std::string& name, bool strict,
                                          int sentinel_node) const {
        std::vector<int> hits;
        for (size_t i = 0; i < n.sources.size(); ++i) {
            const auto& src = n.sources[i];
            if (!src.columns_known) continue;
            if (std::any_of(src.columns.begin(), src.columns.end(),
                            [&](const OutputColumn& c) { return c.name.name == name; }))
                hits.push_back(static_cast<int>(i));
        }
        if (hits.empty()) return std::nullopt;
        if (hits.size() > 1 && !node_uses_column(n, name)) {
            if (strict) {
                std::vector<std::string> candidates;
                for (int h : hits) candidates.push_back(n.sources[h].visible_name);
                throw AmbiguousColumn(name, candidates);
            }
            return sentinel(name, sentinel_node);
        }
        return from_source(n, hits[0], name, sentinel_node);
    }

    void bind_column(Expr& e, QueryNode& n, const Scope& here, Clause clause) {
        const std::string& name = e.column.name;
        bool strict = options_.strict && clause != Clause::kOrderBy;
        if (!e.qualifier.empty()) {
            const std::string& q = e.qualifier.back().name;
            for (const Scope* s = &here; s; s = s->parent) {
                const QueryNode& owner = *s->node;
                for (int pass = 0; pass < 2; ++pass) {
                    for (size_t i = 0; i < owner.sources.size(); ++i) {
                        const auto& src = owner.sources[i];
                        bool hit = pass == 0 ? src.visible_name == q
                                             : (src.kind == SourceKind::kBaseTable && src.table == q);
                        if (hit) {
                            e.binding = from_source(owner, static_cast<int>(i), name, n.id);
                            return;
                        }
                    }
                }
            }
            e.binding = sentinel(name, n.id);
            return;
        }

        if (clause == Clause::kOrderBy) {
            if (auto b = select_alias(n, name)) {
                e.binding = *b;
                return;
            }
        }
        if (auto b = known_in(n, name, strict, n.id)) {
            e.binding = *b;
            return;
        }
        if (clause == Clause::kGroupBy) {
            if (auto b = select_alias(n, name)) {
                e.binding = *b;
                return;
            }
        }
        for (const Scope* s = here.parent; s; s = s->parent) {
            if (auto b = known_in(*s->node, name, strict, n.id)) {
                e.binding = *b;
                return;
            }
        }
        std::vector<int> unknown;
        for (size_t i = 0; i < n.sources.size(); ++i)
            if (!n.sources[i].columns_known) unknown.push_back(static_cast<int>(i));
        if (unknown.size() == 1) {
            e.binding = from_source(n, unknown[0], name, n.id);
            return;
        }
        if (e.maybe_string && unknown.empty()) {
            std::string text = "'";
            for (char c : name) {
                if (c == '\'') text += '\'';
                text += c;
            }
            e = make_literal(LiteralKind::kString, text + "'");
            return;
        }
        e.binding = sentinel(name, n.id);
    }

    void bind_star(Expr& e, const QueryNode& n, bool select_item) {
        if (!select_item) {
            e.binding.canonical = "*";
            return;
        }
        std::vector<CanonicalColumn> cols;
        std::vector<std::string> tables;
        for (size_t i = 0; i < n.sources.size(); ++i) {
            const auto& src = n.sources[i];
            if (!e.qualifier.empty() && src.visible_name != e.qualifier.back().name) continue;
            for (const auto& t : src.base_tables) add_unique(tables, t);
            if (src.columns_known) {
                for (const auto& out : src.columns)
                    for (const auto& c : out.columns) add_unique(cols, c);
            } else {
                for (const auto& t : src.base_tables) add_unique(cols, CanonicalColumn{t, "*", false});
                if (src.base_tables.empty()) add_unique(cols, CanonicalColumn{sentinel_table(n.id), "*", false});
            }
        }
        e.binding.node_id = n.id;
        e.binding.columns = std::move(cols);
        if (e.qualifier.empty()) {
            e.binding.canonical = "*";
        } else {
            std::sort(tables.begin(), tables.end());
            std::string t = tables.size() == 1 ? tables[0] : "{" + join(tables, ",") + "}";
            e.binding.canonical = t + ".*";
        }
    }

    const SchemaCatalog& catalog_;
    ResolveOptions options_;
    CanonicalRenderer renderer_;
    std::set<int> in_progress_;
};

}  // namespace

std::string sentinel_table(int node_id) { return "?" + std::to_string(node_id); }

QueryTree resolve(QueryTree tree, const SchemaCatalog& catalog, const ResolveOptions& options) {
    Resolver resolver(catalog, options, collect_nodes(tree.root));
    resolver.resolve_node(tree.root, nullptr, {});
    tree.resolved = true;
    return tree;
}

}  // namespace sqlcx
