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

#include "sqlcx/features.h"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

#include "sqlcx/render.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

constexpr std::array kAggregates = {
    "ANY_VALUE", "ARRAY_AGG", "AVG",         "BIT_AND",  "BIT_OR",     "BOOL_AND", "BOOL_OR",
    "CORR",      "COUNT",     "COVAR_POP",   "COVAR_SAMP", "EVERY",    "GROUP_CONCAT", "JSON_AGG",
    "MAX",       "MEDIAN",    "MIN",         "STDDEV",   "STDDEV_POP", "STDDEV_SAMP", "STRING_AGG",
    "SUM",       "TOTAL",     "VARIANCE",    "VAR_POP",  "VAR_SAMP",
};

constexpr std::array<BagFeature, kBagFeatureCount> kFeatures = {
    BagFeature::kColsSelect,   BagFeature::kColsAll,   BagFeature::kRelations, BagFeature::kWherePreds,
    BagFeature::kJoinPairs,    BagFeature::kAggregations, BagFeature::kFunctions,
};

constexpr std::array<const char*, kBagFeatureCount> kFeatureNames = {
    "cols_select", "cols_all", "relations", "where_preds", "join_pairs", "aggregations", "functions",
};

bool is_integer_literal(const Expr& e) {
    return e.kind == ExprKind::kLiteral && e.literal == LiteralKind::kNumber && !e.text.empty() &&
           std::all_of(e.text.begin(), e.text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool contains_function(const Expr& e) {
    bool found = false;
    walk_expr(e, [&](const Expr& x) {
        if (x.kind == ExprKind::kFunction || x.kind == ExprKind::kCast) found = true;
    });
    return found;
}

std::string pair_item(const std::string& a, const std::string& b) {
    return a <= b ? "(" + a + ", " + b + ")" : "(" + b + ", " + a + ")";
}

std::string negate_comparison(const std::string& op) {
    if (op == "=") return "<>";
    if (op == "<>" || op == "!=") return "=";
    if (op == "<") return ">=";
    if (op == ">=") return "<";
    if (op == ">") return "<=";
    if (op == "<=") return ">";
    return {};
}

std::string mirror_comparison(const std::string& op) {
    if (op == "<") return ">";
    if (op == ">") return "<";
    if (op == "<=") return ">=";
    if (op == ">=") return "<=";
    return op;
}

bool is_comparison(const std::string& op) { return !negate_comparison(op).empty(); }

/// Collects per-feature occurrences over a set of query nodes.
class Extractor {
   public:
    Extractor(const QueryTree& tree, const FeatureOptions& options) : options_(options), renderer_(tree) {}

    FeatureVector run(const QueryNode& top) {
        std::vector<const QueryNode*> nodes;
        walk_nodes(top, [&](const QueryNode& n) { nodes.push_back(&n); });
        FeatureVector fv;
        fv.multiset = options_.multiset;
        for (const QueryNode* n : nodes) {
            select_columns(*n);
            all_columns(*n);
            relations(*n);
            predicates(*n);
            join_pairs(*n);
            aggregations(*n);
            functions(*n);
            func_exprs_ += count_node_func_exprs(*n);
            ctes_ += static_cast<int>(n->ctes.size());
        }
        for (size_t i = 0; i < kBagFeatureCount; ++i) {
            for (const auto& item : occurrences_[i]) fv.bags[i].add(item);
            if (!options_.multiset) fv.bags[i] = fv.bags[i].as_set();
        }
        fv.cte_count = ctes_;
        fv.subquery_count = static_cast<int>(nodes.size()) - 1;
        fv.func_expr_count = func_exprs_;
        return fv;
    }

   private:
    void emit(BagFeature f, std::string item) { occurrences_[static_cast<size_t>(f)].push_back(std::move(item)); }

    void emit_columns(BagFeature f, const Expr& e) {
        walk_expr(e, [&](const Expr& x) {
            if (x.kind != ExprKind::kColumn && x.kind != ExprKind::kStar) return;
            for (const auto& c : x.binding.columns) emit(f, c.str());
        });
    }

    // ------------------------------------------------------------- columns

    void select_columns(const QueryNode& n) {
        for (const auto& item : n.select) emit_columns(BagFeature::kColsSelect, item.expr);
    }

    void join_columns(const TableRef& ref) {
        if (ref.kind != TableRefKind::kJoin) return;
        join_columns(*ref.left);
        join_columns(*ref.right);
        if (ref.condition) emit_columns(BagFeature::kColsAll, *ref.condition);
        for (const auto& c : ref.using_resolved) emit(BagFeature::kColsAll, c.str());
    }

    void all_columns(const QueryNode& n) {
        for (const auto& item : n.select) emit_columns(BagFeature::kColsAll, item.expr);
        for (const auto& ref : n.from) join_columns(ref);
        if (n.where) emit_columns(BagFeature::kColsAll, *n.where);
        for (const auto& g : n.group_by) emit_columns(BagFeature::kColsAll, g);
        if (n.having) emit_columns(BagFeature::kColsAll, *n.having);
    }

    // ----------------------------------------------------------- relations

    void relations(const QueryNode& n) {
        for (const auto& src : n.sources) {
            if (src.kind == SourceKind::kBaseTable) emit(BagFeature::kRelations, src.table);
            if (src.kind == SourceKind::kCte)
                for (const auto& t : src.base_tables) emit(BagFeature::kRelations, t);
        }
        if (!n.resolved) {
            std::function<void(const TableRef&)> visit = [&](const TableRef& ref) {
                if (ref.kind == TableRefKind::kTable) emit(BagFeature::kRelations, ref.table_name().name);
                if (ref.kind == TableRefKind::kJoin) {
                    visit(*ref.left);
                    visit(*ref.right);
                }
            };
            for (const auto& ref : n.from) visit(ref);
        }
    }

    // ---------------------------------------------------------- predicates

    std::string canon(const Expr& e) { return renderer_.expr(e); }

    void predicates(const QueryNode& n) {
        if (n.where) decompose(*n.where, false, [&](std::string p) { emit(BagFeature::kWherePreds, std::move(p)); });
        if (n.having)
            decompose(*n.having, false, [&](std::string p) { emit(BagFeature::kWherePreds, std::move(p)); });
    }

    template <typename Sink> void decompose(const Expr& e, bool negated, Sink&& sink) {
        if (e.kind == ExprKind::kBinary && (e.text == "AND" || e.text == "OR")) {
            decompose(e.children[0], negated, sink);
            decompose(e.children[1], negated, sink);
            return;
        }
        if (e.kind == ExprKind::kUnary && e.text == "NOT") {
            decompose(e.children[0], !negated, sink);
            return;
        }
        sink(basic_predicate(e, negated));
    }

    static std::string tuple(const std::string& tag, const std::vector<std::string>& operands) {
        return tag + "(" + join(operands, ", ") + ")";
    }

    std::string basic_predicate(const Expr& e, bool negated) {
        auto tag = [&](const std::string& positive, bool flag) { return (flag != negated ? "NOT " : "") + positive; };
        switch (e.kind) {
            case ExprKind::kBinary:
                if (is_comparison(e.text)) {
                    std::string op = e.text == "!=" ? "<>" : e.text;
                    if (negated) op = negate_comparison(op);
                    std::string a = canon(e.children[0]), b = canon(e.children[1]);
                    if (b < a) {
                        std::swap(a, b);
                        op = mirror_comparison(op);
                    }
                    return tuple(op, {a, b});
                }
                break;
            case ExprKind::kLike:
                return tuple(tag(e.text, e.negated), operand_list(e.children, 0));
            case ExprKind::kBetween:
                return tuple(tag("BETWEEN", e.negated), operand_list(e.children, 0));
            case ExprKind::kInList: {
                std::vector<std::string> items = operand_list(e.children, 1);
                std::sort(items.begin(), items.end());
                items.erase(std::unique(items.begin(), items.end()), items.end());
                items.insert(items.begin(), canon(e.children[0]));
                return tuple(tag("IN", e.negated), items);
            }
            case ExprKind::kInSubquery:
                return tuple(tag("IN", e.negated), {canon(e.children[0]), renderer_.node(*e.subquery)});
            case ExprKind::kExists:
                return tuple(tag("EXISTS", false), {renderer_.node(*e.subquery)});
            case ExprKind::kIsNull:
                return tuple(e.negated != negated ? "IS NOT NULL" : "IS NULL", {canon(e.children[0])});
            case ExprKind::kQuantified:
                if (negated) break;
                return tuple(e.text + " " + e.text2, {canon(e.children[0]), renderer_.node(*e.subquery)});
            case ExprKind::kIs: {
                std::vector<std::string> ops = operand_list(e.children, 0);
                return tuple((e.negated != negated ? "IS NOT " : "IS ") + e.text, ops);
            }
            default:
                break;
        }
        return tuple(negated ? "NOT" : "BOOL", {canon(e)});
    }

    std::vector<std::string> operand_list(const std::vector<Expr>& items, size_t from) {
        std::vector<std::string> out;
        for (size_t i = from; i < items.size(); ++i) out.push_back(canon(items[i]));
        return out;
    }

    // ---------------------------------------------------------- join pairs

    static void leaves(const TableRef& ref, std::vector<int>& out) {
        if (ref.kind == TableRefKind::kJoin) {
            leaves(*ref.left, out);
            leaves(*ref.right, out);
        } else if (ref.source_index >= 0) {
            out.push_back(ref.source_index);
        }
    }

    /// Source index -> base tables named by the referencing columns.
    using Endpoints = std::map<int, std::set<std::string>>;

    static void referenced(const QueryNode& n, const Expr& e, Endpoints& out) {
        walk_expr(e, [&](const Expr& x) {
            if (x.kind != ExprKind::kColumn || x.binding.node_id != n.id || x.binding.source_index < 0) return;
            auto& tables = out[x.binding.source_index];
            for (const auto& c : x.binding.columns) tables.insert(c.table);
        });
    }

    /// Physical tables an endpoint stands for.
    static std::set<std::string> attribute(const ResolvedSource& src, const std::set<std::string>& named) {
        std::set<std::string> out;
        for (const auto& t : named)
            if (std::find(src.base_tables.begin(), src.base_tables.end(), t) != src.base_tables.end()) out.insert(t);
        if (out.empty()) out.insert(src.base_tables.begin(), src.base_tables.end());
        return out;
    }

    void edge(const QueryNode& n, int a, const std::set<std::string>& named_a, int b,
              const std::set<std::string>& named_b) {
        for (const auto& ta : attribute(n.sources[a], named_a))
            for (const auto& tb : attribute(n.sources[b], named_b)) emit(BagFeature::kJoinPairs, pair_item(ta, tb));
    }

    void explicit_joins(const QueryNode& n, const TableRef& ref) {
        if (ref.kind != TableRefKind::kJoin) return;
        explicit_joins(n, *ref.left);
        explicit_joins(n, *ref.right);
        std::vector<int> left, right;
        leaves(*ref.left, left);
        leaves(*ref.right, right);
        Endpoints named;
        if (ref.condition) referenced(n, *ref.condition, named);
        for (const auto& col : ref.using_columns) {
            for (int idx : left)
                for (const auto& out : n.sources[idx].columns)
                    if (out.name.name == col.name) named[idx];
            for (int idx : right)
                for (const auto& out : n.sources[idx].columns)
                    if (out.name.name == col.name) named[idx];
        }
        auto pick = [&](const std::vector<int>& side) {
            std::vector<int> hit;
            for (int idx : side)
                if (named.count(idx)) hit.push_back(idx);
            return hit.empty() ? side : hit;
        };
        static const std::set<std::string> kNone;
        std::vector<int> ls = pick(left), rs = pick(right);
        for (int l : ls)
            for (int r : rs)
                edge(n, l, named.count(l) ? named[l] : kNone, r, named.count(r) ? named[r] : kNone);
    }

    void implicit_joins(const QueryNode& n, const Expr& where) {
        decompose_leaves(where, [&](const Expr& leaf) {
            if (leaf.kind != ExprKind::kBinary || leaf.text != "=") return;
            Endpoints l, r;
            referenced(n, leaf.children[0], l);
            referenced(n, leaf.children[1], r);
            for (const auto& [a, ta] : l)
                for (const auto& [b, tb] : r)
                    if (a != b) edge(n, a, ta, b, tb);
        });
    }

    template <typename Fn> static void decompose_leaves(const Expr& e, Fn&& fn) {
        if ((e.kind == ExprKind::kBinary && (e.text == "AND" || e.text == "OR")) ||
            (e.kind == ExprKind::kUnary && e.text == "NOT")) {
            for (const auto& c : e.children) decompose_leaves(c, fn);
            return;
        }
        fn(e);
    }

    void join_pairs(const QueryNode& n) {
        if (!n.resolved) return;
        for (const auto& ref : n.from) explicit_joins(n, ref);
        if (n.where) implicit_joins(n, *n.where);
    }

    // -------------------------------------------------------- aggregations

    std::vector<std::string> group_columns(const QueryNode& n) {
        std::set<std::string> cols;
        for (const auto& g : n.group_by) {
            if (is_integer_literal(g)) {
                size_t ordinal = std::stoul(g.text);
                if (ordinal >= 1 && ordinal <= n.select.size()) {
                    walk_expr(n.select[ordinal - 1].expr, [&](const Expr& x) {
                        if (x.kind == ExprKind::kColumn)
                            for (const auto& c : x.binding.columns) cols.insert(c.str());
                    });
                }
                continue;
            }
            walk_expr(g, [&](const Expr& x) {
                if (x.kind == ExprKind::kColumn)
                    for (const auto& c : x.binding.columns) cols.insert(c.str());
            });
        }
        return {cols.begin(), cols.end()};
    }

    template <typename Fn> void for_each_feature_expr(const QueryNode& n, Fn&& fn) {
        for (const auto& item : n.select) fn(item.expr);
        std::function<void(const TableRef&)> visit = [&](const TableRef& ref) {
            if (ref.kind != TableRefKind::kJoin) return;
            visit(*ref.left);
            visit(*ref.right);
            if (ref.condition) fn(*ref.condition);
        };
        for (const auto& ref : n.from) visit(ref);
        if (n.where) fn(*n.where);
        for (const auto& g : n.group_by) fn(g);
        if (n.having) fn(*n.having);
    }

    void aggregations(const QueryNode& n) {
        std::string group = "(" + join(group_columns(n), ", ") + ")";
        for_each_feature_expr(n, [&](const Expr& root) {
            walk_expr(root, [&](const Expr& x) {
                if (x.kind != ExprKind::kFunction || x.style != CallStyle::kPlain) return;
                std::string name = to_upper(x.text);
                if (!is_aggregate_function(name)) return;
                std::string args = (x.distinct ? "DISTINCT " : "") + join(operand_list(x.children, 0), ", ");
                emit(BagFeature::kAggregations, name + "(" + args + ") GROUP BY " + group);
            });
        });
    }

    // ----------------------------------------------------------- functions

    void functions(const QueryNode& n) {
        for_each_feature_expr(n, [&](const Expr& root) {
            walk_expr(root, [&](const Expr& x) {
                if (x.kind == ExprKind::kFunction) emit(BagFeature::kFunctions, to_upper(x.text));
                if (x.kind == ExprKind::kCast) emit(BagFeature::kFunctions, "CAST");
            });
        });
    }

    static int count_node_func_exprs(const QueryNode& n) {
        int count = 0;
        for (const auto& item : n.select) count += contains_function(item.expr) ? 1 : 0;
        auto leaves_with_functions = [&](const Expr& e) {
            decompose_leaves(e, [&](const Expr& leaf) { count += contains_function(leaf) ? 1 : 0; });
        };
        if (n.where) leaves_with_functions(*n.where);
        for (const auto& g : n.group_by) count += contains_function(g) ? 1 : 0;
        if (n.having) leaves_with_functions(*n.having);
        return count;
    }

    FeatureOptions options_;
    CanonicalRenderer renderer_;
    std::array<std::vector<std::string>, kBagFeatureCount> occurrences_;
    int func_exprs_ = 0;
    int ctes_ = 0;
};

}  // namespace

const std::array<BagFeature, kBagFeatureCount>& all_bag_features() { return kFeatures; }

std::string_view feature_name(BagFeature feature) { return kFeatureNames[static_cast<size_t>(feature)]; }

std::optional<BagFeature> feature_from_name(std::string_view name) {
    for (size_t i = 0; i < kBagFeatureCount; ++i)
        if (name == kFeatureNames[i]) return kFeatures[i];
    return std::nullopt;
}

bool is_aggregate_function(std::string_view upper_name) {
    return std::any_of(kAggregates.begin(), kAggregates.end(), [&](const char* a) { return upper_name == a; });
}

Bag::Bag(std::initializer_list<std::string> items) {
    for (const auto& item : items) add(item);
}

void Bag::add(const std::string& item, int count) {
    if (count > 0) items_[item] += count;
}

int Bag::count(const std::string& item) const {
    auto it = items_.find(item);
    return it == items_.end() ? 0 : it->second;
}

size_t Bag::size() const {
    size_t total = 0;
    for (const auto& [item, count] : items_) total += static_cast<size_t>(count);
    return total;
}

std::vector<std::string> Bag::sorted() const {
    std::vector<std::string> out;
    for (const auto& [item, count] : items_) out.insert(out.end(), static_cast<size_t>(count), item);
    return out;
}

Bag Bag::as_set() const {
    Bag out;
    for (const auto& [item, count] : items_) out.items_[item] = 1;
    return out;
}

bool Bag::subset_of(const Bag& other) const {
    return std::all_of(items_.begin(), items_.end(),
                       [&](const auto& kv) { return other.count(kv.first) >= kv.second; });
}

FeatureVector feature_vector(const QueryTree& tree, const FeatureOptions& options) {
    return Extractor(tree, options).run(tree.root);
}

FeatureVector feature_vector_of(const QueryTree& tree, const QueryNode& node, const FeatureOptions& options) {
    return Extractor(tree, options).run(node);
}

Bag extract_select_columns(const QueryTree& tree, const FeatureOptions& options) {
    return feature_vector(tree, options).bag(BagFeature::kColsSelect);
}
Bag extract_all_columns(const QueryTree& tree, const FeatureOptions& options) {
    return feature_vector(tree, options).bag(BagFeature::kColsAll);
}
Bag extract_relations(const QueryTree& tree, const FeatureOptions& options) {
    return feature_vector(tree, options).bag(BagFeature::kRelations);
}
Bag extract_where_predicates(const QueryTree& tree, const FeatureOptions& options) {
    return feature_vector(tree, options).bag(BagFeature::kWherePreds);
}
Bag extract_join_pairs(const QueryTree& tree, const FeatureOptions& options) {
    return feature_vector(tree, options).bag(BagFeature::kJoinPairs);
}
Bag extract_aggregations(const QueryTree& tree, const FeatureOptions& options) {
    return feature_vector(tree, options).bag(BagFeature::kAggregations);
}
Bag extract_functions(const QueryTree& tree, const FeatureOptions& options) {
    return feature_vector(tree, options).bag(BagFeature::kFunctions);
}
int count_func_exprs(const QueryTree& tree) { return feature_vector(tree).func_expr_count; }
int count_ctes(const QueryTree& tree) { return feature_vector(tree).cte_count; }

std::string feature_vector_json(const FeatureVector& fv, std::string_view query_id) {
    nlohmann::ordered_json doc;
    doc["query_id"] = std::string(query_id);
    doc["mode"] = fv.multiset ? "multiset" : "set";
    nlohmann::ordered_json features = nlohmann::ordered_json::object();
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (BagFeature f : kFeatures) {
        features[std::string(feature_name(f))] = fv.bag(f).sorted();
        counts[std::string(feature_name(f))] = fv.cardinality(f);
    }
    counts["cte_count"] = fv.cte_count;
    counts["subquery_count"] = fv.subquery_count;
    counts["func_expr_count"] = fv.func_expr_count;
    doc["features"] = std::move(features);
    doc["counts"] = std::move(counts);
    return doc.dump(2) + "\n";
}

}  // namespace sqlcx
