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


#include "query_gen.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace sqlcx::testkit {

const char* const kGeneratorSchema =
    "CREATE TABLE t (a INTEGER, b INTEGER, c INTEGER, k INTEGER);\n"
    "CREATE TABLE u (b INTEGER, k INTEGER, v INTEGER);\n"
    "CREATE TABLE v (b INTEGER, w INTEGER);\n";

namespace {

const std::map<std::string, std::vector<std::string>> kTables = {
    {"t", {"a", "b", "c", "k"}},
    {"u", {"b", "k", "v"}},
    {"v", {"b", "w"}},
};

const std::vector<std::string> kTableNames = {"t", "u", "v"};

constexpr int kMaxDepth = 2;

enum class TokKind { kKeyword, kIdent, kLiteral, kSymbol };

struct Tok {
    TokKind kind;
    std::string text;
};

using Toks = std::vector<Tok>;

void append(Toks& out, const Toks& more) { out.insert(out.end(), more.begin(), more.end()); }

struct Src {
    std::string alias;
    std::string table;  // base table name, empty for derived/CTE sources
    std::vector<std::string> cols;
};

using Scope = std::vector<Src>;

struct Column {
    std::string text;  // alias.col
    std::string sig;   // table.col for base tables, else the text
};

class Generator {
   public:
    Generator(uint64_t seed, const GenStyle& style) : rng_(seed), style_(style) {}

    GeneratedQuery run() {
        GeneratedQuery out;
        RootInfo info;
        std::vector<std::string> cols;
        Toks toks = query(0, {}, false, -1, &cols, &info);
        out.sql = render(toks);
        out.nodes = nodes_;
        out.ctes = ctes_;
        if (nodes_ == 1 && !info.having && info.pure_conjunction && info.sigs_distinct) out.conjunction_k = info.conditions;
        return out;
    }

   private:
    struct RootInfo {
        bool having = false;
        bool pure_conjunction = false;
        bool sigs_distinct = true;
        int conditions = 0;
    };

    // All structural randomness flows through these two helpers so that
    // styles never perturb the decision sequence.
    bool pick(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    template <typename T> const T& choose(const std::vector<T>& v) { return v[uniform(0, static_cast<int>(v.size()) - 1)]; }

    std::string alias_name(int id) const {
        return style_.rename_aliases ? "zq" + std::to_string(id * 7 + 3) + "_x" : "s" + std::to_string(id);
    }
    std::string output_name(int id) const {
        return style_.rename_aliases ? "out_" + std::to_string(id) + "_r" : "o" + std::to_string(id);
    }
    std::string cte_name(int id) const {
        return style_.rename_aliases ? "cte_" + std::to_string(id) + "_r" : "w" + std::to_string(id);
    }
    std::string literal() { return std::to_string(100 + next_literal_++); }

    static Tok kw(std::string s) { return {TokKind::kKeyword, std::move(s)}; }
    static Tok id(std::string s) { return {TokKind::kIdent, std::move(s)}; }
    static Tok lit(std::string s) { return {TokKind::kLiteral, std::move(s)}; }
    static Tok sym(std::string s) { return {TokKind::kSymbol, std::move(s)}; }

    Column column(const Scope& scope) {
        const Src& src = choose(scope);
        const std::string& col = choose(src.cols);
        return {src.alias + "." + col, src.table.empty() ? src.alias + "." + col : src.table + "." + col};
    }

    // ---- expressions ----

    Toks scalar_expr(const Scope& scope, int depth) {
        switch (uniform(0, 5)) {
            case 0:
            case 1:
                return {id(column(scope).text)};
            case 2: {
                int f = uniform(0, 3);
                std::string c = column(scope).text;
                if (f == 0) return {kw("ABS"), sym("("), id(c), sym(")")};
                if (f == 1) return {kw("COALESCE"), sym("("), id(c), sym(","), lit(literal()), sym(")")};
                if (f == 2) return {kw("ROUND"), sym("("), id(c), sym(")")};
                return {kw("UPPER"), sym("("), kw("CAST"), sym("("), id(c), kw("AS"), kw("VARCHAR"), sym(")"), sym(")")};
            }
            case 3: {
                std::string a = column(scope).text;
                if (pick(0.5)) return {id(a), sym("+"), id(column(scope).text)};
                return {id(a), sym("*"), lit(literal())};
            }
            case 4: {
                Toks out{kw("CASE"), kw("WHEN"), id(column(scope).text), sym(">"), lit(literal()), kw("THEN"),
                         id(column(scope).text), kw("ELSE"), lit(literal()), kw("END")};
                return out;
            }
            default: {
                if (depth >= kMaxDepth) return {id(column(scope).text)};
                // Correlated scalar subquery.
                ++nodes_;
                const std::string& table = choose(kTableNames);
                std::string inner = alias_name(next_id_++);
                const auto& cols = kTables.at(table);
                Toks out{sym("("), kw("SELECT"), kw("MAX"), sym("("), id(inner + "." + choose(cols)), sym(")"),
                         kw("FROM"), id(table), id(inner), kw("WHERE")};
                Toks eq = equality({id(inner + "." + choose(cols))}, {id(column(scope).text)});
                append(out, eq);
                out.push_back(sym(")"));
                return out;
            }
        }
    }

    Toks equality(Toks lhs, Toks rhs) {
        if (style_.swap_sides) std::swap(lhs, rhs);
        Toks out = lhs;
        out.push_back(sym("="));
        append(out, rhs);
        return out;
    }

    Toks aggregate(const Scope& scope) {
        switch (uniform(0, 4)) {
            case 0:
                return {kw("SUM"), sym("("), id(column(scope).text), sym(")")};
            case 1:
                return {kw("COUNT"), sym("("), sym("*"), sym(")")};
            case 2:
                return {kw("AVG"), sym("("), id(column(scope).text), sym("+"), id(column(scope).text), sym(")")};
            case 3:
                return {kw("MAX"), sym("("), id(column(scope).text), sym(")")};
            default:
                return {kw("COUNT"), sym("("), kw("DISTINCT"), id(column(scope).text), sym(")")};
        }
    }

    // One basic condition. `sig` identifies it up to canonical equality when
    // it only involves base-table columns and literals.
    Toks condition(const Scope& scope, const std::vector<Scope>& outer, int depth, std::string& sig,
                   bool& has_subquery) {
        int kind = uniform(0, depth < kMaxDepth ? 8 : 6);
        Column c = column(scope);
        switch (kind) {
            case 0: {
                static const std::vector<std::string> ops = {"=", "<>", "<", "<=", ">", ">=", "!="};
                std::string op = choose(ops);
                std::string l = literal();
                sig = "cmp " + c.sig + " " + l;
                if (op == "=") return equality({id(c.text)}, {lit(l)});
                return {id(c.text), sym(op), lit(l)};
            }
            case 1: {
                Column d = column(scope);
                sig = "colcmp " + std::min(c.sig, d.sig) + " " + std::max(c.sig, d.sig);
                return equality({id(c.text)}, {id(d.text)});
            }
            case 2: {
                std::string lo = literal(), hi = literal();
                sig = "between " + c.sig + " " + lo;
                Toks out{id(c.text)};
                if (pick(0.2)) out.push_back(kw("NOT"));
                append(out, {kw("BETWEEN"), lit(lo), kw("AND"), lit(hi)});
                return out;
            }
            case 3: {
                Toks out{id(c.text)};
                if (pick(0.3)) out.push_back(kw("NOT"));
                out.push_back(kw("IN"));
                out.push_back(sym("("));
                std::string first = literal();
                sig = "in " + c.sig + " " + first;
                out.push_back(lit(first));
                for (int i = uniform(1, 3); i > 0; --i) {
                    out.push_back(sym(","));
                    out.push_back(lit(literal()));
                }
                out.push_back(sym(")"));
                return out;
            }
            case 4: {
                std::string l = literal();
                sig = "like " + c.sig + " " + l;
                Toks out{kw("CAST"), sym("("), id(c.text), kw("AS"), kw("VARCHAR"), sym(")")};
                if (pick(0.3)) out.push_back(kw("NOT"));
                append(out, {kw("LIKE"), lit("'" + l + "%'")});
                return out;
            }
            case 5: {
                bool negated = pick(0.5);
                sig = std::string(negated ? "notnull " : "isnull ") + c.sig;
                Toks out{id(c.text), kw("IS")};
                if (negated) out.push_back(kw("NOT"));
                out.push_back(kw("NULL"));
                return out;
            }
            case 6: {
                std::string l = literal();
                sig = "fn " + c.sig + " " + l;
                return {kw("ABS"), sym("("), id(c.text), sym(")"), sym(">"), lit(l)};
            }
            case 7: {
                has_subquery = true;
                sig = "sub" + std::to_string(next_literal_);
                std::vector<Scope> inner_outer = outer;
                inner_outer.push_back(scope);
                std::vector<std::string> cols;
                RootInfo ignored;
                Toks out{id(c.text)};
                if (pick(0.3)) out.push_back(kw("NOT"));
                out.push_back(kw("IN"));
                out.push_back(sym("("));
                append(out, query(depth + 1, inner_outer, false, 1, &cols, &ignored));
                out.push_back(sym(")"));
                return out;
            }
            default: {
                has_subquery = true;
                sig = "exists" + std::to_string(next_literal_);
                ++nodes_;
                const std::string& table = choose(kTableNames);
                std::string inner = alias_name(next_id_++);
                Scope inner_scope{{inner, table, kTables.at(table)}};
                Toks out;
                if (pick(0.3)) out.push_back(kw("NOT"));
                append(out, {kw("EXISTS"), sym("("), kw("SELECT"), lit("1"), kw("FROM"), id(table), id(inner),
                             kw("WHERE")});
                append(out, equality({id(column(inner_scope).text)}, {id(column(scope).text)}));
                if (pick(0.5)) {
                    std::string s;
                    bool sub = false;
                    out.push_back(kw("AND"));
                    append(out, condition(inner_scope, {}, kMaxDepth, s, sub));
                }
                out.push_back(sym(")"));
                return out;
            }
        }
    }

    Toks where_clause(const Scope& scope, const std::vector<Scope>& outer, int depth, RootInfo* info) {
        int n = uniform(1, 4);
        bool pure = pick(0.6);
        std::set<std::string> sigs;
        Toks out;
        info->pure_conjunction = pure;
        info->conditions = n;
        for (int i = 0; i < n; ++i) {
            if (i > 0) out.push_back(kw(!pure && pick(0.4) ? "OR" : "AND"));
            std::string sig;
            bool sub = false;
            bool negate = !pure && pick(0.2);
            bool grouped = !pure && pick(0.25);
            if (negate) append(out, {kw("NOT"), sym("(")});
            if (grouped) out.push_back(sym("("));
            append(out, condition(scope, outer, depth, sig, sub));
            if (grouped) {
                std::string sig2;
                out.push_back(kw("OR"));
                append(out, condition(scope, outer, depth, sig2, sub));
                out.push_back(sym(")"));
            }
            if (negate) out.push_back(sym(")"));
            if (!sigs.insert(sig).second || sub) info->sigs_distinct = false;
        }
        return out;
    }

    // ---- query ----

    // `fixed_items` > 0 forces that many plain select items (IN subqueries,
    // UNION arms). `named` gives every select item an output alias.
    Toks query(int depth, const std::vector<Scope>& outer, bool named, int fixed_items,
               std::vector<std::string>* out_cols, RootInfo* info) {
        ++nodes_;
        Toks out;
        std::vector<Src> ctes;
        if (depth == 0 && fixed_items < 0 && pick(0.25)) {
            out.push_back(kw("WITH"));
            int n = uniform(1, 2);
            for (int i = 0; i < n; ++i) {
                if (i > 0) out.push_back(sym(","));
                std::string name = cte_name(next_id_++);
                std::vector<std::string> cols;
                RootInfo ignored;
                Toks body = query(depth + 1, {}, true, -1, &cols, &ignored);
                append(out, {id(name), kw("AS"), sym("(")});
                append(out, body);
                out.push_back(sym(")"));
                ctes.push_back({name, "", cols});
                ++ctes_;
            }
        }

        // FROM items are decided first so select items can reference them.
        int nsrc = uniform(1, 3);
        Scope scope;
        std::vector<Toks> src_toks;
        for (int i = 0; i < nsrc; ++i) {
            std::string alias = alias_name(next_id_++);
            if (!ctes.empty() && pick(0.4)) {
                const Src& cte = choose(ctes);
                scope.push_back({alias, "", cte.cols});
                src_toks.push_back({id(cte.alias), kw("AS"), id(alias)});
            } else if (depth < kMaxDepth && pick(0.15)) {
                std::vector<std::string> cols;
                RootInfo ignored;
                Toks body = query(depth + 1, {}, true, -1, &cols, &ignored);
                Toks t{sym("(")};
                append(t, body);
                append(t, {sym(")"), kw("AS"), id(alias)});
                scope.push_back({alias, "", cols});
                src_toks.push_back(t);
            } else {
                const std::string& table = choose(kTableNames);
                scope.push_back({alias, table, kTables.at(table)});
                Toks t{id(table)};
                if (pick(0.5)) t.push_back(kw("AS"));
                t.push_back(id(alias));
                src_toks.push_back(t);
            }
        }
        bool explicit_join = nsrc > 1 && pick(0.5);
        std::vector<Toks> on;
        for (int i = 1; explicit_join && i < nsrc; ++i) {
            Scope left(scope.begin(), scope.begin() + i);
            Scope right{scope[i]};
            on.push_back(equality({id(column(left).text)}, {id(column(right).text)}));
        }

        // SELECT list.
        bool grouped = fixed_items < 0 && pick(0.3);
        bool distinct = !grouped && pick(0.1);
        Toks select;
        std::vector<Toks> items;
        std::vector<Toks> group_keys;
        if (fixed_items > 0) {
            for (int i = 0; i < fixed_items; ++i) items.push_back({id(column(scope).text)});
        } else if (grouped) {
            for (int i = uniform(1, 2); i > 0; --i) group_keys.push_back({id(column(scope).text)});
            items = group_keys;
            for (int i = uniform(1, 2); i > 0; --i) items.push_back(aggregate(scope));
        } else {
            for (int i = uniform(1, 3); i > 0; --i) {
                if (!named && pick(0.08)) {
                    items.push_back({id(choose(scope).alias + ".*")});
                } else {
                    items.push_back(scalar_expr(scope, depth));
                }
            }
        }
        select.push_back(kw("SELECT"));
        if (distinct) select.push_back(kw("DISTINCT"));
        for (size_t i = 0; i < items.size(); ++i) {
            if (i > 0) select.push_back(sym(","));
            append(select, items[i]);
            if (named || pick(0.3)) {
                std::string name = output_name(next_id_++);
                append(select, {kw("AS"), id(name)});
                out_cols->push_back(name);
            } else if (items[i].size() == 1 && items[i][0].kind == TokKind::kIdent) {
                const std::string& text = items[i][0].text;
                out_cols->push_back(text.substr(text.find('.') + 1));
            } else {
                out_cols->push_back("?column?");
            }
        }
        append(out, select);

        out.push_back(kw("FROM"));
        // Join kinds are drawn before styling so every style consumes the
        // structural RNG identically. Only inner joins are swapped.
        std::vector<bool> outer_join;
        for (int i = 1; explicit_join && i < nsrc; ++i) outer_join.push_back(pick(0.3));
        if (explicit_join && nsrc == 2 && style_.swap_sides && !outer_join[0]) {
            append(out, src_toks[1]);
            out.push_back(kw("JOIN"));
            append(out, src_toks[0]);
            out.push_back(kw("ON"));
            append(out, on[0]);
        } else if (explicit_join) {
            append(out, src_toks[0]);
            for (int i = 1; i < nsrc; ++i) {
                out.push_back(kw(outer_join[i - 1] ? "LEFT JOIN" : "JOIN"));
                append(out, src_toks[i]);
                out.push_back(kw("ON"));
                append(out, on[i - 1]);
            }
        } else {
            for (int i = 0; i < nsrc; ++i) {
                int idx = style_.swap_sides ? nsrc - 1 - i : i;
                if (i > 0) out.push_back(sym(","));
                append(out, src_toks[idx]);
            }
        }

        if (pick(0.7)) {
            out.push_back(kw("WHERE"));
            append(out, where_clause(scope, outer, depth, info));
        }
        if (grouped) {
            out.push_back(kw("GROUP BY"));
            for (size_t i = 0; i < group_keys.size(); ++i) {
                if (i > 0) out.push_back(sym(","));
                append(out, group_keys[i]);
            }
            if (pick(0.4)) {
                info->having = true;
                out.push_back(kw("HAVING"));
                append(out, aggregate(scope));
                append(out, {sym(">"), lit(literal())});
            }
        }
        bool has_tail = false;
        if (depth == 0 && fixed_items < 0 && !grouped && pick(0.1)) {
            std::vector<std::string> cols;
            RootInfo ignored;
            out.push_back(kw(pick(0.5) ? "UNION ALL" : "UNION"));
            append(out, query(depth + 1, {}, false, static_cast<int>(items.size()), &cols, &ignored));
            has_tail = true;
        }
        if (!has_tail && fixed_items < 0 && pick(0.3)) {
            append(out, {kw("ORDER BY"), lit("1")});
            if (pick(0.5)) out.push_back(kw("DESC"));
            if (pick(0.5)) append(out, {kw("LIMIT"), lit(literal())});
        }
        return out;
    }

    // ---- text ----

    std::string spell(const Tok& t) {
        if (!style_.reformat || t.kind == TokKind::kLiteral || t.kind == TokKind::kSymbol) return t.text;
        std::string s = t.text;
        int mode = std::uniform_int_distribution<int>(0, 2)(fmt_rng_);
        for (char& c : s) {
            unsigned char u = static_cast<unsigned char>(c);
            if (mode == 0) c = static_cast<char>(std::tolower(u));
            if (mode == 1) c = static_cast<char>(std::toupper(u));
            if (mode == 2) c = std::uniform_int_distribution<int>(0, 1)(fmt_rng_) ? static_cast<char>(std::toupper(u))
                                                                                   : static_cast<char>(std::tolower(u));
        }
        return s;
    }

    std::string gap(const Tok& prev, const Tok& next) {
        if (!style_.reformat) return " ";
        static const std::vector<std::string> gaps = {" ", "  ", "\n", "\t", "\n    ", " /* note */ ", " -- note\n"};
        bool tight_ok = (prev.kind == TokKind::kSymbol && prev.text != "*" && prev.text != "<" && prev.text != ">") ||
                        (next.kind == TokKind::kSymbol && next.text != "*" && next.text != "<" && next.text != ">");
        int r = std::uniform_int_distribution<int>(0, static_cast<int>(gaps.size()))(fmt_rng_);
        if (r == static_cast<int>(gaps.size())) return tight_ok ? "" : " ";
        return gaps[r];
    }

    std::string render(const Toks& toks) {
        fmt_rng_.seed(style_.format_seed);
        std::string out;
        if (style_.reformat) out += "-- generated\n";
        for (size_t i = 0; i < toks.size(); ++i) {
            if (i > 0) out += gap(toks[i - 1], toks[i]);
            out += spell(toks[i]);
        }
        if (style_.reformat) out += "\n;\n";
        return out;
    }

    std::mt19937_64 rng_;
    std::mt19937_64 fmt_rng_;
    GenStyle style_;
    int next_id_ = 0;
    int next_literal_ = 0;
    int nodes_ = 0;
    int ctes_ = 0;
};

}  // namespace

GeneratedQuery generate_query(uint64_t seed, const GenStyle& style) { return Generator(seed, style).run(); }

}  // namespace sqlcx::testkit
