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

#include "sqlcx/parser.h"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "sqlcx/errors.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

constexpr std::array kReservedWords = {
    "ALL",       "AND",    "ANY",       "AS",       "ASC",       "BETWEEN", "BY",        "CASE",    "CROSS",
    "DESC",      "DISTINCT", "ELSE",    "END",      "EXCEPT",    "EXISTS",  "FETCH",     "FOR",     "FROM",
    "FULL",      "GROUP",  "HAVING",    "ILIKE",    "IN",        "INNER",   "INTERSECT", "INTO",    "IS",
    "ISNULL",    "JOIN",   "LATERAL",   "LEFT",     "LIKE",      "LIMIT",   "NATURAL",   "NOT",     "NOTNULL",
    "NULL",      "NULLS",  "OFFSET",    "ON",       "OR",        "ORDER",   "OUTER",     "QUALIFY", "RETURNING",
    "RIGHT",     "SELECT", "SIMILAR",   "SOME",     "TABLESAMPLE", "THEN",  "UNION",     "USING",   "WHEN",
    "WHERE",     "WINDOW", "WITH",
};

constexpr std::array kUnsupportedStatements = {"INSERT", "UPDATE", "DELETE", "MERGE",  "CREATE", "DROP",
                                               "ALTER",  "VALUES", "EXPLAIN", "COPY",  "TRUNCATE", "GRANT",
                                               "SET",    "SHOW",   "BEGIN",  "COMMIT", "DECLARE", "DO"};

constexpr std::array kNiladicFunctions = {"CURRENT_DATE", "CURRENT_TIME", "CURRENT_TIMESTAMP", "LOCALTIME",
                                          "LOCALTIMESTAMP", "CURRENT_USER", "SESSION_USER"};

constexpr std::array kIntervalUnits = {"YEAR",   "YEARS",  "MONTH",   "MONTHS",  "DAY",    "DAYS",
                                       "HOUR",   "HOURS",  "MINUTE",  "MINUTES", "SECOND", "SECONDS",
                                       "WEEK",   "WEEKS",  "QUARTER", "MILLISECOND", "MICROSECOND"};

constexpr std::array kTypeContinuations = {"PRECISION", "VARYING", "WITH", "WITHOUT", "TIME", "ZONE"};

template <size_t N> bool contains(const std::array<const char*, N>& words, std::string_view w) {
    return std::any_of(words.begin(), words.end(), [&](const char* k) { return w == k; });
}

constexpr int kMaxDepth = 400;

class Parser {
   public:
    Parser(std::string_view sql, Dialect dialect) : sql_(sql), dialect_(dialect), tokens_(tokenize(sql, dialect)) {}

    QueryTree parse_statement() {
        const Token& first = peek();
        if (first.type == TokenType::kWord && contains(kUnsupportedStatements, first.upper))
            throw UnsupportedConstruct(first.upper, first.offset);
        if (first.type == TokenType::kEnd) throw SyntaxError(first.offset, "SELECT or WITH", "end of input");
        if (!(first.is_word("SELECT") || first.is_word("WITH") || first.type == TokenType::kLParen))
            throw SyntaxError(first.offset, "SELECT or WITH", first.text);
        QueryTree tree;
        tree.root = parse_query_expression();
        tree.dialect = dialect_;
        tree.source_text = std::string(sql_);
        finish_statement();
        assign_node_ids(tree.root);
        return tree;
    }

    Expr parse_standalone_expression() {
        Expr e = parse_expr();
        if (peek().type == TokenType::kSemicolon) advance();
        if (peek().type != TokenType::kEnd) throw SyntaxError(peek().offset, "end of expression", peek().text);
        return e;
    }

   private:
    // ---------------------------------------------------------------- tokens

    const Token& peek(size_t ahead = 0) const {
        size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool accept_word(std::string_view kw) {
        if (peek().is_word(kw)) {
            advance();
            return true;
        }
        return false;
    }
    bool accept(TokenType type) {
        if (peek().type == type) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_op(std::string_view op) {
        if (peek().is_op(op)) {
            advance();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(std::string expected) const {
        const Token& t = peek();
        throw SyntaxError(t.offset, std::move(expected), t.type == TokenType::kEnd ? "end of input" : t.text);
    }
    void expect_word(std::string_view kw) {
        if (!accept_word(kw)) fail(std::string(kw));
    }
    void expect(TokenType type, const char* what) {
        if (!accept(type)) fail(what);
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth)
                throw UnsupportedConstruct("nesting deeper than " + std::to_string(kMaxDepth), parser.peek().offset);
        }
        ~DepthGuard() { --parser.depth_; }
        Parser& parser;
    };

    void finish_statement() {
        if (peek().type == TokenType::kSemicolon) {
            advance();
            while (peek().type == TokenType::kSemicolon) advance();
            if (peek().type != TokenType::kEnd) throw MultipleStatements(peek().offset);
            return;
        }
        if (peek().type != TokenType::kEnd) fail("end of statement");
    }

    bool starts_query(size_t ahead = 0) const {
        size_t i = ahead;
        while (peek(i).type == TokenType::kLParen) ++i;
        return peek(i).is_word("SELECT") || peek(i).is_word("WITH");
    }

    Identifier identifier(const char* what) {
        const Token& t = peek();
        if (t.type == TokenType::kQuotedIdent) {
            advance();
            return {t.text, true};
        }
        if (t.type == TokenType::kWord) {
            advance();
            return {to_lower(t.text), false};
        }
        fail(what);
    }

    bool at_identifier() const {
        const Token& t = peek();
        return t.type == TokenType::kQuotedIdent || (t.type == TokenType::kWord && !is_reserved_word(t.upper));
    }

    /// [AS] alias, or nothing.
    Identifier optional_alias() {
        if (accept_word("AS")) {
            if (peek().type == TokenType::kString && dialect_ == Dialect::kSqlite) {
                std::string raw = advance().text;
                return {raw.substr(1, raw.size() - 2), true};
            }
            return identifier("alias");
        }
        if (at_identifier()) return identifier("alias");
        return {};
    }

    // --------------------------------------------------------------- queries

    QueryNode parse_query_expression() {
        DepthGuard guard(*this);
        size_t start = peek().offset;
        std::vector<Cte> ctes;
        bool recursive = false;
        if (accept_word("WITH")) {
            recursive = accept_word("RECURSIVE");
            do {
                ctes.push_back(parse_cte());
                for (size_t i = 0; i + 1 < ctes.size(); ++i)
                    if (ctes[i].name == ctes.back().name)
                        throw SyntaxError(start, "unique CTE name", ctes.back().name.name);
            } while (accept(TokenType::kComma));
        }
        bool head_parenthesized = peek().type == TokenType::kLParen;
        QueryNode head = parse_set_term();
        bool head_has_chain = !head.ctes.empty() || !head.set_ops.empty() || !head.order_by.empty() || head.limit ||
                              head.offset_rows;
        auto require_mergeable = [&](const char* what) {
            if (head_parenthesized && head_has_chain)
                throw UnsupportedConstruct(std::string("parenthesized query with set operation or ORDER BY/LIMIT "
                                                       "followed by ") +
                                               what,
                                           peek().offset);
        };
        while (true) {
            SetOpArm arm;
            if (accept_word("UNION")) {
                arm.op = SetOpKind::kUnion;
            } else if (accept_word("INTERSECT")) {
                arm.op = SetOpKind::kIntersect;
            } else if (accept_word("EXCEPT") || accept_word("MINUS")) {
                arm.op = SetOpKind::kExcept;
            } else {
                break;
            }
            require_mergeable("set operation");
            if (accept_word("ALL")) {
                arm.all = true;
            } else {
                accept_word("DISTINCT");
            }
            arm.operand = parse_set_term();
            head.set_ops.push_back(std::move(arm));
        }
        if (peek().is_word("ORDER")) {
            require_mergeable("ORDER BY");
            advance();
            expect_word("BY");
            head.order_by = parse_order_items();
        }
        parse_limit_clauses(head, [&] { require_mergeable("LIMIT"); });
        if (!ctes.empty()) {
            if (!head.ctes.empty()) throw UnsupportedConstruct("nested WITH on a parenthesized query", start);
            head.ctes = std::move(ctes);
            head.recursive = recursive;
        }
        return head;
    }

    template <typename OnLimit> void parse_limit_clauses(QueryNode& head, OnLimit&& on_limit) {
        while (true) {
            if (peek().is_word("LIMIT")) {
                on_limit();
                advance();
                if (accept_word("ALL")) {
                    head.limit.reset();
                } else {
                    head.limit = parse_expr();
                    if (accept(TokenType::kComma)) {
                        // LIMIT offset, count (sqlite/mysql)
                        head.offset_rows = std::move(head.limit);
                        head.limit = parse_expr();
                    }
                }
            } else if (peek().is_word("OFFSET")) {
                on_limit();
                advance();
                head.offset_rows = parse_expr();
                if (!accept_word("ROWS")) accept_word("ROW");
            } else if (peek().is_word("FETCH")) {
                on_limit();
                advance();
                if (!accept_word("FIRST")) expect_word("NEXT");
                if (peek().is_word("ROW") || peek().is_word("ROWS")) {
                    head.limit = make_literal(LiteralKind::kNumber, "1");
                } else {
                    head.limit = parse_expr();
                }
                if (!accept_word("ROWS")) expect_word("ROW");
                expect_word("ONLY");
            } else {
                break;
            }
        }
    }

    Cte parse_cte() {
        Cte cte;
        cte.name = identifier("CTE name");
        if (accept(TokenType::kLParen)) {
            do {
                cte.column_aliases.push_back(identifier("column name"));
            } while (accept(TokenType::kComma));
            expect(TokenType::kRParen, ")");
        }
        expect_word("AS");
        if (accept_word("NOT")) {
            expect_word("MATERIALIZED");
            cte.materialized = "NOT MATERIALIZED";
        } else if (accept_word("MATERIALIZED")) {
            cte.materialized = "MATERIALIZED";
        }
        expect(TokenType::kLParen, "(");
        if (!starts_query()) fail("SELECT");
        cte.body = parse_query_expression();
        expect(TokenType::kRParen, ")");
        return cte;
    }

    /// A SELECT core or a parenthesized query expression.
    QueryNode parse_set_term() {
        DepthGuard guard(*this);
        if (accept(TokenType::kLParen)) {
            if (!starts_query()) fail("SELECT");
            QueryNode inner = parse_query_expression();
            expect(TokenType::kRParen, ")");
            return inner;
        }
        if (peek().is_word("VALUES")) throw UnsupportedConstruct("VALUES", peek().offset);
        if (!peek().is_word("SELECT")) fail("SELECT");
        return parse_select_core();
    }

    QueryNode parse_select_core() {
        QueryNode node;
        node.offset = advance().offset;  // SELECT
        if (accept_word("DISTINCT")) {
            node.distinct = true;
            if (accept_word("ON")) {
                expect(TokenType::kLParen, "(");
                node.distinct_on = parse_expr_list();
                expect(TokenType::kRParen, ")");
            }
        } else {
            accept_word("ALL");
        }
        if (peek().is_word("TOP")) throw UnsupportedConstruct("TOP", peek().offset);
        do {
            node.select.push_back(parse_select_item());
        } while (accept(TokenType::kComma));
        if (peek().is_word("INTO")) throw UnsupportedConstruct("SELECT INTO", peek().offset);
        if (accept_word("FROM")) {
            do {
                node.from.push_back(parse_table_ref());
            } while (accept(TokenType::kComma));
        }
        if (accept_word("WHERE")) node.where = parse_expr();
        if (accept_word("GROUP")) {
            expect_word("BY");
            do {
                node.group_by.push_back(parse_group_item());
            } while (accept(TokenType::kComma));
        }
        if (accept_word("HAVING")) node.having = parse_expr();
        if (peek().is_word("WINDOW")) throw UnsupportedConstruct("WINDOW clause", peek().offset);
        if (peek().is_word("QUALIFY")) throw UnsupportedConstruct("QUALIFY", peek().offset);
        return node;
    }

    SelectItem parse_select_item() {
        SelectItem item;
        if (peek().is_op("*")) {
            Expr star;
            star.kind = ExprKind::kStar;
            star.offset = advance().offset;
            item.expr = std::move(star);
            return item;
        }
        item.expr = parse_expr();
        item.alias = optional_alias();
        return item;
    }

    Expr parse_group_item() {
        const Token& t = peek();
        if ((t.is_word("ROLLUP") || t.is_word("CUBE")) && peek(1).type == TokenType::kLParen) {
            Expr g;
            g.kind = ExprKind::kGroupingSet;
            g.text = t.upper;
            g.offset = t.offset;
            advance();
            advance();
            g.children = parse_grouping_elements();
            expect(TokenType::kRParen, ")");
            return g;
        }
        if (t.is_word("GROUPING") && peek(1).is_word("SETS")) {
            Expr g;
            g.kind = ExprKind::kGroupingSet;
            g.text = "GROUPING SETS";
            g.offset = t.offset;
            advance();
            advance();
            expect(TokenType::kLParen, "(");
            do {
                g.children.push_back(parse_group_item());
            } while (accept(TokenType::kComma));
            expect(TokenType::kRParen, ")");
            return g;
        }
        if (t.type == TokenType::kLParen && peek(1).type == TokenType::kRParen) {
            Expr empty;
            empty.kind = ExprKind::kRow;
            empty.offset = t.offset;
            advance();
            advance();
            return empty;
        }
        return parse_expr();
    }

    /// Elements of ROLLUP/CUBE: expressions or parenthesized lists (which parse as rows).
    std::vector<Expr> parse_grouping_elements() {
        std::vector<Expr> items;
        do {
            items.push_back(parse_expr());
        } while (accept(TokenType::kComma));
        return items;
    }

    std::vector<OrderItem> parse_order_items() {
        std::vector<OrderItem> items;
        do {
            OrderItem item;
            item.expr = parse_expr();
            if (accept_word("DESC")) {
                item.descending = true;
            } else {
                accept_word("ASC");
            }
            if (accept_word("NULLS")) {
                if (accept_word("FIRST")) {
                    item.nulls = "FIRST";
                } else {
                    expect_word("LAST");
                    item.nulls = "LAST";
                }
            }
            items.push_back(std::move(item));
        } while (accept(TokenType::kComma));
        return items;
    }

    // ------------------------------------------------------------ FROM items

    TableRef parse_table_ref() {
        DepthGuard guard(*this);
        TableRef left = parse_table_primary();
        while (true) {
            size_t offset = peek().offset;
            bool natural = accept_word("NATURAL");
            JoinType type = JoinType::kInner;
            if (accept_word("CROSS")) {
                type = JoinType::kCross;
            } else if (accept_word("INNER")) {
                type = JoinType::kInner;
            } else if (accept_word("LEFT")) {
                type = JoinType::kLeft;
                accept_word("OUTER");
            } else if (accept_word("RIGHT")) {
                type = JoinType::kRight;
                accept_word("OUTER");
            } else if (accept_word("FULL")) {
                type = JoinType::kFull;
                accept_word("OUTER");
            } else if (!peek().is_word("JOIN")) {
                if (natural) fail("JOIN");
                break;
            }
            expect_word("JOIN");
            TableRef join;
            join.kind = TableRefKind::kJoin;
            join.join = type;
            join.natural = natural;
            join.offset = offset;
            join.left = std::move(left);
            join.right = parse_table_primary();
            if (type != JoinType::kCross && !natural) {
                if (accept_word("ON")) {
                    join.condition = parse_expr();
                } else if (accept_word("USING")) {
                    expect(TokenType::kLParen, "(");
                    do {
                        join.using_columns.push_back(identifier("column name"));
                    } while (accept(TokenType::kComma));
                    expect(TokenType::kRParen, ")");
                } else if (dialect_ != Dialect::kSqlite) {
                    fail("ON or USING");
                }
            }
            left = std::move(join);
        }
        return left;
    }

    TableRef parse_table_primary() {
        const Token& t = peek();
        if (t.is_word("LATERAL")) throw UnsupportedConstruct("LATERAL", t.offset);
        if (t.type == TokenType::kLParen) {
            if (starts_query(1)) {
                TableRef ref;
                ref.kind = TableRefKind::kSubquery;
                ref.offset = t.offset;
                advance();
                ref.subquery = parse_query_expression();
                expect(TokenType::kRParen, ")");
                parse_alias_and_columns(ref);
                return ref;
            }
            advance();
            TableRef inner = parse_table_ref();
            expect(TokenType::kRParen, ")");
            if (inner.kind == TableRefKind::kJoin && at_alias_start())
                throw UnsupportedConstruct("aliased parenthesized join", peek().offset);
            if (inner.kind != TableRefKind::kJoin) parse_alias_and_columns(inner);
            return inner;
        }
        if (t.is_word("VALUES")) throw UnsupportedConstruct("VALUES", t.offset);
        TableRef ref;
        ref.kind = TableRefKind::kTable;
        ref.offset = t.offset;
        ref.name.push_back(identifier("table name"));
        while (accept_op(".")) ref.name.push_back(identifier("table name"));
        if (peek().type == TokenType::kLParen) throw UnsupportedConstruct("table function", t.offset);
        parse_alias_and_columns(ref);
        if (peek().is_word("TABLESAMPLE")) throw UnsupportedConstruct("TABLESAMPLE", peek().offset);
        return ref;
    }

    bool at_alias_start() const { return peek().is_word("AS") || at_identifier(); }

    void parse_alias_and_columns(TableRef& ref) {
        ref.alias = optional_alias();
        if (!ref.alias.empty() && peek().type == TokenType::kLParen) {
            advance();
            do {
                ref.column_aliases.push_back(identifier("column name"));
            } while (accept(TokenType::kComma));
            expect(TokenType::kRParen, ")");
        }
    }

    // ----------------------------------------------------------- expressions

    std::vector<Expr> parse_expr_list() {
        std::vector<Expr> items;
        do {
            items.push_back(parse_expr());
        } while (accept(TokenType::kComma));
        return items;
    }

    Expr parse_expr() {
        DepthGuard guard(*this);
        return parse_or();
    }

    Expr parse_or() {
        Expr lhs = parse_and();
        while (peek().is_word("OR")) {
            advance();
            lhs = make_binary("OR", std::move(lhs), parse_and());
        }
        return lhs;
    }

    Expr parse_and() {
        Expr lhs = parse_not();
        while (peek().is_word("AND")) {
            advance();
            lhs = make_binary("AND", std::move(lhs), parse_not());
        }
        return lhs;
    }

    Expr parse_not() {
        if (peek().is_word("NOT")) {
            DepthGuard guard(*this);
            size_t offset = advance().offset;
            Expr e = make_unary("NOT", parse_not());
            e.offset = offset;
            return e;
        }
        return parse_predicate();
    }

    static bool is_comparison(const Token& t) {
        if (t.type != TokenType::kOperator) return false;
        return t.text == "=" || t.text == "==" || t.text == "<>" || t.text == "!=" || t.text == "<" ||
               t.text == "<=" || t.text == ">" || t.text == ">=";
    }

    Expr parse_predicate() {
        Expr lhs = parse_concat();
        while (true) {
            const Token& t = peek();
            if (is_comparison(t)) {
                std::string op = t.text == "==" ? "=" : t.text;
                advance();
                if ((peek().is_word("ANY") || peek().is_word("ALL") || peek().is_word("SOME")) &&
                    peek(1).type == TokenType::kLParen && starts_query(2)) {
                    Expr q;
                    q.kind = ExprKind::kQuantified;
                    q.text = op;
                    q.text2 = peek().upper == "SOME" ? "ANY" : peek().upper;
                    q.offset = lhs.offset;
                    advance();
                    advance();
                    q.subquery = parse_query_expression();
                    expect(TokenType::kRParen, ")");
                    q.children.push_back(std::move(lhs));
                    lhs = std::move(q);
                    continue;
                }
                lhs = make_binary(op, std::move(lhs), parse_concat());
                continue;
            }
            bool negated = false;
            size_t save = pos_;
            if (t.is_word("NOT")) {
                negated = true;
                advance();
            }
            const Token& k = peek();
            if (k.is_word("BETWEEN")) {
                advance();
                accept_word("SYMMETRIC");
                Expr b;
                b.kind = ExprKind::kBetween;
                b.negated = negated;
                b.offset = lhs.offset;
                b.children.push_back(std::move(lhs));
                b.children.push_back(parse_concat());
                expect_word("AND");
                b.children.push_back(parse_concat());
                lhs = std::move(b);
                continue;
            }
            if (k.is_word("IN")) {
                advance();
                expect(TokenType::kLParen, "(");
                Expr in;
                in.negated = negated;
                in.offset = lhs.offset;
                if (starts_query()) {
                    in.kind = ExprKind::kInSubquery;
                    in.subquery = parse_query_expression();
                    in.children.push_back(std::move(lhs));
                } else {
                    in.kind = ExprKind::kInList;
                    in.children.push_back(std::move(lhs));
                    for (auto& item : parse_expr_list()) in.children.push_back(std::move(item));
                }
                expect(TokenType::kRParen, ")");
                lhs = std::move(in);
                continue;
            }
            if (k.is_word("LIKE") || k.is_word("ILIKE") || (k.is_word("SIMILAR") && peek(1).is_word("TO")) ||
                k.is_word("GLOB") || k.is_word("REGEXP")) {
                Expr like;
                like.kind = ExprKind::kLike;
                like.text = k.upper == "SIMILAR" ? "SIMILAR TO" : k.upper;
                if (k.upper == "SIMILAR") advance();
                advance();
                like.negated = negated;
                like.offset = lhs.offset;
                like.children.push_back(std::move(lhs));
                like.children.push_back(parse_concat());
                if (accept_word("ESCAPE")) like.children.push_back(parse_concat());
                lhs = std::move(like);
                continue;
            }
            if (negated) {
                pos_ = save;
                break;
            }
            if (k.is_word("IS")) {
                advance();
                bool is_not = accept_word("NOT");
                if (accept_word("NULL")) {
                    Expr n;
                    n.kind = ExprKind::kIsNull;
                    n.negated = is_not;
                    n.offset = lhs.offset;
                    n.children.push_back(std::move(lhs));
                    lhs = std::move(n);
                    continue;
                }
                Expr is;
                is.kind = ExprKind::kIs;
                is.negated = is_not;
                is.offset = lhs.offset;
                is.children.push_back(std::move(lhs));
                if (accept_word("DISTINCT")) {
                    expect_word("FROM");
                    is.text = "DISTINCT FROM";
                    is.children.push_back(parse_concat());
                } else if (accept_word("TRUE")) {
                    is.text = "TRUE";
                } else if (accept_word("FALSE")) {
                    is.text = "FALSE";
                } else if (accept_word("UNKNOWN")) {
                    is.text = "UNKNOWN";
                } else {
                    fail("NULL, TRUE, FALSE, UNKNOWN or DISTINCT FROM");
                }
                lhs = std::move(is);
                continue;
            }
            if (k.is_word("ISNULL") || k.is_word("NOTNULL")) {
                Expr n;
                n.kind = ExprKind::kIsNull;
                n.negated = k.upper == "NOTNULL";
                n.offset = lhs.offset;
                advance();
                n.children.push_back(std::move(lhs));
                lhs = std::move(n);
                continue;
            }
            break;
        }
        return lhs;
    }

    Expr parse_concat() {
        Expr lhs = parse_additive();
        while (peek().is_op("||")) {
            advance();
            lhs = make_binary("||", std::move(lhs), parse_additive());
        }
        return lhs;
    }

    Expr parse_additive() {
        Expr lhs = parse_multiplicative();
        while (peek().is_op("+") || peek().is_op("-")) {
            std::string op = advance().text;
            lhs = make_binary(op, std::move(lhs), parse_multiplicative());
        }
        return lhs;
    }

    Expr parse_multiplicative() {
        Expr lhs = parse_unary();
        while (peek().is_op("*") || peek().is_op("/") || peek().is_op("%")) {
            std::string op = advance().text;
            lhs = make_binary(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    Expr parse_unary() {
        if (peek().is_op("-") || peek().is_op("+") || peek().is_op("~")) {
            DepthGuard guard(*this);
            const Token& t = advance();
            // Fold a sign into a directly following numeric literal.
            if (t.text == "-" && peek().type == TokenType::kNumber && !peek(1).is_op("::")) {
                Expr lit = make_literal(LiteralKind::kNumber, "-" + advance().text);
                lit.offset = t.offset;
                return lit;
            }
            Expr e = make_unary(t.text, parse_unary());
            e.offset = t.offset;
            return e;
        }
        return parse_postfix();
    }

    Expr parse_postfix() {
        Expr e = parse_primary();
        while (peek().is_op("::")) {
            advance();
            Expr cast;
            cast.kind = ExprKind::kCast;
            cast.colon_cast = true;
            cast.offset = e.offset;
            cast.children.push_back(std::move(e));
            cast.text = parse_type_name();
            e = std::move(cast);
        }
        if (peek().is_word("COLLATE")) throw UnsupportedConstruct("COLLATE", peek().offset);
        if (peek().is_word("AT") && peek(1).is_word("TIME")) throw UnsupportedConstruct("AT TIME ZONE", peek().offset);
        return e;
    }

    std::string parse_type_name() {
        const Token& t = peek();
        if (t.type != TokenType::kWord && t.type != TokenType::kQuotedIdent) fail("type name");
        std::string type = t.type == TokenType::kWord ? t.upper : t.text;
        advance();
        while (peek().type == TokenType::kWord && contains(kTypeContinuations, peek().upper)) {
            type += " " + advance().upper;
        }
        if (peek().type == TokenType::kLParen) {
            advance();
            std::vector<std::string> args;
            do {
                const Token& a = peek();
                if (a.type != TokenType::kNumber && a.type != TokenType::kWord) fail("type modifier");
                args.push_back(a.type == TokenType::kWord ? a.upper : a.text);
                advance();
            } while (accept(TokenType::kComma));
            expect(TokenType::kRParen, ")");
            type += "(" + join(args, ",") + ")";
        }
        while (peek().is_word("WITH") || peek().is_word("WITHOUT")) {
            type += " " + advance().upper;
            expect_word("TIME");
            expect_word("ZONE");
            type += " TIME ZONE";
        }
        return type;
    }

    Expr parse_primary() {
        DepthGuard guard(*this);
        const Token& t = peek();
        switch (t.type) {
            case TokenType::kNumber: {
                Expr e = make_literal(LiteralKind::kNumber, t.text);
                e.offset = advance().offset;
                return e;
            }
            case TokenType::kString: {
                Expr e = make_literal(LiteralKind::kString, t.text);
                e.offset = advance().offset;
                return e;
            }
            case TokenType::kParam:
                throw UnsupportedConstruct("query parameter", t.offset);
            case TokenType::kLParen:
                return parse_parenthesized();
            case TokenType::kOperator:
                if (t.text == "*") {
                    Expr star;
                    star.kind = ExprKind::kStar;
                    star.offset = advance().offset;
                    return star;
                }
                fail("expression");
            case TokenType::kQuotedIdent:
                return parse_name_expression();
            case TokenType::kWord:
                return parse_word_expression();
            default:
                fail("expression");
        }
    }

    Expr parse_parenthesized() {
        size_t offset = advance().offset;
        if (starts_query()) {
            // "((SELECT ...) > 0)" also starts like a parenthesized query, so
            // an inner paren gets a query attempt first and falls back to an
            // expression.
            size_t save = pos_;
            try {
                Expr sub;
                sub.kind = ExprKind::kSubquery;
                sub.offset = offset;
                sub.subquery = parse_query_expression();
                expect(TokenType::kRParen, ")");
                return sub;
            } catch (const SyntaxError&) {
                if (tokens_[save].type != TokenType::kLParen) throw;
                pos_ = save;
            }
        }
        Expr first = parse_expr();
        if (accept(TokenType::kComma)) {
            Expr row;
            row.kind = ExprKind::kRow;
            row.offset = offset;
            row.children.push_back(std::move(first));
            for (auto& e : parse_expr_list()) row.children.push_back(std::move(e));
            expect(TokenType::kRParen, ")");
            return row;
        }
        expect(TokenType::kRParen, ")");
        return first;
    }

    Expr parse_word_expression() {
        const Token& t = peek();
        const std::string& w = t.upper;
        size_t offset = t.offset;
        if (w == "NULL") {
            advance();
            Expr e = make_literal(LiteralKind::kNull, "NULL");
            e.offset = offset;
            return e;
        }
        if (w == "TRUE" || w == "FALSE") {
            advance();
            Expr e = make_literal(LiteralKind::kBool, w);
            e.offset = offset;
            return e;
        }
        if (w == "CASE") return parse_case();
        if (w == "EXISTS" && peek(1).type == TokenType::kLParen) {
            advance();
            advance();
            Expr e;
            e.kind = ExprKind::kExists;
            e.offset = offset;
            if (!starts_query()) fail("SELECT");
            e.subquery = parse_query_expression();
            expect(TokenType::kRParen, ")");
            return e;
        }
        if (w == "CAST" && peek(1).type == TokenType::kLParen) {
            advance();
            advance();
            Expr e;
            e.kind = ExprKind::kCast;
            e.offset = offset;
            e.children.push_back(parse_expr());
            expect_word("AS");
            e.text = parse_type_name();
            expect(TokenType::kRParen, ")");
            return e;
        }
        if (w == "INTERVAL" && (peek(1).type == TokenType::kString || peek(1).type == TokenType::kNumber)) {
            advance();
            Expr e;
            e.kind = ExprKind::kInterval;
            e.offset = offset;
            e.text = advance().text;
            if (peek().type == TokenType::kWord && contains(kIntervalUnits, peek().upper)) {
                e.text2 = advance().upper;
                if (accept_word("TO")) {
                    if (!(peek().type == TokenType::kWord && contains(kIntervalUnits, peek().upper)))
                        fail("interval unit");
                    e.text2 += " TO " + advance().upper;
                }
            }
            return e;
        }
        if ((w == "DATE" || w == "TIMESTAMP" || w == "TIME") && peek(1).type == TokenType::kString) {
            advance();
            Expr e = make_literal(LiteralKind::kTyped, advance().text);
            e.text2 = w;
            e.offset = offset;
            return e;
        }
        if (contains(kNiladicFunctions, w) && peek(1).type != TokenType::kLParen) {
            advance();
            Expr e;
            e.kind = ExprKind::kFunction;
            e.style = CallStyle::kNiladic;
            e.text = w;
            e.offset = offset;
            return e;
        }
        if (is_reserved_word(w) && w != "ANY" && w != "SOME" && w != "ALL") fail("expression");
        return parse_name_expression();
    }

    /// Column reference, qualified star, or function call.
    Expr parse_name_expression() {
        size_t offset = peek().offset;
        bool quoted = peek().type == TokenType::kQuotedIdent;
        std::vector<Identifier> parts;
        std::vector<std::string> upper_parts;
        upper_parts.push_back(peek().type == TokenType::kWord ? peek().upper : peek().text);
        parts.push_back(identifier("name"));
        while (peek().is_op(".")) {
            advance();
            if (peek().is_op("*")) {
                advance();
                Expr star;
                star.kind = ExprKind::kStar;
                star.offset = offset;
                star.qualifier = std::move(parts);
                return star;
            }
            upper_parts.push_back(peek().type == TokenType::kWord ? peek().upper : peek().text);
            parts.push_back(identifier("name"));
            quoted = false;
        }
        if (peek().type == TokenType::kLParen) {
            std::string name = join(upper_parts, ".");
            return parse_function_call(name, offset);
        }
        Identifier column = std::move(parts.back());
        parts.pop_back();
        Expr e = make_column(std::move(parts), std::move(column));
        e.offset = offset;
        e.maybe_string = quoted && dialect_ == Dialect::kSqlite && e.qualifier.empty();
        return e;
    }

    Expr parse_function_call(std::string name, size_t offset) {
        advance();  // (
        Expr fn;
        fn.kind = ExprKind::kFunction;
        fn.text = name;
        fn.offset = offset;
        if (name == "EXTRACT" && peek().type == TokenType::kWord && peek(1).is_word("FROM")) {
            fn.style = CallStyle::kExtract;
            fn.text2 = advance().upper;
            advance();
            fn.children.push_back(parse_expr());
            expect(TokenType::kRParen, ")");
            return fn;
        }
        if (name == "POSITION") {
            Expr needle = parse_concat();
            if (accept_word("IN")) {
                fn.style = CallStyle::kPosition;
                fn.children.push_back(std::move(needle));
                fn.children.push_back(parse_expr());
                expect(TokenType::kRParen, ")");
                return fn;
            }
            fn.children.push_back(std::move(needle));
            while (accept(TokenType::kComma)) fn.children.push_back(parse_expr());
            expect(TokenType::kRParen, ")");
            return finish_function(std::move(fn));
        }
        if (name == "TRIM") {
            size_t save = pos_;
            std::string mode;
            if (peek().is_word("BOTH") || peek().is_word("LEADING") || peek().is_word("TRAILING")) mode = advance().upper;
            if (accept_word("FROM")) {
                fn.style = CallStyle::kTrim;
                fn.text2 = mode;
                fn.children.push_back(parse_expr());
                expect(TokenType::kRParen, ")");
                return fn;
            }
            Expr first = parse_expr();
            if (accept_word("FROM")) {
                fn.style = CallStyle::kTrim;
                fn.text2 = mode;
                fn.children.push_back(parse_expr());
                fn.children.push_back(std::move(first));
                expect(TokenType::kRParen, ")");
                return fn;
            }
            if (!mode.empty()) {
                pos_ = save;
                fail("FROM");
            }
            fn.children.push_back(std::move(first));
            while (accept(TokenType::kComma)) fn.children.push_back(parse_expr());
            expect(TokenType::kRParen, ")");
            return finish_function(std::move(fn));
        }
        if (peek().type == TokenType::kRParen) {
            advance();
            return finish_function(std::move(fn));
        }
        if (peek().is_op("*") && peek(1).type == TokenType::kRParen) {
            Expr star;
            star.kind = ExprKind::kStar;
            star.offset = advance().offset;
            fn.children.push_back(std::move(star));
            advance();
            return finish_function(std::move(fn));
        }
        if (accept_word("DISTINCT")) {
            fn.distinct = true;
        } else {
            accept_word("ALL");
        }
        fn.children.push_back(parse_expr());
        if ((name == "SUBSTRING" || name == "SUBSTR") && (peek().is_word("FROM") || peek().is_word("FOR"))) {
            fn.style = CallStyle::kSubstringFrom;
            if (accept_word("FROM")) {
                fn.children.push_back(parse_expr());
            } else {
                fn.children.push_back(make_literal(LiteralKind::kNumber, "1"));
            }
            if (accept_word("FOR")) fn.children.push_back(parse_expr());
            expect(TokenType::kRParen, ")");
            return fn;
        }
        while (accept(TokenType::kComma)) fn.children.push_back(parse_expr());
        if (peek().is_word("ORDER")) throw UnsupportedConstruct("ORDER BY inside aggregate", peek().offset);
        if (peek().is_word("SEPARATOR")) throw UnsupportedConstruct("SEPARATOR", peek().offset);
        expect(TokenType::kRParen, ")");
        return finish_function(std::move(fn));
    }

    Expr finish_function(Expr fn) {
        if (peek().is_word("WITHIN")) throw UnsupportedConstruct("WITHIN GROUP", peek().offset);
        if (peek().is_word("FILTER") && peek(1).type == TokenType::kLParen) {
            advance();
            advance();
            expect_word("WHERE");
            fn.filter = parse_expr();
            expect(TokenType::kRParen, ")");
        }
        if (peek().is_word("OVER")) {
            advance();
            if (peek().type != TokenType::kLParen) throw UnsupportedConstruct("named window", peek().offset);
            advance();
            WindowSpec w;
            if (accept_word("PARTITION")) {
                expect_word("BY");
                w.partition_by = parse_expr_list();
            }
            if (accept_word("ORDER")) {
                expect_word("BY");
                w.order_by = parse_order_items();
            }
            if (peek().is_word("ROWS") || peek().is_word("RANGE") || peek().is_word("GROUPS")) w.frame = parse_frame();
            expect(TokenType::kRParen, ")");
            fn.window = std::move(w);
        }
        return fn;
    }

    /// Frame clauses are kept as normalized token text.
    std::string parse_frame() {
        std::vector<std::string> words;
        words.push_back(advance().upper);
        auto bound = [&]() {
            if (accept_word("UNBOUNDED")) {
                words.push_back("UNBOUNDED");
                if (accept_word("PRECEDING")) {
                    words.push_back("PRECEDING");
                } else {
                    expect_word("FOLLOWING");
                    words.push_back("FOLLOWING");
                }
                return;
            }
            if (accept_word("CURRENT")) {
                expect_word("ROW");
                words.push_back("CURRENT ROW");
                return;
            }
            const Token& n = peek();
            if (n.type != TokenType::kNumber) fail("frame bound");
            words.push_back(advance().text);
            if (accept_word("PRECEDING")) {
                words.push_back("PRECEDING");
            } else {
                expect_word("FOLLOWING");
                words.push_back("FOLLOWING");
            }
        };
        if (accept_word("BETWEEN")) {
            words.push_back("BETWEEN");
            bound();
            expect_word("AND");
            words.push_back("AND");
            bound();
        } else {
            bound();
        }
        if (peek().is_word("EXCLUDE")) throw UnsupportedConstruct("frame EXCLUDE", peek().offset);
        return join(words, " ");
    }

    Expr parse_case() {
        Expr e;
        e.kind = ExprKind::kCase;
        e.offset = advance().offset;
        if (!peek().is_word("WHEN")) {
            e.case_operand = true;
            e.children.push_back(parse_expr());
        }
        if (!peek().is_word("WHEN")) fail("WHEN");
        while (accept_word("WHEN")) {
            e.children.push_back(parse_expr());
            expect_word("THEN");
            e.children.push_back(parse_expr());
        }
        if (accept_word("ELSE")) {
            e.case_else = true;
            e.children.push_back(parse_expr());
        }
        expect_word("END");
        return e;
    }

    std::string_view sql_;
    Dialect dialect_;
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace

bool is_reserved_word(std::string_view upper_word) { return contains(kReservedWords, upper_word); }

QueryTree parse(std::string_view sql, Dialect dialect) { return Parser(sql, dialect).parse_statement(); }

Expr parse_expression(std::string_view sql, Dialect dialect) {
    return Parser(sql, dialect).parse_standalone_expression();
}

std::vector<QueryTree> parse_script(std::string_view script, Dialect dialect) {
    std::vector<QueryTree> trees;
    for (const auto& stmt : split_statements(script)) trees.push_back(parse(stmt.text, dialect));
    return trees;
}

}  // namespace sqlcx
