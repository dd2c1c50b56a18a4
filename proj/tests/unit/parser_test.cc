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


#include <gtest/gtest.h>

#include "sqlcx/errors.h"
#include "sqlcx/lexer.h"
#include "sqlcx/parser.h"
#include "sqlcx/render.h"
#include "sqlcx/resolver.h"
#include "testkit/query_gen.h"
#include "testkit/testkit.h"

namespace sqlcx {
namespace {

std::vector<TokenType> types(std::string_view sql) {
    std::vector<TokenType> out;
    for (const auto& t : tokenize(sql)) out.push_back(t.type);
    return out;
}

TEST(Lexer, BasicTokens) {
    auto toks = tokenize("SELECT a, 'it''s' FROM t WHERE x >= 1.5;");
    ASSERT_EQ(toks.size(), 12u);
    EXPECT_TRUE(toks[0].is_word("SELECT"));
    EXPECT_EQ(toks[3].type, TokenType::kString);
    EXPECT_EQ(toks[3].text, "'it''s'");
    EXPECT_TRUE(toks[8].is_op(">="));
    EXPECT_EQ(toks[9].type, TokenType::kNumber);
    EXPECT_EQ(toks[10].type, TokenType::kSemicolon);
    EXPECT_EQ(toks.back().type, TokenType::kEnd);
}

TEST(Lexer, OffsetsAreByteOffsets) {
    auto toks = tokenize("  select\n  col");
    EXPECT_EQ(toks[0].offset, 2u);
    EXPECT_EQ(toks[1].offset, 11u);
}

TEST(Lexer, CommentsDropped) {
    EXPECT_EQ(types("a -- tail\n/* block */ b"), types("a b"));
}

TEST(Lexer, QuotedIdentifierUnescaped) {
    auto toks = tokenize(R"("My ""Col""")");
    ASSERT_EQ(toks[0].type, TokenType::kQuotedIdent);
    EXPECT_EQ(toks[0].text, "My \"Col\"");
}

TEST(Lexer, UnterminatedStringReportsOffset) {
    try {
        tokenize("SELECT 'abc");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.offset(), 7u);
    }
}

TEST(Lexer, SplitStatementsIgnoresQuotedSemicolons) {
    auto parts = split_statements("SELECT ';' ; -- x;\nSELECT 2;;");
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].text, "SELECT ';'");
    EXPECT_EQ(parts[0].offset, 0u);
}

TEST(Lexer, StripCommentsKeepsLiterals) {
    EXPECT_EQ(strip_comments("SELECT '--not' -- gone\n"), "SELECT '--not'  \n");
}

TEST(Parser, SimpleSelect) {
    QueryTree tree = parse("SELECT a, b AS bee FROM t WHERE a > 1 GROUP BY a HAVING COUNT(*) > 2 ORDER BY 1 LIMIT 3");
    const QueryNode& n = tree.root;
    ASSERT_EQ(n.select.size(), 2u);
    EXPECT_EQ(n.select[1].alias.name, "bee");
    ASSERT_EQ(n.from.size(), 1u);
    EXPECT_EQ(n.from[0].table_name().name, "t");
    EXPECT_TRUE(n.where.has_value());
    EXPECT_EQ(n.group_by.size(), 1u);
    EXPECT_TRUE(n.having.has_value());
    EXPECT_EQ(n.order_by.size(), 1u);
    EXPECT_TRUE(n.limit.has_value());
}

TEST(Parser, IdentifiersCaseFoldedUnlessQuoted) {
    QueryTree tree = parse(R"(SELECT MyCol, "MyCol" FROM T)");
    EXPECT_EQ(tree.root.select[0].expr.column.name, "mycol");
    EXPECT_EQ(tree.root.select[1].expr.column.name, "MyCol");
    EXPECT_TRUE(tree.root.select[1].expr.column.quoted);
}

TEST(Parser, OperatorPrecedence) {
    Expr e = parse_expression("a OR b AND NOT c = 1 + 2 * 3");
    ASSERT_EQ(e.kind, ExprKind::kBinary);
    EXPECT_EQ(e.text, "OR");
    EXPECT_EQ(e.children[1].text, "AND");
    EXPECT_EQ(render_sql(e), render_sql(parse_expression("a OR (b AND (NOT (c = (1 + (2 * 3)))))")));
}

TEST(Parser, CtesSetOpsAndSubqueries) {
    QueryTree tree = parse(
        "WITH x AS (SELECT a FROM t) SELECT a FROM x WHERE a IN (SELECT b FROM u) "
        "UNION ALL SELECT c FROM v ORDER BY 1");
    EXPECT_EQ(tree.cte_defs().size(), 1u);
    ASSERT_EQ(tree.root.set_ops.size(), 1u);
    EXPECT_TRUE(tree.root.set_ops[0].all);
    EXPECT_EQ(tree.node_count(), 4u);
    EXPECT_EQ(enumerate_subqueries(tree).size(), 3u);
}

TEST(Parser, JoinsAndDerivedTables) {
    QueryTree tree =
        parse("SELECT * FROM a LEFT OUTER JOIN b USING (k) CROSS JOIN (SELECT 1 AS one) d NATURAL JOIN c");
    ASSERT_EQ(tree.root.from.size(), 1u);
    const TableRef& top = tree.root.from[0];
    EXPECT_EQ(top.kind, TableRefKind::kJoin);
    EXPECT_TRUE(top.natural);
}

TEST(Parser, PostgresExtensions) {
    EXPECT_NO_THROW(parse("SELECT DISTINCT ON (a) a::text, b ILIKE 'x%' FROM t"));
    EXPECT_NO_THROW(parse("SELECT SUM(a) FILTER (WHERE b > 0) OVER (PARTITION BY c ORDER BY d) FROM t"));
    EXPECT_NO_THROW(parse("SELECT d + INTERVAL '30' DAY, CAST('2000-01-01' AS DATE) FROM t"));
    EXPECT_NO_THROW(parse("SELECT a FROM t GROUP BY ROLLUP (a, b)"));
}

TEST(Parser, ParenthesizedScalarSubqueryComparison) {
    QueryTree tree = parse("SELECT a FROM t WHERE ((SELECT COUNT(*) FROM u) > 0)");
    ASSERT_TRUE(tree.root.where.has_value());
    EXPECT_EQ(tree.root.where->kind, ExprKind::kBinary);
    EXPECT_EQ(tree.root.where->children[0].kind, ExprKind::kSubquery);
    // A parenthesized query operand still parses as a query.
    EXPECT_EQ(parse("SELECT a FROM t WHERE a IN ((SELECT b FROM u) UNION (SELECT k FROM u))").node_count(), 3u);
}

TEST(Parser, SqliteBacktickIdentifiers) {
    QueryTree tree = parse("SELECT `Col` FROM `T`", Dialect::kSqlite);
    EXPECT_EQ(tree.root.select[0].expr.column.name, "Col");
}

TEST(Parser, SyntaxErrorOffset) {
    try {
        parse("SELECT a FROM t WHERE");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.offset(), 21u);
    }
    try {
        parse("SELECT a, FROM t");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.offset(), 10u);
        EXPECT_EQ(e.found(), "FROM");
    }
}

TEST(Parser, RejectsUnsupportedStatements) {
    EXPECT_THROW(parse("DELETE FROM t"), UnsupportedConstruct);
    EXPECT_THROW(parse("INSERT INTO t VALUES (1)"), UnsupportedConstruct);
    EXPECT_THROW(parse("CREATE TABLE t (a INT)"), UnsupportedConstruct);
}

TEST(Parser, RejectsMultipleStatements) {
    try {
        parse("SELECT 1; SELECT 2");
        FAIL() << "expected MultipleStatements";
    } catch (const MultipleStatements& e) {
        EXPECT_EQ(e.offset(), 10u);
    }
    EXPECT_NO_THROW(parse("SELECT 1;"));
}

TEST(Parser, ScriptParsesEveryStatement) {
    EXPECT_EQ(parse_script("SELECT 1; SELECT a FROM t;\n-- done\n").size(), 2u);
}

TEST(Parser, EmptyInputIsAnError) {
    EXPECT_THROW(parse(""), SyntaxError);
    EXPECT_THROW(parse("   -- only a comment"), SyntaxError);
}

TEST(Render, NormalizeNumber) {
    EXPECT_EQ(normalize_number("007.50"), "7.5");
    EXPECT_EQ(normalize_number("+3"), "3");
    EXPECT_EQ(normalize_number("10"), "10");
    EXPECT_EQ(normalize_number("0.0"), "0");
    EXPECT_EQ(normalize_number("1e3"), "1e3");
}

TEST(Render, RoundTripIsStructurallyEqual) {
    for (const char* sql : {
             "SELECT a AS x, COUNT(DISTINCT b) FROM t AS s (p, q) JOIN u ON s.p = u.k WHERE a BETWEEN 1 AND 2",
             "WITH RECURSIVE r (n) AS (SELECT 1 UNION ALL SELECT n + 1 FROM r WHERE n < 5) SELECT n FROM r",
             "SELECT CASE x WHEN 1 THEN 'a' ELSE 'b' END, EXTRACT(YEAR FROM d), TRIM(BOTH ' ' FROM s) FROM t",
             "SELECT a FROM t WHERE NOT EXISTS (SELECT 1 FROM u WHERE u.k = t.k) AND a NOT IN (1, 2)",
             "SELECT a FROM t EXCEPT (SELECT b FROM u ORDER BY 1 LIMIT 2) ORDER BY 1 DESC NULLS LAST",
         }) {
        QueryTree tree = parse(sql);
        std::string text = render_sql(tree);
        EXPECT_EQ(parse(text), tree) << text;
        EXPECT_EQ(render_sql(parse(text)), text);
    }
}

TEST(Render, RoundTripOverTpcds) {
    for (const auto& q : testkit::tpcds_queries()) {
        QueryTree tree = parse(q.sql);
        std::string text = render_sql(tree);
        EXPECT_EQ(parse(text), tree) << q.id;
    }
}

TEST(Render, RoundTripOverGeneratedQueries) {
    for (uint64_t seed = 0; seed < 300; ++seed) {
        auto g = testkit::generate_query(seed, {.rename_aliases = false, .reformat = true, .format_seed = seed});
        QueryTree tree = parse(g.sql);
        EXPECT_EQ(parse(render_sql(tree)), tree) << g.sql;
    }
}

TEST(Render, CanonicalDropsAliasesAndInlinesCtes) {
    SchemaCatalog cat = ingest_ddl("CREATE TABLE t (a INT, b INT);");
    QueryTree tree = resolve(parse("WITH x AS (SELECT a AS z FROM t WHERE b > 01.0) SELECT q.z FROM x q"), cat);
    CanonicalRenderer canon(tree);
    EXPECT_EQ(canon.node(tree.root), "SELECT t.a FROM (SELECT t.a FROM t WHERE t.b > 1)");
}

}  // namespace
}  // namespace sqlcx
