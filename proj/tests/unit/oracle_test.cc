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

#include "oracle/oracle.h"
#include "sqlcx/parser.h"
#include "sqlcx/resolver.h"
#include "testkit/query_gen.h"
#include "testkit/testkit.h"

namespace sqlcx {
namespace {

void expect_matches_oracle(const QueryTree& tree, const std::string& label) {
    FeatureVector v = feature_vector(tree);
    oracle::OracleFeatures o = oracle::extract(tree);
    for (const auto& [name, items] : testkit::bag_items(v)) EXPECT_EQ(items, o.bags[name]) << label << " " << name;
    EXPECT_EQ(v.cte_count, o.cte_count) << label;
    EXPECT_EQ(v.subquery_count, o.subquery_count) << label;
    EXPECT_EQ(v.func_expr_count, o.func_expr_count) << label;
}

TEST(OracleCases, AtLeastTwentyHandAnalyzed) { EXPECT_GE(testkit::oracle_cases().size(), 20u); }

TEST(OracleCases, ExtractorMatchesHandAnalysis) {
    for (const auto& c : testkit::oracle_cases()) {
        FeatureVector v = testkit::analyze(c.sql, testkit::oracle_catalog());
        auto got = testkit::bag_items(v);
        for (const auto& [name, items] : got) {
            auto it = c.expected.find(name);
            EXPECT_EQ(items, it == c.expected.end() ? std::vector<std::string>{} : it->second) << c.id << " " << name;
        }
        auto count = [&](const char* k) { return c.counts.count(k) ? c.counts.at(k) : 0; };
        EXPECT_EQ(v.cte_count, count("cte_count")) << c.id;
        EXPECT_EQ(v.subquery_count, count("subquery_count")) << c.id;
        EXPECT_EQ(v.func_expr_count, count("func_expr_count")) << c.id;
    }
}

TEST(OracleCases, OracleMatchesHandAnalysis) {
    for (const auto& c : testkit::oracle_cases()) {
        oracle::OracleFeatures o = oracle::extract(resolve(parse(c.sql), testkit::oracle_catalog()));
        for (const auto& [name, items] : c.expected) EXPECT_EQ(o.bags[name], items) << c.id << " " << name;
    }
}

TEST(OracleCases, ExtractorMatchesOracle) {
    for (const auto& c : testkit::oracle_cases())
        expect_matches_oracle(resolve(parse(c.sql), testkit::oracle_catalog()), c.id);
}

TEST(OracleGenerated, ExtractorMatchesOracleOnGeneratedQueries) {
    SchemaCatalog cat = ingest_ddl(testkit::kGeneratorSchema);
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        auto g = testkit::generate_query(seed);
        expect_matches_oracle(resolve(parse(g.sql), cat), "seed " + std::to_string(seed));
    }
}

}  // namespace
}  // namespace sqlcx
