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


// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.h"
#include "oracle/oracle.h"
#include "sqlcx/corpus.h"
#include "sqlcx/harness.h"
#include "sqlcx/io.h"
#include "sqlcx/parser.h"
#include "sqlcx/resolver.h"
#include "sqlcx/similarity.h"
#include "sqlcx/strings.h"
#include "testkit/query_gen.h"
#include "testkit/testkit.h"

namespace sqlcx {
namespace {

namespace fs = std::filesystem;

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail = what;
        pass = false;
    }
};

// ---------------------------------------------------------------------------

Outcome parse_totality() {
    Outcome o;
    auto queries = testkit::tpcds_queries();
    o.check(queries.size() == 99, "expected 99 queries, found " + std::to_string(queries.size()));
    auto start = std::chrono::steady_clock::now();
    int ok = 0;
    for (const auto& q : queries) {
        try {
            resolve(parse(q.sql), testkit::tpcds_catalog());
            ++ok;
        } catch (const std::exception& e) {
            o.check(false, q.id + ": " + e.what());
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs < 10.0, "took " + format_fixed(secs, 3) + " s");
    if (o.pass) o.detail = std::to_string(ok) + "/99 in " + format_fixed(secs, 3) + " s";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    auto cases = testkit::oracle_cases();
    o.check(cases.size() >= 20, "only " + std::to_string(cases.size()) + " cases");
    for (const auto& c : cases) {
        try {
            QueryTree tree = resolve(parse(c.sql), testkit::oracle_catalog());
            FeatureVector v = feature_vector(tree);
            oracle::OracleFeatures orc = oracle::extract(tree);
            for (const auto& [name, items] : testkit::bag_items(v)) {
                auto it = c.expected.find(name);
                std::vector<std::string> hand = it == c.expected.end() ? std::vector<std::string>{} : it->second;
                o.check(items == orc.bags[name], c.id + " " + name + " differs from oracle");
                o.check(items == hand, c.id + " " + name + " differs from hand analysis");
            }
            auto count = [&](const char* k) { return c.counts.count(k) ? c.counts.at(k) : 0; };
            o.check(v.cte_count == orc.cte_count && v.cte_count == count("cte_count"), c.id + " cte_count");
            o.check(v.subquery_count == orc.subquery_count && v.subquery_count == count("subquery_count"),
                    c.id + " subquery_count");
            o.check(v.func_expr_count == orc.func_expr_count && v.func_expr_count == count("func_expr_count"),
                    c.id + " func_expr_count");
        } catch (const std::exception& e) {
            o.check(false, c.id + ": " + e.what());
        }
    }
    if (o.pass) o.detail = std::to_string(cases.size()) + " cases, all features exact";
    return o;
}

Outcome properties() {
    Outcome o;
    const SchemaCatalog cat = ingest_ddl(testkit::kGeneratorSchema);
    constexpr uint64_t kQueries = 1000;
    int conjunctions = 0;
    uint64_t seed = 0;
    for (; seed < kQueries || conjunctions < 1000; ++seed) {
        std::string tag = "seed " + std::to_string(seed) + ": ";
        try {
            auto g = testkit::generate_query(seed);
            QueryTree tree = resolve(parse(g.sql), cat);
            FeatureVector whole = feature_vector(tree);
            if (g.conjunction_k >= 0) {
                ++conjunctions;
                o.check(whole.cardinality(BagFeature::kWherePreds) == static_cast<size_t>(g.conjunction_k),
                        tag + "conjunction count");
            }
            if (seed >= kQueries) continue;
            for (const QueryNode* sub : enumerate_subqueries(tree)) {
                FeatureVector part = feature_vector_of(tree, *sub);
                for (BagFeature f : all_bag_features())
                    o.check(part.bag(f).subset_of(whole.bag(f)), tag + "monotone union " + std::string(feature_name(f)));
            }
            for (BagFeature f : all_bag_features())
                o.check(whole.cardinality(f) == whole.bag(f).sorted().size(), tag + "F# != |F|");
            o.check(testkit::analyze(testkit::generate_query(seed, {.rename_aliases = true}).sql, cat) == whole,
                    tag + "alias invariance");
            o.check(testkit::analyze(testkit::generate_query(seed, {.reformat = true, .format_seed = seed + 1}).sql,
                                     cat) == whole,
                    tag + "whitespace invariance");
            o.check(testkit::analyze(testkit::generate_query(seed, {.swap_sides = true}).sql, cat)
                            .bag(BagFeature::kJoinPairs) == whole.bag(BagFeature::kJoinPairs),
                    tag + "join symmetry");
        } catch (const std::exception& e) {
            o.check(false, tag + e.what());
        }
    }
    if (o.pass)
        o.detail = std::to_string(kQueries) + " queries; conjunction count on " + std::to_string(conjunctions) +
                   " pure conjunctions";
    return o;
}

Outcome jaccard_suite() {
    Outcome o;
    o.check(jaccard(Bag{"a", "b", "c"}, Bag{"b", "c", "d"}) == 0.5, "{a,b,c} vs {b,c,d} != 0.5");
    o.check(jaccard(Bag{}, Bag{}) == 1.0, "both-empty != 1.0");
    const SchemaCatalog& cat = testkit::tpcds_catalog();
    std::vector<FeatureVector> fvs;
    for (const auto& q : testkit::tpcds_queries()) fvs.push_back(testkit::analyze(q.sql, cat));
    for (size_t i = 0; i < fvs.size(); ++i) {
        SimilarityReport self = compare(fvs[i], fvs[i]);
        for (const auto& [f, s] : self.per_feature) o.check(s == 1.0, "identity below 1.0");
        for (size_t j = 0; j < fvs.size(); ++j) {
            for (BagFeature f : all_bag_features()) {
                double ij = jaccard(fvs[i].bag(f), fvs[j].bag(f));
                o.check(ij == jaccard(fvs[j].bag(f), fvs[i].bag(f)), "asymmetric");
                o.check(ij >= 0.0 && ij <= 1.0, "out of range");
            }
        }
    }
    if (o.pass) o.detail = "symmetry/range/identity over 99x99 TPC-DS pairs; 0.5 and both-empty exact";
    return o;
}

Outcome corpus_reproduction() {
    Outcome o;
    auto stats_of = [](const std::vector<testkit::NamedQuery>& qs, const SchemaCatalog& cat, const std::string& name) {
        std::vector<FeatureVector> fvs;
        for (const auto& q : qs) fvs.push_back(testkit::analyze(q.sql, cat));
        return corpus_stats(fvs, name);
    };
    auto sample_queries = testkit::spider_sample_queries();
    o.check(sample_queries.size() >= 50, "sample has " + std::to_string(sample_queries.size()) + " queries");
    CorpusStats tpcds = stats_of(testkit::tpcds_queries(), testkit::tpcds_catalog(), "tpcds");
    CorpusStats sample = stats_of(sample_queries, testkit::spider_sample_catalog(), "sample");
    // Normalized against TPC-DS, so "TPC-DS >= 2x" means the sample is at most 0.5.
    NormalizedMeans norm = normalize_means({tpcds, sample}, "tpcds");
    int held = 0;
    std::string ratios;
    for (Metric m : all_metrics()) {
        double t = tpcds.mean[m], s = sample.mean[m];
        bool ok = t > 0 && t >= 2.0 * s;
        held += ok;
        ratios += std::string(ratios.empty() ? "" : ", ") + std::string(metric_name(m)) + "=" +
                  (s > 0 ? format_fixed(t / s, 1) + "x" : "inf");
        if (norm.per_corpus["sample"].count(m)) o.check(norm.per_corpus["sample"][m] <= 0.5 || !ok, "normalization");
    }
    o.check(held >= 5, std::to_string(held) + "/6 metrics at >=2x (" + ratios + ")");
    if (o.pass) o.detail = std::to_string(held) + "/6 metrics at >=2x (" + ratios + ")";
    return o;
}

Outcome harness_protocol() {
    Outcome o;
    const std::string ddl = "CREATE TABLE t (a INTEGER);";
    PromptBundle prompts = build_prompts(ddl, "q");
    std::string first_json;
    for (int run = 0; run < 2; ++run) {
        ScriptedLlm always_bad(std::vector<std::string>{"SELECT bad"});
        MockValidator reject_all([](const std::string&) { return ValidationResult::rejected("rejected"); });
        GenerationRecord a = generate_with_retry(always_bad, reject_all, prompts, 3, {}, "a");
        o.check(a.attempts.size() == 4 && !a.success, "(a) invalid x4 did not give 4 failed attempts");

        ScriptedLlm bad_then_good(std::vector<std::string>{"SELECT bad", "SELECT good"});
        const std::string error = "column \"bad\" does not exist";
        MockValidator v = MockValidator::rejecting({{"SELECT bad", error}});
        GenerationRecord b = generate_with_retry(bad_then_good, v, prompts, 3, {}, "b");
        o.check(b.attempts.size() == 2 && b.success, "(b) invalid-then-valid did not give 2 attempts");
        o.check(b.transcript.size() == 5 && b.transcript[3].content.find(error) != std::string::npos,
                "(b) repair prompt lacks the verbatim error");

        std::vector<GenerationRecord> records(99);
        for (int i = 0; i < 99; ++i) {
            records[i].model = "gpt-4";
            records[i].success = i < 94;
        }
        SuccessTable table = success_table(records);
        o.check(table.rows.size() == 1 && table.rows[0].render() == "94 out of 99", "(c) success table rendering");

        std::string json = generation_record_json(a) + generation_record_json(b) + table.to_csv();
        if (run == 0) first_json = json;
        else o.check(json == first_json, "outputs differ between runs");
    }
    if (o.pass) o.detail = "4 attempts; 2 attempts with verbatim error; \"94 out of 99\"; byte-identical";
    return o;
}

Outcome cli_determinism() {
    Outcome o;
    fs::path tmp = fs::temp_directory_path() / "sqlcx_acceptance_cli";
    fs::remove_all(tmp);
    std::string tq = (testkit::fixture_dir() / "tpcds" / "queries").string();
    std::string tddl = (testkit::fixture_dir() / "tpcds" / "schema.sql").string();
    std::string pair_a = (testkit::fixture_dir() / "tpcds" / "queries" / "query42.sql").string();
    std::string pair_b = (testkit::fixture_dir() / "tpcds" / "queries" / "query52.sql").string();
    std::vector<std::vector<std::string>> commands = {
        {"analyze", tq, "--ddl", tddl},
        {"compare", pair_a, pair_b, "--ddl", tddl},
        {"corpus-stats", tq, "--ddl", tddl, "--corpus", "tpcds"},
        {"corpus-stats", tq, "--ddl", tddl, "--corpus", "tpcds", "--out", (tmp / "stats").string()},
    };
    auto snapshot = [&](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        std::string files;
        if (fs::exists(tmp / "stats"))
            for (const auto& e : fs::directory_iterator(tmp / "stats")) files += read_file(e.path());
        return std::to_string(code) + out.str() + files;
    };
    for (const auto& args : commands) {
        std::string first = snapshot(args);
        o.check(first[0] == '0', args[0] + " failed");
        for (int i = 0; i < 2; ++i) o.check(snapshot(args) == first, args[0] + " output differs between runs");
    }
    fs::remove_all(tmp);
    if (o.pass) o.detail = "analyze, compare, corpus-stats byte-identical over 3 runs";
    return o;
}

}  // namespace
}  // namespace sqlcx

int main() {
    using namespace sqlcx;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"parse totality (99 TPC-DS queries, < 10 s)", parse_totality},
        {"oracle equivalence (>= 20 hand-analyzed queries)", oracle_equivalence},
        {"feature properties (>= 1000 generated queries)", properties},
        {"Jaccard suite", jaccard_suite},
        {"TPC-DS vs Spider-style sample (>= 2x on >= 5 of 6 metrics)", corpus_reproduction},
        {"harness protocol", harness_protocol},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
