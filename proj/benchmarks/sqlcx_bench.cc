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


#include <benchmark/benchmark.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "sqlcx/catalog.h"
#include "sqlcx/features.h"
#include "sqlcx/io.h"
#include "sqlcx/parser.h"
#include "sqlcx/resolver.h"
#include "sqlcx/similarity.h"

namespace {

namespace fs = std::filesystem;

struct Corpus {
    sqlcx::SchemaCatalog catalog;
    std::vector<std::string> queries;
    std::vector<sqlcx::QueryTree> resolved;
    std::vector<sqlcx::FeatureVector> features;
};

const Corpus& tpcds() {
    static const Corpus corpus = [] {
        Corpus c;
        fs::path root = SQLCX_TPCDS_DIR;
        c.catalog = sqlcx::ingest_ddl(sqlcx::read_file(root / "schema.sql"));
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(root / "queries")) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            c.queries.push_back(sqlcx::read_file(f));
            c.resolved.push_back(sqlcx::resolve(sqlcx::parse(c.queries.back()), c.catalog));
            c.features.push_back(sqlcx::feature_vector(c.resolved.back()));
        }
        return c;
    }();
    return corpus;
}

void BM_ParseCorpus(benchmark::State& state) {
    const Corpus& c = tpcds();
    for (auto _ : state)
        for (const auto& q : c.queries) benchmark::DoNotOptimize(sqlcx::parse(q));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.queries.size()));
}
BENCHMARK(BM_ParseCorpus)->Unit(benchmark::kMillisecond);

void BM_ParseResolveCorpus(benchmark::State& state) {
    const Corpus& c = tpcds();
    for (auto _ : state)
        for (const auto& q : c.queries) benchmark::DoNotOptimize(sqlcx::resolve(sqlcx::parse(q), c.catalog));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.queries.size()));
}
BENCHMARK(BM_ParseResolveCorpus)->Unit(benchmark::kMillisecond);

void BM_FeatureVectorCorpus(benchmark::State& state) {
    const Corpus& c = tpcds();
    sqlcx::FeatureOptions options{.multiset = state.range(0) != 0};
    for (auto _ : state)
        for (const auto& t : c.resolved) benchmark::DoNotOptimize(sqlcx::feature_vector(t, options));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.resolved.size()));
}
BENCHMARK(BM_FeatureVectorCorpus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CompareAllPairs(benchmark::State& state) {
    const Corpus& c = tpcds();
    for (auto _ : state)
        for (const auto& a : c.features)
            for (const auto& b : c.features) benchmark::DoNotOptimize(sqlcx::compare(a, b));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.features.size() * c.features.size()));
}
BENCHMARK(BM_CompareAllPairs)->Unit(benchmark::kMillisecond);

void BM_JaccardBagSize(benchmark::State& state) {
    sqlcx::Bag a, b;
    for (int64_t i = 0; i < state.range(0); ++i) {
        a.add("t.c" + std::to_string(i));
        b.add("t.c" + std::to_string(i + state.range(0) / 2));
    }
    for (auto _ : state) benchmark::DoNotOptimize(sqlcx::jaccard(a, b));
}
BENCHMARK(BM_JaccardBagSize)->Range(8, 4096);

}  // namespace

BENCHMARK_MAIN();
