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


#include "testkit.h"

#include <algorithm>

#include <json.hpp>

#include "sqlcx/io.h"
#include "sqlcx/parser.h"
#include "sqlcx/resolver.h"

namespace sqlcx::testkit {

namespace fs = std::filesystem;

fs::path fixture_dir() { return fs::path(SQLCX_FIXTURE_DIR); }

std::vector<NamedQuery> load_query_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".sql") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<NamedQuery> out;
    for (const auto& f : files) out.push_back({f.stem().string(), read_file(f)});
    return out;
}

std::vector<NamedQuery> tpcds_queries() { return load_query_dir(fixture_dir() / "tpcds" / "queries"); }

const SchemaCatalog& tpcds_catalog() {
    static const SchemaCatalog catalog = ingest_ddl(read_file(fixture_dir() / "tpcds" / "schema.sql"));
    return catalog;
}

std::vector<NamedQuery> spider_sample_queries() { return load_query_dir(fixture_dir() / "spider_sample" / "queries"); }

const SchemaCatalog& spider_sample_catalog() {
    static const SchemaCatalog catalog = ingest_ddl(read_file(fixture_dir() / "spider_sample" / "schema.sql"));
    return catalog;
}

FeatureVector analyze(const std::string& sql, const SchemaCatalog& catalog, bool multiset) {
    return feature_vector(resolve(parse(sql), catalog), FeatureOptions{multiset});
}

std::map<std::string, std::vector<std::string>> bag_items(const FeatureVector& features) {
    std::map<std::string, std::vector<std::string>> out;
    for (BagFeature f : all_bag_features()) out[std::string(feature_name(f))] = features.bag(f).sorted();
    return out;
}

std::vector<OracleCase> oracle_cases() {
    auto doc = nlohmann::json::parse(read_file(fixture_dir() / "oracle" / "cases.json"));
    std::vector<OracleCase> out;
    for (const auto& c : doc) {
        OracleCase oc;
        oc.id = c.at("id").get<std::string>();
        oc.sql = c.at("sql").get<std::string>();
        for (auto& [name, items] : c.at("expected").items()) oc.expected[name] = items.get<std::vector<std::string>>();
        for (auto& [name, value] : c.at("counts").items()) oc.counts[name] = value.get<int>();
        out.push_back(std::move(oc));
    }
    return out;
}

const SchemaCatalog& oracle_catalog() {
    static const SchemaCatalog catalog = ingest_ddl(read_file(fixture_dir() / "oracle" / "schema.sql"));
    return catalog;
}

}  // namespace sqlcx::testkit
