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

#include "sqlcx/similarity.h"

#include <algorithm>

#include "sqlcx/csv.h"
#include "sqlcx/errors.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

std::vector<BagFeature> or_default(const std::vector<BagFeature>& features) {
    if (!features.empty()) return features;
    const auto& all = all_bag_features();
    return {all.begin(), all.end()};
}

}  // namespace

double jaccard(const Bag& a, const Bag& b) {
    if (a.empty() && b.empty()) return 1.0;
    size_t inter = 0, uni = 0;
    auto ia = a.items().begin(), ib = b.items().begin();
    while (ia != a.items().end() || ib != b.items().end()) {
        if (ib == b.items().end() || (ia != a.items().end() && ia->first < ib->first)) {
            uni += static_cast<size_t>(ia->second);
            ++ia;
        } else if (ia == a.items().end() || ib->first < ia->first) {
            uni += static_cast<size_t>(ib->second);
            ++ib;
        } else {
            inter += static_cast<size_t>(std::min(ia->second, ib->second));
            uni += static_cast<size_t>(std::max(ia->second, ib->second));
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    Bag ba, bb;
    for (const auto& x : a) ba.add(x);
    for (const auto& x : b) bb.add(x);
    return jaccard(ba, bb);
}

double SimilarityReport::get(BagFeature f) const {
    for (const auto& [feature, value] : per_feature)
        if (feature == f) return value;
    return -1.0;
}

SimilarityReport compare(const FeatureVector& generated, const FeatureVector& gold, std::string query_id,
                         const std::vector<BagFeature>& features) {
    SimilarityReport report;
    report.query_id = std::move(query_id);
    for (BagFeature f : or_default(features)) report.per_feature.emplace_back(f, jaccard(generated.bag(f), gold.bag(f)));
    return report;
}

SimilarityReport failed_report(std::string query_id, const std::vector<BagFeature>& features) {
    SimilarityReport report;
    report.query_id = std::move(query_id);
    report.generated_parsed = false;
    for (BagFeature f : or_default(features)) report.per_feature.emplace_back(f, 0.0);
    return report;
}

std::string_view failure_policy_name(FailurePolicy policy) {
    return policy == FailurePolicy::kExclude ? "exclude" : "zero";
}

ModelSimilaritySummary summarize(const std::vector<SimilarityReport>& reports, std::string model,
                                 FailurePolicy policy, bool require_nonempty) {
    ModelSimilaritySummary summary;
    summary.model = std::move(model);
    summary.policy = policy;
    std::vector<BagFeature> features;
    if (!reports.empty()) {
        for (const auto& [f, v] : reports.front().per_feature) features.push_back(f);
    } else {
        features = or_default({});
    }
    std::vector<double> sums(features.size(), 0.0);
    for (const auto& r : reports) {
        if (!r.generated_parsed) {
            ++summary.n_failed;
            if (policy == FailurePolicy::kExclude) continue;
        }
        ++summary.n_compared;
        for (size_t i = 0; i < features.size(); ++i) {
            double v = r.generated_parsed ? r.get(features[i]) : 0.0;
            sums[i] += v < 0 ? 0.0 : v;
        }
    }
    if (summary.n_compared == 0 && require_nonempty) throw EmptyInput("no similarity reports to summarize");
    for (size_t i = 0; i < features.size(); ++i)
        summary.per_feature_mean.emplace_back(features[i],
                                              summary.n_compared ? sums[i] / summary.n_compared : 0.0);
    return summary;
}

std::string similarity_csv(const std::vector<SimilarityReport>& reports, const ModelSimilaritySummary& summary) {
    std::vector<std::string> header{"query_id"};
    for (const auto& [f, v] : summary.per_feature_mean) header.emplace_back(feature_name(f));
    header.emplace_back("status");
    CsvWriter csv(header);
    std::vector<const SimilarityReport*> sorted;
    for (const auto& r : reports) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto* a, const auto* b) { return a->query_id < b->query_id; });
    for (const auto* r : sorted) {
        std::vector<std::string> row{r->query_id};
        for (const auto& [f, mean] : summary.per_feature_mean)
            row.push_back(r->generated_parsed ? format_fixed(r->get(f)) : "");
        row.emplace_back(r->generated_parsed ? "ok" : "parse_error");
        csv.add_row(row);
    }
    std::vector<std::string> mean_row{"mean"};
    for (const auto& [f, mean] : summary.per_feature_mean) mean_row.push_back(format_fixed(mean));
    mean_row.push_back("n=" + std::to_string(summary.n_compared));
    csv.add_row(mean_row);
    return csv.str();
}

}  // namespace sqlcx
