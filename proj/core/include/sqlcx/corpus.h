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

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlcx/features.h"

namespace sqlcx {

/// Per-query complexity metrics.
enum class Metric {
    kWherePreds,  ///< |where_preds|
    kCtes,        ///< cte_count
    kColumns,     ///< |cols_all|
    kFuncExprs,   ///< func_expr_count
    kSubqueries,  ///< subquery_count
    kJoins,       ///< |join_pairs|
};

inline constexpr size_t kMetricCount = 6;

const std::array<Metric, kMetricCount>& all_metrics();
/// "where_preds", "ctes", "columns(all-positions)", "func_exprs", "subqueries", "joins".
std::string_view metric_name(Metric metric);
/// Accepts the names above; "columns" is an alias for the column metric.
std::optional<Metric> metric_from_name(std::string_view name);
/// Parses a comma-separated metric list. Throws std::invalid_argument on unknown names.
std::vector<Metric> parse_metric_list(std::string_view list);

int metric_value(const FeatureVector& features, Metric metric);

struct SkippedQuery {
    std::string query_id;
    std::string reason;
};

struct CorpusStats {
    std::string corpus;
    std::vector<Metric> metrics;
    /// Exact integer bins: metric -> (count value -> frequency).
    std::map<Metric, std::map<int, int>> histogram;
    std::map<Metric, double> mean;
    int n_queries = 0;
    std::vector<SkippedQuery> skipped;
};

CorpusStats corpus_stats(const std::vector<FeatureVector>& queries, std::string corpus,
                         const std::vector<Metric>& metrics = {});

struct NormalizedMeans {
    std::string baseline;
    std::vector<Metric> metrics;
    /// corpus -> metric -> mean / baseline mean.
    std::map<std::string, std::map<Metric, double>> per_corpus;
    /// Metrics dropped because the baseline mean is zero.
    std::vector<Metric> dropped;
    std::vector<std::string> warnings;
};

/// Divides every corpus mean by the baseline corpus mean, metric-wise.
/// Throws std::invalid_argument if `baseline` is not among `stats`.
NormalizedMeans normalize_means(const std::vector<CorpusStats>& stats, const std::string& baseline);

/// `corpus,count_value,frequency`, sorted by corpus then count value.
std::string histogram_csv(const std::vector<CorpusStats>& stats, Metric metric);
/// `corpus,n_queries,skipped,<metric...>`, one row per corpus sorted by name.
std::string means_csv(const std::vector<CorpusStats>& stats);
/// Reads a means CSV back; histograms are left empty.
std::vector<CorpusStats> read_means_csv(std::string_view text);
/// `corpus,<metric...>` of normalized values, sorted by corpus.
std::string normalized_csv(const NormalizedMeans& means);
std::string normalized_json(const NormalizedMeans& means);

}  // namespace sqlcx
