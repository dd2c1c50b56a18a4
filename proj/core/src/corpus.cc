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

#include "sqlcx/corpus.h"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "sqlcx/csv.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

constexpr std::array<Metric, kMetricCount> kMetrics = {Metric::kWherePreds, Metric::kCtes,       Metric::kColumns,
                                                       Metric::kFuncExprs,  Metric::kSubqueries, Metric::kJoins};

constexpr std::array<const char*, kMetricCount> kMetricNames = {
    "where_preds", "ctes", "columns(all-positions)", "func_exprs", "subqueries", "joins"};

std::vector<Metric> or_default(const std::vector<Metric>& metrics) {
    if (!metrics.empty()) return metrics;
    return {kMetrics.begin(), kMetrics.end()};
}

std::vector<const CorpusStats*> by_name(const std::vector<CorpusStats>& stats) {
    std::vector<const CorpusStats*> out;
    for (const auto& s : stats) out.push_back(&s);
    std::stable_sort(out.begin(), out.end(), [](const auto* a, const auto* b) { return a->corpus < b->corpus; });
    return out;
}

}  // namespace

const std::array<Metric, kMetricCount>& all_metrics() { return kMetrics; }

std::string_view metric_name(Metric metric) { return kMetricNames[static_cast<size_t>(metric)]; }

std::optional<Metric> metric_from_name(std::string_view name) {
    if (name == "columns") return Metric::kColumns;
    for (size_t i = 0; i < kMetricCount; ++i)
        if (name == kMetricNames[i]) return kMetrics[i];
    return std::nullopt;
}

std::vector<Metric> parse_metric_list(std::string_view list) {
    std::vector<Metric> out;
    for (const auto& part : split(list, ',')) {
        std::string_view name = trim(part);
        if (name.empty()) continue;
        auto m = metric_from_name(name);
        if (!m) throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    return out;
}

int metric_value(const FeatureVector& f, Metric metric) {
    switch (metric) {
        case Metric::kWherePreds:
            return static_cast<int>(f.cardinality(BagFeature::kWherePreds));
        case Metric::kCtes:
            return f.cte_count;
        case Metric::kColumns:
            return static_cast<int>(f.cardinality(BagFeature::kColsAll));
        case Metric::kFuncExprs:
            return f.func_expr_count;
        case Metric::kSubqueries:
            return f.subquery_count;
        case Metric::kJoins:
            return static_cast<int>(f.cardinality(BagFeature::kJoinPairs));
    }
    return 0;
}

CorpusStats corpus_stats(const std::vector<FeatureVector>& queries, std::string corpus,
                         const std::vector<Metric>& metrics) {
    CorpusStats stats;
    stats.corpus = std::move(corpus);
    stats.metrics = or_default(metrics);
    stats.n_queries = static_cast<int>(queries.size());
    for (Metric m : stats.metrics) {
        auto& hist = stats.histogram[m];
        long long total = 0;
        for (const auto& q : queries) {
            int v = metric_value(q, m);
            ++hist[v];
            total += v;
        }
        stats.mean[m] = queries.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(queries.size());
    }
    return stats;
}

NormalizedMeans normalize_means(const std::vector<CorpusStats>& stats, const std::string& baseline) {
    const CorpusStats* base = nullptr;
    for (const auto& s : stats)
        if (s.corpus == baseline) base = &s;
    if (!base) throw std::invalid_argument("baseline corpus '" + baseline + "' not found");
    NormalizedMeans out;
    out.baseline = baseline;
    for (Metric m : base->metrics) {
        auto it = base->mean.find(m);
        if (it == base->mean.end() || it->second == 0.0) {
            out.dropped.push_back(m);
            out.warnings.push_back("ZeroBaseline(" + std::string(metric_name(m)) + "): baseline '" + baseline +
                                   "' has mean 0; metric dropped");
            continue;
        }
        out.metrics.push_back(m);
    }
    for (const auto& s : stats) {
        auto& row = out.per_corpus[s.corpus];
        for (Metric m : out.metrics) {
            auto it = s.mean.find(m);
            if (it == s.mean.end()) continue;
            row[m] = it->second / base->mean.at(m);
        }
    }
    return out;
}

std::string histogram_csv(const std::vector<CorpusStats>& stats, Metric metric) {
    CsvWriter csv({"corpus", "count_value", "frequency"});
    for (const auto* s : by_name(stats)) {
        auto it = s->histogram.find(metric);
        if (it == s->histogram.end()) continue;
        for (const auto& [value, freq] : it->second)
            csv.add_row({s->corpus, std::to_string(value), std::to_string(freq)});
    }
    return csv.str();
}

std::string means_csv(const std::vector<CorpusStats>& stats) {
    std::vector<Metric> metrics;
    for (const auto& s : stats)
        for (Metric m : s.metrics)
            if (std::find(metrics.begin(), metrics.end(), m) == metrics.end()) metrics.push_back(m);
    std::sort(metrics.begin(), metrics.end());
    std::vector<std::string> header{"corpus", "n_queries", "skipped"};
    for (Metric m : metrics) header.emplace_back(metric_name(m));
    CsvWriter csv(header);
    for (const auto* s : by_name(stats)) {
        std::vector<std::string> row{s->corpus, std::to_string(s->n_queries), std::to_string(s->skipped.size())};
        for (Metric m : metrics) {
            auto it = s->mean.find(m);
            row.push_back(it == s->mean.end() ? "" : format_fixed(it->second));
        }
        csv.add_row(row);
    }
    return csv.str();
}

std::vector<CorpusStats> read_means_csv(std::string_view text) {
    CsvTable table = parse_csv(text);
    int corpus_col = table.column("corpus");
    if (corpus_col < 0) throw std::runtime_error("means csv: missing 'corpus' column");
    std::vector<std::pair<int, Metric>> metric_cols;
    for (size_t i = 0; i < table.header.size(); ++i)
        if (auto m = metric_from_name(table.header[i])) metric_cols.emplace_back(static_cast<int>(i), *m);
    int n_col = table.column("n_queries");
    std::vector<CorpusStats> out;
    for (const auto& row : table.rows) {
        CorpusStats s;
        s.corpus = row[corpus_col];
        if (n_col >= 0 && !row[n_col].empty()) s.n_queries = std::stoi(row[n_col]);
        for (const auto& [col, m] : metric_cols) {
            if (row[col].empty()) continue;
            s.metrics.push_back(m);
            s.mean[m] = std::stod(row[col]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string normalized_csv(const NormalizedMeans& means) {
    std::vector<std::string> header{"corpus"};
    for (Metric m : means.metrics) header.emplace_back(metric_name(m));
    CsvWriter csv(header);
    for (const auto& [corpus, values] : means.per_corpus) {
        std::vector<std::string> row{corpus};
        for (Metric m : means.metrics) {
            auto it = values.find(m);
            row.push_back(it == values.end() ? "" : format_fixed(it->second));
        }
        csv.add_row(row);
    }
    return csv.str();
}

std::string normalized_json(const NormalizedMeans& means) {
    nlohmann::ordered_json doc;
    doc["baseline"] = means.baseline;
    std::vector<std::string> names;
    for (Metric m : means.metrics) names.emplace_back(metric_name(m));
    doc["metrics"] = names;
    nlohmann::ordered_json corpora = nlohmann::ordered_json::object();
    for (const auto& [corpus, values] : means.per_corpus) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (Metric m : means.metrics) {
            auto it = values.find(m);
            if (it != values.end()) row[std::string(metric_name(m))] = it->second;
        }
        corpora[corpus] = std::move(row);
    }
    doc["per_corpus"] = std::move(corpora);
    std::vector<std::string> dropped;
    for (Metric m : means.dropped) dropped.emplace_back(metric_name(m));
    doc["dropped"] = dropped;
    doc["warnings"] = means.warnings;
    return doc.dump(2) + "\n";
}

}  // namespace sqlcx
