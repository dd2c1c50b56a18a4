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

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sqlcx/features.h"

namespace sqlcx {

/// |a ∩ b| / |a ∪ b| with multiplicities (sum of minima over sum of maxima).
/// Two empty bags are identical and score 1.0.
double jaccard(const Bag& a, const Bag& b);
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct SimilarityReport {
    std::string query_id;
    /// False when the generated query could not be parsed; coefficients are then absent.
    bool generated_parsed = true;
    std::vector<std::pair<BagFeature, double>> per_feature;

    /// Coefficient for `f`, or -1 if `f` was not compared.
    double get(BagFeature f) const;
};

/// Feature-wise Jaccard over the configured features (default: all seven bags).
SimilarityReport compare(const FeatureVector& generated, const FeatureVector& gold, std::string query_id = {},
                         const std::vector<BagFeature>& features = {});

/// Report for a generation that produced no analyzable query.
SimilarityReport failed_report(std::string query_id, const std::vector<BagFeature>& features = {});

enum class FailurePolicy {
    kExclude,  ///< Failed generations do not enter the means.
    kZero,     ///< Failed generations count as 0.0 on every feature.
};

std::string_view failure_policy_name(FailurePolicy policy);

struct ModelSimilaritySummary {
    std::string model;
    std::vector<std::pair<BagFeature, double>> per_feature_mean;
    int n_compared = 0;
    int n_failed = 0;
    FailurePolicy policy = FailurePolicy::kExclude;
};

/// Arithmetic means over the reports that enter under `policy`.
///
/// Throws EmptyInput when no report enters and `require_nonempty` is set.
ModelSimilaritySummary summarize(const std::vector<SimilarityReport>& reports, std::string model,
                                 FailurePolicy policy = FailurePolicy::kExclude, bool require_nonempty = true);

/// CSV: header `query_id,<features...>,status`; one row per report sorted by
/// query_id; a final `mean` row whose status is `n=<n_compared>`.
std::string similarity_csv(const std::vector<SimilarityReport>& reports, const ModelSimilaritySummary& summary);

}  // namespace sqlcx
