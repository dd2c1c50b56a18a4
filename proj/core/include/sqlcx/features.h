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

#include "sqlcx/ast.h"

namespace sqlcx {

/// Bag-valued features in their fixed reporting order.
enum class BagFeature {
    kColsSelect,
    kColsAll,
    kRelations,
    kWherePreds,
    kJoinPairs,
    kAggregations,
    kFunctions,
};

inline constexpr size_t kBagFeatureCount = 7;

const std::array<BagFeature, kBagFeatureCount>& all_bag_features();
std::string_view feature_name(BagFeature feature);
std::optional<BagFeature> feature_from_name(std::string_view name);

/// Canonical strings with multiplicities. In set mode every count is 1.
class Bag {
   public:
    Bag() = default;
    Bag(std::initializer_list<std::string> items);

    void add(const std::string& item, int count = 1);
    int count(const std::string& item) const;
    bool contains(const std::string& item) const { return count(item) > 0; }
    /// Total multiplicity (equals the number of distinct items in set mode).
    size_t size() const;
    size_t distinct() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    /// Sorted items; repeated `count` times each.
    std::vector<std::string> sorted() const;
    const std::map<std::string, int>& items() const { return items_; }
    /// Same items with every count clamped to 1.
    Bag as_set() const;
    /// True iff every item's multiplicity here is at most its multiplicity in `other`.
    bool subset_of(const Bag& other) const;

    bool operator==(const Bag&) const = default;

   private:
    std::map<std::string, int> items_;
};

struct FeatureOptions {
    /// Keep duplicate occurrences instead of deduplicating.
    bool multiset = false;
};

struct FeatureVector {
    std::array<Bag, kBagFeatureCount> bags;
    int cte_count = 0;
    int subquery_count = 0;
    int func_expr_count = 0;
    bool multiset = false;

    const Bag& bag(BagFeature f) const { return bags[static_cast<size_t>(f)]; }
    Bag& bag(BagFeature f) { return bags[static_cast<size_t>(f)]; }
    /// F# for a bag feature.
    size_t cardinality(BagFeature f) const { return bag(f).size(); }

    bool operator==(const FeatureVector&) const = default;
};

/// All features over a resolved tree (root and every subquery).
FeatureVector feature_vector(const QueryTree& tree, const FeatureOptions& options = {});

/// Features restricted to `node` and its descendants. `node` must belong to `tree`.
FeatureVector feature_vector_of(const QueryTree& tree, const QueryNode& node, const FeatureOptions& options = {});

Bag extract_select_columns(const QueryTree& tree, const FeatureOptions& options = {});
Bag extract_all_columns(const QueryTree& tree, const FeatureOptions& options = {});
Bag extract_relations(const QueryTree& tree, const FeatureOptions& options = {});
Bag extract_where_predicates(const QueryTree& tree, const FeatureOptions& options = {});
Bag extract_join_pairs(const QueryTree& tree, const FeatureOptions& options = {});
Bag extract_aggregations(const QueryTree& tree, const FeatureOptions& options = {});
Bag extract_functions(const QueryTree& tree, const FeatureOptions& options = {});
int count_func_exprs(const QueryTree& tree);
int count_ctes(const QueryTree& tree);

/// True for aggregate function names (uppercase).
bool is_aggregate_function(std::string_view upper_name);

/// One JSON document: {"query_id", "mode", "features": {name: [items]}, "counts": {...}}.
std::string feature_vector_json(const FeatureVector& features, std::string_view query_id);

}  // namespace sqlcx
