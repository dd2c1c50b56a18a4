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


#include "cli.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqlcx/catalog.h"
#include "sqlcx/clients.h"
#include "sqlcx/config.h"
#include "sqlcx/corpus.h"
#include "sqlcx/csv.h"
#include "sqlcx/errors.h"
#include "sqlcx/features.h"
#include "sqlcx/harness.h"
#include "sqlcx/io.h"
#include "sqlcx/lexer.h"
#include "sqlcx/parser.h"
#include "sqlcx/resolver.h"
#include "sqlcx/similarity.h"
#include "sqlcx/strings.h"

namespace fs = std::filesystem;

namespace sqlcx::cli {

namespace {

// Raised for bad flags or malformed manifests; maps to exit code 2.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct QueryInput {
    std::string id;
    std::string sql;
    std::string origin;  // path, for diagnostics
    std::string load_error;
};

struct CommonOptions {
    std::string ddl_path;
    std::string dialect = "postgres";
    bool multiset = false;
    bool lenient = false;
    int jobs = 0;
};

Dialect dialect_of(const CommonOptions& o) {
    auto d = dialect_from_name(o.dialect);
    if (!d) throw UsageError("unknown dialect: " + o.dialect);
    return *d;
}

int job_count(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results are written by
// index, so completion order never leaks into the output.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
    size_t workers = std::min(n, static_cast<size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) fn(i);
        });
    for (auto& t : pool) t.join();
}

SchemaCatalog load_catalog(const CommonOptions& o) {
    if (o.ddl_path.empty()) return {};
    return ingest_ddl(read_file(o.ddl_path), dialect_of(o));
}

// One entry per statement. A file holding several statements yields
// <id>.1, <id>.2, ...
std::vector<QueryInput> load_queries(const std::string& id, const fs::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        return {{id, "", path.string(), e.what()}};
    }
    auto statements = split_statements(text);
    if (statements.empty()) return {{id, "", path.string(), "no statement in file"}};
    if (statements.size() == 1) return {{id, statements[0].text, path.string(), ""}};
    std::vector<QueryInput> out;
    for (size_t i = 0; i < statements.size(); ++i)
        out.push_back({id + "." + std::to_string(i + 1), statements[i].text, path.string(), ""});
    return out;
}

std::vector<std::map<std::string, std::string>> read_manifest(const fs::path& path,
                                                              const std::vector<std::string>& required) {
    CsvTable table;
    try {
        table = parse_csv(read_file(path));
    } catch (const std::exception& e) {
        throw UsageError(std::string("manifest: ") + e.what());
    }
    for (const auto& col : required)
        if (table.column(col) < 0) throw UsageError("manifest " + path.string() + " lacks column '" + col + "'");
    auto records = table.records();
    std::set<std::string> seen;
    for (const auto& r : records)
        if (!seen.insert(r.at("query_id")).second)
            throw UsageError("manifest " + path.string() + " repeats query_id '" + r.at("query_id") + "'");
    return records;
}

fs::path relative_to(const fs::path& manifest, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : manifest.parent_path() / path;
}

// Positional inputs: .sql files, or directories scanned for *.sql.
std::vector<QueryInput> gather_inputs(const std::vector<std::string>& paths, const std::string& manifest) {
    std::vector<QueryInput> out;
    auto append = [&](std::vector<QueryInput> more) {
        for (auto& q : more) out.push_back(std::move(q));
    };
    for (const auto& p : paths) {
        fs::path path(p);
        if (!fs::exists(path)) throw UsageError("no such file or directory: " + p);
        if (fs::is_directory(path)) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file() && entry.path().extension() == ".sql") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) append(load_queries(f.stem().string(), f));
        } else {
            append(load_queries(path.stem().string(), path));
        }
    }
    if (!manifest.empty())
        for (const auto& r : read_manifest(manifest, {"query_id", "path"}))
            append(load_queries(r.at("query_id"), relative_to(manifest, r.at("path"))));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].id == out[i - 1].id) throw UsageError("duplicate query id '" + out[i].id + "'");
    return out;
}

struct Analysis {
    std::optional<FeatureVector> features;
    std::string error;
};

FeatureVector analyze_sql(const std::string& sql, const SchemaCatalog& catalog, Dialect dialect, bool multiset) {
    QueryTree tree = resolve(parse(sql, dialect), catalog);
    return feature_vector(tree, FeatureOptions{multiset});
}

std::vector<Analysis> analyze_all(const std::vector<QueryInput>& inputs, const SchemaCatalog& catalog,
                                  const CommonOptions& o) {
    Dialect dialect = dialect_of(o);
    std::vector<Analysis> results(inputs.size());
    parallel_for(inputs.size(), job_count(o.jobs), [&](size_t i) {
        const QueryInput& q = inputs[i];
        if (!q.load_error.empty()) {
            results[i].error = q.load_error;
            return;
        }
        try {
            results[i].features = analyze_sql(q.sql, catalog, dialect, o.multiset);
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    });
    return results;
}

void diagnose(std::ostream& err, const QueryInput& q, const std::string& message) {
    err << "skipped " << q.id << " (" << q.origin << "): " << message << "\n";
}

void emit(std::ostream& out, const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        out << content;
    } else {
        write_file_atomic(out_path, content);
    }
}

int partial(bool any_failed, bool lenient) { return any_failed && !lenient ? kPartialFailure : kOk; }

void add_common(CLI::App* cmd, CommonOptions& o, bool with_multiset = true) {
    cmd->add_option("--ddl", o.ddl_path, "CREATE TABLE script used for column resolution")->check(CLI::ExistingFile);
    cmd->add_option("--dialect", o.dialect, "postgres, ansi or sqlite")->capture_default_str();
    if (with_multiset) cmd->add_flag("--multiset", o.multiset, "Keep duplicate feature items");
    cmd->add_flag("--lenient", o.lenient, "Per-query failures are skipped without failing the run");
    cmd->add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency, at most 8)");
}

// ---- analyze ----

struct AnalyzeArgs {
    CommonOptions common;
    std::vector<std::string> inputs;
    std::string manifest;
    std::string out_dir;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    auto inputs = gather_inputs(a.inputs, a.manifest);
    if (inputs.empty()) throw UsageError("analyze: no input queries");
    SchemaCatalog catalog = load_catalog(a.common);
    auto results = analyze_all(inputs, catalog, a.common);

    bool failed = false;
    nlohmann::ordered_json docs = nlohmann::ordered_json::array();
    for (size_t i = 0; i < inputs.size(); ++i) {
        if (!results[i].features) {
            diagnose(err, inputs[i], results[i].error);
            failed = true;
            continue;
        }
        std::string doc = feature_vector_json(*results[i].features, inputs[i].id);
        if (!a.out_dir.empty()) {
            write_file_atomic(fs::path(a.out_dir) / (inputs[i].id + ".json"), doc);
        } else {
            docs.push_back(nlohmann::ordered_json::parse(doc));
        }
    }
    if (a.out_dir.empty()) {
        if (inputs.size() == 1 && docs.size() == 1) {
            out << docs[0].dump(2) << "\n";
        } else {
            out << docs.dump(2) << "\n";
        }
    }
    return partial(failed, a.common.lenient);
}

// ---- compare ----

struct CompareArgs {
    CommonOptions common;
    std::vector<std::string> files;
    std::string manifest;
    std::string model = "model";
    std::string policy = "exclude";
    std::string out_dir;
};

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
    struct Pair {
        std::string id;
        fs::path generated, gold;
    };
    std::vector<Pair> pairs;
    bool pair_mode = a.manifest.empty();
    if (pair_mode) {
        if (a.files.size() != 2) throw UsageError("compare: expected GENERATED and GOLD files, or --manifest");
        pairs.push_back({fs::path(a.files[0]).stem().string(), a.files[0], a.files[1]});
    } else {
        if (!a.files.empty()) throw UsageError("compare: positional files and --manifest are exclusive");
        for (const auto& r : read_manifest(a.manifest, {"query_id", "generated_path", "gold_path"}))
            pairs.push_back({r.at("query_id"), relative_to(a.manifest, r.at("generated_path")),
                             relative_to(a.manifest, r.at("gold_path"))});
        std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    }
    FailurePolicy policy;
    if (a.policy == "exclude") {
        policy = FailurePolicy::kExclude;
    } else if (a.policy == "zero") {
        policy = FailurePolicy::kZero;
    } else {
        throw UsageError("--failure-policy must be exclude or zero");
    }

    SchemaCatalog catalog = load_catalog(a.common);
    Dialect dialect = dialect_of(a.common);
    struct Outcome {
        std::optional<SimilarityReport> report;
        std::string error;
    };
    std::vector<Outcome> outcomes(pairs.size());
    parallel_for(pairs.size(), job_count(a.common.jobs), [&](size_t i) {
        const Pair& p = pairs[i];
        FeatureVector gold;
        try {
            gold = analyze_sql(read_file(p.gold), catalog, dialect, a.common.multiset);
        } catch (const std::exception& e) {
            outcomes[i].error = "gold query: " + std::string(e.what());
            return;
        }
        try {
            FeatureVector gen = analyze_sql(read_file(p.generated), catalog, dialect, a.common.multiset);
            outcomes[i].report = compare(gen, gold, p.id);
        } catch (const std::exception& e) {
            outcomes[i].report = failed_report(p.id);
            outcomes[i].error = "generated query: " + std::string(e.what());
        }
    });

    bool failed = false;
    std::vector<SimilarityReport> reports;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (!outcomes[i].error.empty()) {
            err << "query " << pairs[i].id << ": " << outcomes[i].error << "\n";
            failed = true;
        }
        if (outcomes[i].report) reports.push_back(*outcomes[i].report);
    }

    std::string csv;
    if (pair_mode) {
        std::vector<std::string> header{"query_id"};
        for (BagFeature f : all_bag_features()) header.emplace_back(feature_name(f));
        header.emplace_back("status");
        CsvWriter w(header);
        for (const auto& r : reports) {
            std::vector<std::string> row{r.query_id};
            for (BagFeature f : all_bag_features()) row.push_back(r.generated_parsed ? format_fixed(r.get(f)) : "");
            row.emplace_back(r.generated_parsed ? "ok" : "parse_error");
            w.add_row(row);
        }
        csv = w.str();
    } else {
        ModelSimilaritySummary summary = summarize(reports, a.model, policy, false);
        csv = similarity_csv(reports, summary);
        err << "model " << a.model << ": compared " << summary.n_compared << ", failed " << summary.n_failed
            << ", policy " << failure_policy_name(policy) << "\n";
    }
    emit(out, a.out_dir.empty() ? "" : (fs::path(a.out_dir) / "similarity.csv").string(), csv);
    return partial(failed, a.common.lenient);
}

// ---- corpus-stats ----

struct CorpusArgs {
    CommonOptions common;
    std::vector<std::string> inputs;
    std::string manifest;
    std::string corpus;
    std::string metrics;
    std::string out_dir;
};

std::string metric_slug(Metric m) {
    std::string name(metric_name(m));
    return name.substr(0, name.find('('));
}

int cmd_corpus_stats(const CorpusArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<Metric> metrics;
    try {
        metrics = a.metrics.empty() ? std::vector<Metric>(all_metrics().begin(), all_metrics().end())
                                    : parse_metric_list(a.metrics);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto inputs = gather_inputs(a.inputs, a.manifest);
    if (inputs.empty()) throw UsageError("corpus-stats: no input queries");
    std::string corpus = a.corpus;
    if (corpus.empty()) {
        fs::path origin = a.manifest.empty() ? fs::path(a.inputs.front()) : fs::path(a.manifest);
        corpus = (fs::is_directory(origin) ? origin.lexically_normal().filename() : origin.stem()).string();
        if (corpus.empty()) corpus = origin.lexically_normal().parent_path().filename().string();
    }

    SchemaCatalog catalog = load_catalog(a.common);
    auto results = analyze_all(inputs, catalog, a.common);
    std::vector<FeatureVector> ok;
    std::vector<SkippedQuery> skipped;
    for (size_t i = 0; i < inputs.size(); ++i) {
        if (results[i].features) {
            ok.push_back(std::move(*results[i].features));
        } else {
            diagnose(err, inputs[i], results[i].error);
            skipped.push_back({inputs[i].id, results[i].error});
        }
    }
    CorpusStats stats = corpus_stats(ok, corpus, metrics);
    stats.skipped = std::move(skipped);
    if (!stats.skipped.empty()) err << "corpus " << corpus << ": skipped=" << stats.skipped.size() << "\n";

    std::vector<CorpusStats> all{stats};
    if (a.out_dir.empty()) {
        out << means_csv(all);
    } else {
        fs::path dir(a.out_dir);
        for (Metric m : metrics) write_file_atomic(dir / ("histogram_" + metric_slug(m) + ".csv"), histogram_csv(all, m));
        write_file_atomic(dir / "means.csv", means_csv(all));
    }
    return partial(!stats.skipped.empty(), a.common.lenient);
}

// ---- radar ----

struct RadarArgs {
    std::vector<std::string> means_files;
    std::string baseline;
    std::string out_dir;
};

int cmd_radar(const RadarArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<CorpusStats> stats;
    std::set<std::string> names;
    for (const auto& f : a.means_files) {
        std::vector<CorpusStats> more;
        try {
            more = read_means_csv(read_file(f));
        } catch (const std::exception& e) {
            throw UsageError(f + ": " + e.what());
        }
        for (auto& s : more) {
            if (!names.insert(s.corpus).second) throw UsageError("corpus '" + s.corpus + "' appears twice");
            stats.push_back(std::move(s));
        }
    }
    NormalizedMeans norm;
    try {
        norm = normalize_means(stats, a.baseline);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    for (const auto& w : norm.warnings) err << "warning: " << w << "\n";
    if (a.out_dir.empty()) {
        out << normalized_csv(norm);
    } else {
        write_file_atomic(fs::path(a.out_dir) / "normalized.csv", normalized_csv(norm));
        write_file_atomic(fs::path(a.out_dir) / "normalized.json", normalized_json(norm));
    }
    return kOk;
}

// ---- generate ----

struct GenerateArgs {
    CommonOptions common;
    std::string manifest;
    std::string config_path;
    std::string out_dir;
    std::string llm_script;
    int max_retries = -1;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
    if (a.common.ddl_path.empty()) throw UsageError("generate: --ddl is required");
    HarnessConfig cfg;
    if (!a.config_path.empty()) {
        try {
            cfg = parse_harness_config(read_file(a.config_path));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (a.max_retries >= 0) cfg.max_retries = a.max_retries;
    if (a.common.jobs > 0) cfg.parallelism = a.common.jobs;

    auto entries = read_manifest(a.manifest, {"query_id", "question"});
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.at("query_id") < y.at("query_id"); });
    std::string ddl = read_file(a.common.ddl_path);

    std::unique_ptr<LlmClient> llm;
    if (!a.llm_script.empty()) {
        llm = std::make_unique<ScriptedLlm>(ScriptedLlm::from_json(read_file(a.llm_script)));
    } else {
        if (cfg.llm.endpoint.empty() || cfg.llm.model.empty())
            throw UsageError("generate: config needs llm.endpoint and llm.model (or pass --llm-script)");
        llm = std::make_unique<HttpChatClient>(cfg.llm.endpoint, cfg.llm.model, cfg.llm.api_key_env,
                                               cfg.llm.timeout_seconds);
    }
    std::unique_ptr<Validator> validator;
    try {
        validator = make_validator(cfg.engine, ddl);
    } catch (const ValidatorUnavailable& e) {
        err << e.what() << "\n";
        return kPartialFailure;
    }

    std::vector<GenerationRecord> records(entries.size());
    parallel_for(entries.size(), cfg.parallelism, [&](size_t i) {
        const auto& e = entries[i];
        PromptBundle prompts = build_prompts(ddl, e.at("question"));
        records[i] = generate_with_retry(*llm, *validator, prompts, cfg.max_retries, cfg.sampling, e.at("query_id"));
    });

    bool failed = false;
    fs::path dir(a.out_dir);
    for (const auto& r : records) {
        write_file_atomic(dir / "records" / (r.query_id + ".json"), generation_record_json(r));
        if (r.failure_reason) {
            err << "query " << r.query_id << ": " << *r.failure_reason << "\n";
            failed = true;
        }
    }
    SuccessTable table = success_table(records);
    write_file_atomic(dir / "success_table.csv", table.to_csv());
    for (const auto& row : table.rows) out << row.model << ": " << row.render() << "\n";
    return failed ? kPartialFailure : kOk;
}

// ---- validate ----

struct ValidateArgs {
    CommonOptions common;
    std::vector<std::string> inputs;
    std::string config_path;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    HarnessConfig cfg;
    if (!a.config_path.empty()) {
        try {
            cfg = parse_harness_config(read_file(a.config_path));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    std::string ddl = a.common.ddl_path.empty() ? "" : read_file(a.common.ddl_path);
    auto inputs = gather_inputs(a.inputs, "");
    if (inputs.empty()) throw UsageError("validate: no input queries");
    std::unique_ptr<Validator> validator;
    try {
        validator = make_validator(cfg.engine, ddl);
    } catch (const ValidatorUnavailable& e) {
        err << e.what() << "\n";
        return kPartialFailure;
    }
    CsvWriter csv({"query_id", "status", "error"});
    bool failed = false;
    for (const auto& q : inputs) {
        ValidationResult r = q.load_error.empty() ? validator->validate(q.sql) : ValidationResult::rejected(q.load_error);
        csv.add_row({q.id, r.ok ? "ok" : "rejected", r.error});
        failed |= !r.ok;
    }
    out << csv.str();
    return partial(failed, a.common.lenient);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sqlcx: SQL structural complexity and query similarity", "sqlcx"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sqlcx 0.3.0");

    AnalyzeArgs analyze;
    auto* c_analyze = app.add_subcommand("analyze", "Print the feature vector of each query as JSON");
    add_common(c_analyze, analyze.common);
    c_analyze->add_option("inputs", analyze.inputs, "SQL files or directories");
    c_analyze->add_option("--manifest", analyze.manifest, "CSV with query_id,path")->check(CLI::ExistingFile);
    c_analyze->add_option("--out", analyze.out_dir, "Write <query_id>.json files here instead of stdout");

    CompareArgs cmp;
    auto* c_compare = app.add_subcommand("compare", "Feature-wise Jaccard similarity of generated vs gold queries");
    add_common(c_compare, cmp.common);
    c_compare->add_option("files", cmp.files, "GENERATED GOLD");
    c_compare->add_option("--manifest", cmp.manifest, "CSV with query_id,generated_path,gold_path")
        ->check(CLI::ExistingFile);
    c_compare->add_option("--model", cmp.model, "Model label for the summary row")->capture_default_str();
    c_compare->add_option("--failure-policy", cmp.policy, "exclude or zero")->capture_default_str();
    c_compare->add_option("--out", cmp.out_dir, "Write similarity.csv here instead of stdout");

    CorpusArgs corpus;
    auto* c_corpus = app.add_subcommand("corpus-stats", "Per-metric histograms and means over a corpus");
    add_common(c_corpus, corpus.common);
    c_corpus->add_option("inputs", corpus.inputs, "SQL files or directories");
    c_corpus->add_option("--manifest", corpus.manifest, "CSV with query_id,path")->check(CLI::ExistingFile);
    c_corpus->add_option("--corpus", corpus.corpus, "Corpus label (default: input name)");
    c_corpus->add_option("--metrics", corpus.metrics, "Comma-separated metric names");
    c_corpus->add_option("--out", corpus.out_dir, "Write histogram_<metric>.csv and means.csv here");

    RadarArgs radar;
    auto* c_radar = app.add_subcommand("radar", "Normalize corpus means by a baseline corpus");
    c_radar->add_option("means", radar.means_files, "means.csv files from corpus-stats")
        ->required()
        ->check(CLI::ExistingFile);
    c_radar->add_option("--baseline", radar.baseline, "Baseline corpus name")->required();
    c_radar->add_option("--out", radar.out_dir, "Write normalized.csv and normalized.json here");

    GenerateArgs gen;
    auto* c_gen = app.add_subcommand("generate", "Generate SQL with an LLM and repair it against a validator");
    add_common(c_gen, gen.common, false);
    c_gen->add_option("--manifest", gen.manifest, "CSV with query_id,question")->required()->check(CLI::ExistingFile);
    c_gen->add_option("--config", gen.config_path, "JSON harness config")->check(CLI::ExistingFile);
    c_gen->add_option("--out", gen.out_dir, "Output directory")->required();
    c_gen->add_option("--max-retries", gen.max_retries, "Repair rounds after the first attempt");
    c_gen->add_option("--llm-script", gen.llm_script, "Scripted replies JSON instead of a live endpoint")
        ->check(CLI::ExistingFile);

    ValidateArgs val;
    auto* c_val = app.add_subcommand("validate", "Check queries against the configured engine");
    add_common(c_val, val.common, false);
    c_val->add_option("inputs", val.inputs, "SQL files or directories")->required();
    c_val->add_option("--config", val.config_path, "JSON harness config")->check(CLI::ExistingFile);

    std::string catalog_ddl, catalog_out, catalog_dialect = "postgres";
    auto* c_cat = app.add_subcommand("catalog", "Print the schema catalog built from DDL as JSON");
    c_cat->add_option("--ddl", catalog_ddl, "CREATE TABLE script")->required()->check(CLI::ExistingFile);
    c_cat->add_option("--dialect", catalog_dialect, "postgres, ansi or sqlite")->capture_default_str();
    c_cat->add_option("--out", catalog_out, "Output file");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*c_analyze) return cmd_analyze(analyze, out, err);
        if (*c_compare) return cmd_compare(cmp, out, err);
        if (*c_corpus) return cmd_corpus_stats(corpus, out, err);
        if (*c_radar) return cmd_radar(radar, out, err);
        if (*c_gen) return cmd_generate(gen, out, err);
        if (*c_val) return cmd_validate(val, out, err);
        if (*c_cat) {
            CommonOptions o;
            o.ddl_path = catalog_ddl;
            o.dialect = catalog_dialect;
            emit(out, catalog_out, load_catalog(o).to_json());
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kPartialFailure;
    }
    return kUsageError;
}

}  // namespace sqlcx::cli
