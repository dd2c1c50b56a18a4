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

// libpq is loaded at runtime so the library builds (and every other engine
// works) on hosts without PostgreSQL client headers.

#include <dlfcn.h>

#include "sqlcx/clients.h"
#include "sqlcx/errors.h"
#include "sqlcx/strings.h"

namespace sqlcx {

namespace {

// Subset of libpq's ABI. Enum values match libpq-fe.h.
constexpr int kConnectionOk = 0;
constexpr int kCommandOk = 1;
constexpr int kTuplesOk = 2;

struct PgApi {
    void* handle = nullptr;
    void* (*connectdb)(const char*) = nullptr;
    int (*status)(const void*) = nullptr;
    char* (*error_message)(const void*) = nullptr;
    void* (*exec)(void*, const char*) = nullptr;
    int (*result_status)(const void*) = nullptr;
    char* (*result_error_message)(const void*) = nullptr;
    void (*clear)(void*) = nullptr;
    void (*finish)(void*) = nullptr;

    template <typename Fn>
    void bind(Fn& fn, const char* name) {
        fn = reinterpret_cast<Fn>(dlsym(handle, name));
        if (fn == nullptr) throw ValidatorUnavailable(std::string("libpq is missing ") + name);
    }
};

}  // namespace

struct PostgresValidator::Impl {
    PgApi api;
    void* conn = nullptr;
    ValidationMode mode = ValidationMode::kExecute;
    int timeout_ms = 0;

    ~Impl() {
        if (conn != nullptr && api.finish != nullptr) api.finish(conn);
        if (api.handle != nullptr) dlclose(api.handle);
    }

    // Runs a command; returns the server error text, or empty on success.
    std::string run(const std::string& sql) {
        void* res = api.exec(conn, sql.c_str());
        if (res == nullptr) return trim_copy(api.error_message(conn));
        int st = api.result_status(res);
        std::string err;
        if (st != kCommandOk && st != kTuplesOk) err = trim_copy(api.result_error_message(res));
        api.clear(res);
        return err;
    }

    static std::string trim_copy(const char* s) {
        return s == nullptr ? std::string() : std::string(trim(std::string_view(s)));
    }
};

PostgresValidator::PostgresValidator(const std::string& conninfo, ValidationMode mode, int statement_timeout_ms,
                                     const std::string& library)
    : impl_(std::make_unique<Impl>()) {
    impl_->mode = mode;
    impl_->timeout_ms = statement_timeout_ms;
    PgApi& api = impl_->api;
    api.handle = dlopen(library.c_str(), RTLD_NOW | RTLD_LOCAL);
    if (api.handle == nullptr) throw ValidatorUnavailable("cannot load " + library);
    api.bind(api.connectdb, "PQconnectdb");
    api.bind(api.status, "PQstatus");
    api.bind(api.error_message, "PQerrorMessage");
    api.bind(api.exec, "PQexec");
    api.bind(api.result_status, "PQresultStatus");
    api.bind(api.result_error_message, "PQresultErrorMessage");
    api.bind(api.clear, "PQclear");
    api.bind(api.finish, "PQfinish");
    impl_->conn = api.connectdb(conninfo.c_str());
    if (impl_->conn == nullptr || api.status(impl_->conn) != kConnectionOk)
        throw ValidatorUnavailable("postgres: " + Impl::trim_copy(impl_->conn ? api.error_message(impl_->conn) : nullptr));
}

PostgresValidator::~PostgresValidator() = default;

ValidationResult PostgresValidator::validate(const std::string& sql) {
    std::lock_guard lock(mu_);
    if (impl_->api.status(impl_->conn) != kConnectionOk)
        throw ValidatorUnavailable("postgres connection lost");
    std::string err = impl_->run("BEGIN READ ONLY");
    if (!err.empty()) throw ValidatorUnavailable("postgres: " + err);
    err = impl_->run("SET LOCAL statement_timeout = " + std::to_string(impl_->timeout_ms));
    if (err.empty()) err = impl_->run(impl_->mode == ValidationMode::kPlan ? "EXPLAIN " + sql : sql);
    impl_->run("ROLLBACK");
    return err.empty() ? ValidationResult::accepted() : ValidationResult::rejected(err);
}

}  // namespace sqlcx
