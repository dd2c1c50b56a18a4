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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>

#include <json.hpp>

#include "sqlcx/clients.h"
#include "sqlcx/errors.h"

namespace sqlcx {

HttpChatClient::HttpChatClient(std::string endpoint, std::string model, std::string api_key_env, int timeout_seconds)
    : model_(std::move(model)), api_key_env_(std::move(api_key_env)), timeout_seconds_(timeout_seconds) {
    size_t scheme = endpoint.find("://");
    size_t path = endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (scheme == std::string::npos || path == std::string::npos)
        throw std::invalid_argument("endpoint must look like scheme://host/path: " + endpoint);
    scheme_host_port_ = endpoint.substr(0, path);
    path_ = endpoint.substr(path);
}

std::string HttpChatClient::complete(const std::vector<ChatMessage>& messages, const SamplingParams& sampling) {
    nlohmann::json body;
    body["model"] = model_;
    body["temperature"] = sampling.temperature;
    body["top_p"] = sampling.top_p;
    body["max_tokens"] = sampling.max_tokens;
    if (sampling.seed) body["seed"] = *sampling.seed;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});

    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(api_key_env_.c_str()); key != nullptr && *key != '\0')
        headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw LlmUnavailable(httplib::to_string(res.error()));
    if (res->status != 200) throw LlmUnavailable("HTTP " + std::to_string(res->status) + ": " + res->body);
    try {
        auto doc = nlohmann::json::parse(res->body);
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw LlmUnavailable(std::string("malformed response: ") + e.what());
    }
}

}  // namespace sqlcx
