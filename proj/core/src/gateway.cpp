// Copyright 2026 The szzkit Authors.
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

#include "szzkit/gateway.hpp"

#include "szzkit/errors.hpp"

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace szzkit {

namespace fs = std::filesystem;
using nlohmann::json;

LlmMode parse_llm_mode(const std::string& name)
{
    if (name == "live")
        return LlmMode::Live;
    if (name == "record")
        return LlmMode::Record;
    if (name == "replay")
        return LlmMode::Replay;
    if (name == "scripted")
        return LlmMode::Scripted;
    throw ConfigError("unknown llm mode: " + name);
}

namespace {

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx, data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

void write_file_atomic(const fs::path& target, const std::string& content)
{
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace

CassetteStore::CassetteStore(std::string dir)
    : m_dir(std::move(dir))
{
    fs::create_directories(m_dir);
}

std::string CassetteStore::key_for(const ChatRequest& request)
{
    std::string material = request.system;
    material.push_back('\x1f');
    material += request.user;
    material.push_back('\x1f');
    material += request.tag;
    return sha256_hex(material);
}

std::optional<ChatResponse> CassetteStore::get(const std::string& key) const
{
    fs::path file = fs::path(m_dir) / (key + ".json");
    std::ifstream in(file, std::ios::binary);
    if (!in)
        return std::nullopt;
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error("corrupt cassette " + file.string() + ": " + e.what());
    }
    ChatResponse response;
    response.text = doc.at("response").at("text").get<std::string>();
    response.tokens_in = doc.at("response").at("tokens_in").get<long>();
    response.tokens_out = doc.at("response").at("tokens_out").get<long>();
    response.latency_ms = doc.at("response").at("latency_ms").get<long>();
    response.from_cache = true;
    return response;
}

void CassetteStore::put(const std::string& key, const ChatRequest& request,
                        const ChatResponse& response)
{
    json doc = json::object();
    doc["key"] = key;
    doc["request"] = { { "system", request.system },
                       { "user", request.user },
                       { "tag", request.tag },
                       { "temperature", request.temperature },
                       { "max_output_tokens", request.max_output_tokens } };
    doc["response"] = { { "text", response.text },
                        { "tokens_in", response.tokens_in },
                        { "tokens_out", response.tokens_out },
                        { "latency_ms", response.latency_ms } };
    fs::path file = fs::path(m_dir) / (key + ".json");
    write_file_atomic(file, doc.dump(2) + "\n");
}

namespace {

class HttpTransport final : public Transport {
public:
    Reply post(const std::string& endpoint, const std::string& body,
               const std::vector<std::pair<std::string, std::string>>& headers) override
    {
        std::string scheme_host;
        std::string path = "/";
        auto scheme_end = endpoint.find("://");
        if (scheme_end == std::string::npos)
            return { 0, "malformed endpoint: " + endpoint };
        auto path_start = endpoint.find('/', scheme_end + 3);
        if (path_start == std::string::npos) {
            scheme_host = endpoint;
        } else {
            scheme_host = endpoint.substr(0, path_start);
            path = endpoint.substr(path_start);
        }

        httplib::Client client(scheme_host);
        client.set_connection_timeout(30);
        client.set_read_timeout(300);
        httplib::Headers hh;
        for (const auto& [k, v] : headers)
            hh.emplace(k, v);
        auto res = client.Post(path, hh, body, "application/json");
        if (!res)
            return { 0, httplib::to_string(res.error()) };
        return { res->status, res->body };
    }
};

} // namespace

std::shared_ptr<Transport> make_http_transport()
{
    return std::make_shared<HttpTransport>();
}

Gateway::Gateway(GatewayOptions options, std::shared_ptr<Transport> transport)
    : m_options(std::move(options))
    , m_transport(std::move(transport))
{
    if (!m_options.cassette_dir.empty()
        && (m_options.mode == LlmMode::Record || m_options.mode == LlmMode::Replay))
        m_cassettes.emplace(m_options.cassette_dir);
    if (m_options.mode == LlmMode::Replay && !m_cassettes)
        throw ConfigError("replay mode requires a cassette directory");
    if ((m_options.mode == LlmMode::Live || m_options.mode == LlmMode::Record) && !m_transport)
        m_transport = make_http_transport();
    m_sleeper = [](int ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
}

void Gateway::set_responder(ScriptedResponder responder)
{
    std::lock_guard<std::mutex> lock(m_responder_mutex);
    m_responder = std::move(responder);
}

void Gateway::set_sleeper(std::function<void(int)> sleeper)
{
    m_sleeper = std::move(sleeper);
}

ChatResponse Gateway::complete(const ChatRequest& request)
{
    ChatResponse response;
    switch (m_options.mode) {
    case LlmMode::Scripted: {
        ScriptedResponder responder;
        {
            std::lock_guard<std::mutex> lock(m_responder_mutex);
            responder = m_responder;
        }
        if (!responder)
            throw ResponderUnset("scripted mode has no responder installed");
        response.text = responder(request);
        // Proxy token accounting: ~4 bytes per token on either side.
        response.tokens_in = static_cast<long>(
            (request.system.size() + request.user.size() + 3) / 4);
        response.tokens_out = static_cast<long>((response.text.size() + 3) / 4);
        response.latency_ms = 0;
        response.from_cache = false;
        break;
    }
    case LlmMode::Replay: {
        std::string key = CassetteStore::key_for(request);
        auto cached = m_cassettes->get(key);
        if (!cached)
            throw CassetteMiss("no recorded response for key " + key + " (tag=" + request.tag
                               + ")");
        response = *cached;
        break;
    }
    case LlmMode::Record: {
        std::string key = CassetteStore::key_for(request);
        if (auto cached = m_cassettes->get(key)) {
            response = *cached;
            break;
        }
        response = complete_live(request);
        m_cassettes->put(key, request, response);
        break;
    }
    case LlmMode::Live:
        response = complete_live(request);
        break;
    }
    m_ledger.add(response);
    return response;
}

ChatResponse Gateway::complete_live(const ChatRequest& request)
{
    if (m_options.endpoint.empty())
        throw ConfigError("live llm mode requires an endpoint");
    std::string api_key;
    if (!m_options.api_key_env.empty()) {
        const char* value = std::getenv(m_options.api_key_env.c_str());
        if (!value || !*value)
            throw ConfigError("environment variable " + m_options.api_key_env + " is not set");
        api_key = value;
    }

    json body = json::object();
    body["model"] = m_options.model;
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_output_tokens;
    body["messages"] = json::array();
    if (!request.system.empty())
        body["messages"].push_back({ { "role", "system" }, { "content", request.system } });
    body["messages"].push_back({ { "role", "user" }, { "content", request.user } });
    std::string payload = body.dump();

    std::vector<std::pair<std::string, std::string>> headers;
    if (!api_key.empty())
        headers.emplace_back("Authorization", "Bearer " + api_key);

    std::string last_failure;
    int attempts = std::max(1, m_options.max_attempts);
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        auto start = std::chrono::steady_clock::now();
        Transport::Reply reply = m_transport->post(m_options.endpoint, payload, headers);
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

        bool retryable = reply.status == 0 || reply.status >= 500;
        if (reply.status == 200) {
            json doc;
            try {
                doc = json::parse(reply.body);
            } catch (const json::exception& e) {
                throw ProviderError(std::string("unparseable provider response: ") + e.what());
            }
            ChatResponse response;
            try {
                response.text
                    = doc.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const json::exception& e) {
                throw ProviderError(std::string("provider response missing content: ")
                                    + e.what());
            }
            if (doc.contains("usage")) {
                response.tokens_in = doc["usage"].value("prompt_tokens", 0L);
                response.tokens_out = doc["usage"].value("completion_tokens", 0L);
            }
            response.latency_ms = static_cast<long>(elapsed);
            response.from_cache = false;
            return response;
        }
        if (!retryable)
            throw ProviderError("provider returned status " + std::to_string(reply.status) + ": "
                                + reply.body.substr(0, 512));
        last_failure = reply.status == 0
            ? ("transport failure: " + reply.body)
            : ("provider returned status " + std::to_string(reply.status));
        if (attempt < attempts)
            m_sleeper(1000 << (attempt - 1));
    }
    throw ProviderError(last_failure + " (after " + std::to_string(attempts) + " attempts)");
}

} // namespace szzkit
