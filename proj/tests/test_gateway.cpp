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

#include <doctest.h>

#include <cstdlib>
#include <deque>
#include <fstream>

#include <nlohmann/json.hpp>

#include "support/repo_builder.hpp"
#include "szzkit/errors.hpp"
#include "szzkit/gateway.hpp"

using namespace szzkit;
using namespace szzkit::testing;

namespace {

using Header = std::pair<std::string, std::string>;

struct CountingTransport final : Transport {
    std::vector<std::string> bodies;
    std::vector<std::vector<Header>> headers_seen;
    std::deque<Reply> replies; // consumed front-first; the last one repeats

    Reply post(const std::string&, const std::string& body,
               const std::vector<Header>& headers) override
    {
        bodies.push_back(body);
        headers_seen.push_back(headers);
        if (replies.empty())
            return { 0, "no scripted reply" };
        Reply reply = replies.front();
        if (replies.size() > 1)
            replies.pop_front();
        return reply;
    }
};

std::string ok_body(const std::string& text, long in_tokens, long out_tokens)
{
    nlohmann::json doc;
    doc["choices"] = { { { "message", { { "content", text } } } } };
    doc["usage"] = { { "prompt_tokens", in_tokens }, { "completion_tokens", out_tokens } };
    return doc.dump();
}

ChatRequest sample_request()
{
    ChatRequest request;
    request.system = "You are terse.";
    request.user = "Say hi.";
    request.tag = "summarize";
    return request;
}

GatewayOptions live_options(LlmMode mode, const std::string& cassette_dir = {})
{
    GatewayOptions options;
    options.mode = mode;
    options.endpoint = "https://provider.invalid/v1/chat/completions";
    options.model = "test-model";
    options.cassette_dir = cassette_dir;
    return options;
}

} // namespace

TEST_CASE("parse_llm_mode accepts the four modes")
{
    CHECK(parse_llm_mode("live") == LlmMode::Live);
    CHECK(parse_llm_mode("record") == LlmMode::Record);
    CHECK(parse_llm_mode("replay") == LlmMode::Replay);
    CHECK(parse_llm_mode("scripted") == LlmMode::Scripted);
    CHECK_THROWS_AS(parse_llm_mode("cached"), ConfigError);
}

TEST_CASE("scripted mode uses the responder and the byte-based token proxy")
{
    GatewayOptions options;
    options.mode = LlmMode::Scripted;
    Gateway gateway(options);

    ChatRequest seen;
    gateway.set_responder([&](const ChatRequest& request) {
        seen = request;
        return std::string("scripted reply");
    });

    ChatRequest request = sample_request();
    ChatResponse response = gateway.complete(request);

    CHECK(seen.user == request.user);
    CHECK(seen.tag == request.tag);
    CHECK(response.text == "scripted reply");
    CHECK(response.tokens_in
          == static_cast<long>((request.system.size() + request.user.size() + 3) / 4));
    CHECK(response.tokens_out == static_cast<long>((response.text.size() + 3) / 4));
    CHECK(response.latency_ms == 0);
    CHECK_FALSE(response.from_cache);

    auto usage = gateway.ledger().snapshot();
    CHECK(usage.llm_calls == 1);
    CHECK(usage.tokens_total == response.tokens_in + response.tokens_out);

    gateway.complete(request);
    CHECK(gateway.ledger().snapshot().llm_calls == 2);
}

TEST_CASE("scripted mode without a responder refuses to answer")
{
    GatewayOptions options;
    options.mode = LlmMode::Scripted;
    Gateway gateway(options);
    CHECK_THROWS_AS(gateway.complete(sample_request()), ResponderUnset);
}

TEST_CASE("cassette keys depend on system, user, and tag only")
{
    ChatRequest base = sample_request();
    std::string key = CassetteStore::key_for(base);
    CHECK(key.size() == 64);
    CHECK(key == CassetteStore::key_for(base));

    ChatRequest other_tag = base;
    other_tag.tag = "verdict";
    CHECK(CassetteStore::key_for(other_tag) != key);

    ChatRequest other_user = base;
    other_user.user += "!";
    CHECK(CassetteStore::key_for(other_user) != key);

    // Temperature and output budget do not participate in the key.
    ChatRequest tuned = base;
    tuned.temperature = 0.9;
    tuned.max_output_tokens = 99;
    CHECK(CassetteStore::key_for(tuned) == key);
}

TEST_CASE("record mode hits the transport once, then serves from the cassette")
{
    TempDir dir("szzkit-gateway");
    std::string cassette_dir = dir.sub("tapes");

    auto transport = std::make_shared<CountingTransport>();
    transport->replies.push_back({ 200, ok_body("recorded text", 11, 22) });

    Gateway gateway(live_options(LlmMode::Record, cassette_dir), transport);
    ChatRequest request = sample_request();

    ChatResponse first = gateway.complete(request);
    CHECK(first.text == "recorded text");
    CHECK(first.tokens_in == 11);
    CHECK(first.tokens_out == 22);
    CHECK_FALSE(first.from_cache);
    CHECK(transport->bodies.size() == 1);

    // The recorded file carries the request and response verbatim.
    std::string key = CassetteStore::key_for(request);
    std::ifstream in(cassette_dir + "/" + key + ".json");
    REQUIRE(in.good());
    nlohmann::json doc;
    in >> doc;
    CHECK(doc["key"] == key);
    CHECK(doc["request"]["system"] == request.system);
    CHECK(doc["request"]["user"] == request.user);
    CHECK(doc["request"]["tag"] == request.tag);
    CHECK(doc["response"]["text"] == "recorded text");
    CHECK(doc["response"]["tokens_in"] == 11);

    // Same request again: answered from the cassette, no further transport.
    ChatResponse second = gateway.complete(request);
    CHECK(second.text == "recorded text");
    CHECK(second.from_cache);
    CHECK(transport->bodies.size() == 1);

    // A brand-new record-mode gateway over the same directory also reuses it.
    auto fresh_transport = std::make_shared<CountingTransport>();
    Gateway fresh(live_options(LlmMode::Record, cassette_dir), fresh_transport);
    ChatResponse third = fresh.complete(request);
    CHECK(third.text == "recorded text");
    CHECK(fresh_transport->bodies.empty());
}

TEST_CASE("replay mode never touches the transport")
{
    TempDir dir("szzkit-gateway");
    std::string cassette_dir = dir.sub("tapes");

    ChatRequest request = sample_request();
    {
        auto transport = std::make_shared<CountingTransport>();
        transport->replies.push_back({ 200, ok_body("taped", 3, 4) });
        Gateway recorder(live_options(LlmMode::Record, cassette_dir), transport);
        recorder.complete(request);
    }

    auto transport = std::make_shared<CountingTransport>();
    Gateway replayer(live_options(LlmMode::Replay, cassette_dir), transport);
    ChatResponse response = replayer.complete(request);
    CHECK(response.text == "taped");
    CHECK(response.from_cache);
    CHECK(transport->bodies.empty());

    ChatRequest unknown = request;
    unknown.user = "never recorded";
    try {
        replayer.complete(unknown);
        FAIL("expected CassetteMiss");
    } catch (const CassetteMiss& e) {
        std::string what = e.what();
        CHECK(what.find(CassetteStore::key_for(unknown)) != std::string::npos);
        CHECK(what.find("tag=summarize") != std::string::npos);
    }
}

TEST_CASE("replay mode requires a cassette directory and rejects corrupt files")
{
    CHECK_THROWS_AS(Gateway(live_options(LlmMode::Replay)), ConfigError);

    TempDir dir("szzkit-gateway");
    std::string cassette_dir = dir.sub("tapes");
    ChatRequest request = sample_request();
    Gateway replayer(live_options(LlmMode::Replay, cassette_dir), nullptr);

    std::string key = CassetteStore::key_for(request);
    std::ofstream out(cassette_dir + "/" + key + ".json");
    out << "{not json";
    out.close();
    CHECK_THROWS_AS(replayer.complete(request), Error);
}

TEST_CASE("live mode retries transport failures and 5xx with backoff")
{
    auto transport = std::make_shared<CountingTransport>();
    transport->replies.push_back({ 0, "connection refused" });
    transport->replies.push_back({ 503, "busy" });
    transport->replies.push_back({ 200, ok_body("finally", 1, 2) });

    Gateway gateway(live_options(LlmMode::Live), transport);
    std::vector<int> naps;
    gateway.set_sleeper([&](int ms) { naps.push_back(ms); });

    ChatResponse response = gateway.complete(sample_request());
    CHECK(response.text == "finally");
    CHECK(transport->bodies.size() == 3);
    CHECK(naps == std::vector<int> { 1000, 2000 });
}

TEST_CASE("live mode gives up after max_attempts and reports the last failure")
{
    auto transport = std::make_shared<CountingTransport>();
    transport->replies.push_back({ 500, "boom" });

    Gateway gateway(live_options(LlmMode::Live), transport);
    std::vector<int> naps;
    gateway.set_sleeper([&](int ms) { naps.push_back(ms); });

    try {
        gateway.complete(sample_request());
        FAIL("expected ProviderError");
    } catch (const ProviderError& e) {
        std::string what = e.what();
        CHECK(what.find("after 3 attempts") != std::string::npos);
    }
    CHECK(transport->bodies.size() == 3);
    CHECK(naps == std::vector<int> { 1000, 2000 });
}

TEST_CASE("live mode fails fast on non-retryable statuses and bad payloads")
{
    SUBCASE("4xx is not retried")
    {
        auto transport = std::make_shared<CountingTransport>();
        transport->replies.push_back({ 400, "bad request body" });
        Gateway gateway(live_options(LlmMode::Live), transport);
        std::vector<int> naps;
        gateway.set_sleeper([&](int ms) { naps.push_back(ms); });
        try {
            gateway.complete(sample_request());
            FAIL("expected ProviderError");
        } catch (const ProviderError& e) {
            std::string what = e.what();
            CHECK(what.find("status 400") != std::string::npos);
            CHECK(what.find("bad request body") != std::string::npos);
        }
        CHECK(transport->bodies.size() == 1);
        CHECK(naps.empty());
    }
    SUBCASE("unparseable 200 body")
    {
        auto transport = std::make_shared<CountingTransport>();
        transport->replies.push_back({ 200, "not json" });
        Gateway gateway(live_options(LlmMode::Live), transport);
        CHECK_THROWS_AS(gateway.complete(sample_request()), ProviderError);
    }
    SUBCASE("200 body without content")
    {
        auto transport = std::make_shared<CountingTransport>();
        transport->replies.push_back({ 200, "{\"choices\":[]}" });
        Gateway gateway(live_options(LlmMode::Live), transport);
        CHECK_THROWS_AS(gateway.complete(sample_request()), ProviderError);
    }
}

TEST_CASE("live mode shapes the provider request correctly")
{
    auto transport = std::make_shared<CountingTransport>();
    transport->replies.push_back({ 200, ok_body("x", 1, 1) });
    GatewayOptions options = live_options(LlmMode::Live);
    options.api_key_env = "SZZKIT_TEST_API_KEY";
    ::setenv("SZZKIT_TEST_API_KEY", "sekrit", 1);
    Gateway gateway(options, transport);

    ChatRequest request = sample_request();
    request.temperature = 0.25;
    request.max_output_tokens = 512;
    gateway.complete(request);

    REQUIRE(transport->bodies.size() == 1);
    auto body = nlohmann::json::parse(transport->bodies[0]);
    CHECK(body["model"] == "test-model");
    CHECK(body["temperature"] == 0.25);
    CHECK(body["max_tokens"] == 512);
    REQUIRE(body["messages"].size() == 2);
    CHECK(body["messages"][0]["role"] == "system");
    CHECK(body["messages"][0]["content"] == request.system);
    CHECK(body["messages"][1]["role"] == "user");
    CHECK(body["messages"][1]["content"] == request.user);

    bool has_auth = false;
    for (const auto& [k, v] : transport->headers_seen[0])
        if (k == "Authorization" && v == "Bearer sekrit")
            has_auth = true;
    CHECK(has_auth);

    // Without a system prompt only the user message is sent.
    transport->replies.push_back({ 200, ok_body("x", 1, 1) });
    ChatRequest bare = request;
    bare.system.clear();
    gateway.complete(bare);
    auto body2 = nlohmann::json::parse(transport->bodies[1]);
    REQUIRE(body2["messages"].size() == 1);
    CHECK(body2["messages"][0]["role"] == "user");

    ::unsetenv("SZZKIT_TEST_API_KEY");
}

TEST_CASE("live mode validates endpoint and api key configuration")
{
    auto transport = std::make_shared<CountingTransport>();

    GatewayOptions no_endpoint;
    no_endpoint.mode = LlmMode::Live;
    Gateway bad(no_endpoint, transport);
    CHECK_THROWS_AS(bad.complete(sample_request()), ConfigError);

    GatewayOptions needs_key = live_options(LlmMode::Live);
    needs_key.api_key_env = "SZZKIT_TEST_MISSING_KEY";
    ::unsetenv("SZZKIT_TEST_MISSING_KEY");
    Gateway keyless(needs_key, transport);
    CHECK_THROWS_AS(keyless.complete(sample_request()), ConfigError);

    ::setenv("SZZKIT_TEST_MISSING_KEY", "", 1);
    CHECK_THROWS_AS(keyless.complete(sample_request()), ConfigError);
    ::unsetenv("SZZKIT_TEST_MISSING_KEY");

    // No api_key_env configured: no Authorization header at all.
    transport->replies.push_back({ 200, ok_body("x", 1, 1) });
    Gateway anonymous(live_options(LlmMode::Live), transport);
    anonymous.complete(sample_request());
    REQUIRE_FALSE(transport->headers_seen.empty());
    for (const auto& [k, v] : transport->headers_seen.back())
        CHECK(k != "Authorization");
}

TEST_CASE("the ledger accumulates tokens and wall time across calls")
{
    TempDir dir("szzkit-gateway");
    std::string cassette_dir = dir.sub("tapes");
    auto transport = std::make_shared<CountingTransport>();
    transport->replies.push_back({ 200, ok_body("one", 10, 20) });
    transport->replies.push_back({ 200, ok_body("two", 30, 40) });

    Gateway gateway(live_options(LlmMode::Record, cassette_dir), transport);
    ChatRequest a = sample_request();
    ChatRequest b = sample_request();
    b.user = "Say bye.";
    gateway.complete(a);
    gateway.complete(b);

    auto usage = gateway.ledger().snapshot();
    CHECK(usage.llm_calls == 2);
    CHECK(usage.tokens_total == 10 + 20 + 30 + 40);
}
