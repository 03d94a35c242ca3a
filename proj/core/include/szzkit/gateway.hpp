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

#ifndef SZZKIT_GATEWAY_HPP
#define SZZKIT_GATEWAY_HPP

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace szzkit {

enum class LlmMode { Live, Record, Replay, Scripted };

LlmMode parse_llm_mode(const std::string& name); // throws ConfigError

struct ChatRequest {
    std::string system;
    std::string user;
    double temperature = 0.0;
    int max_output_tokens = 2048;
    std::string tag; // one of: summarize root_cause hint ability containment verdict rank statements
};

struct ChatResponse {
    std::string text;
    long tokens_in = 0;
    long tokens_out = 0;
    long latency_ms = 0;
    bool from_cache = false;
};

// Injectable HTTP layer, so tests can count/deny network operations.
class Transport {
public:
    struct Reply {
        int status = 0; // 0 = transport failure (body holds the reason)
        std::string body;
    };

    virtual ~Transport() = default;
    virtual Reply post(const std::string& endpoint, const std::string& body,
                       const std::vector<std::pair<std::string, std::string>>& headers)
        = 0;
};

// Default Transport over HTTP(S).
std::shared_ptr<Transport> make_http_transport();

// One response file per request key under a directory; the key is a digest
// of (system, user, tag) only, so replays are order- and time-independent.
class CassetteStore {
public:
    explicit CassetteStore(std::string dir);

    static std::string key_for(const ChatRequest& request);

    std::optional<ChatResponse> get(const std::string& key) const;
    void put(const std::string& key, const ChatRequest& request, const ChatResponse& response);

    const std::string& dir() const { return m_dir; }

private:
    std::string m_dir;
};

// Per-run usage accounting; safe for concurrent accumulation.
class UsageLedger {
public:
    struct Snapshot {
        long llm_calls = 0;
        long tokens_total = 0;
        long wall_ms = 0;
    };

    void add(const ChatResponse& response)
    {
        m_calls.fetch_add(1, std::memory_order_relaxed);
        m_tokens.fetch_add(response.tokens_in + response.tokens_out, std::memory_order_relaxed);
        m_wall_ms.fetch_add(response.latency_ms, std::memory_order_relaxed);
    }

    Snapshot snapshot() const
    {
        return { m_calls.load(std::memory_order_relaxed),
                 m_tokens.load(std::memory_order_relaxed),
                 m_wall_ms.load(std::memory_order_relaxed) };
    }

private:
    std::atomic<long> m_calls { 0 };
    std::atomic<long> m_tokens { 0 };
    std::atomic<long> m_wall_ms { 0 };
};

using ScriptedResponder = std::function<std::string(const ChatRequest&)>;

struct GatewayOptions {
    LlmMode mode = LlmMode::Scripted;
    std::string endpoint;    // chat-completions URL (live/record)
    std::string model;
    std::string api_key_env; // name of the env var holding the key
    std::string cassette_dir;
    int max_attempts = 3;    // live transport attempts (1s/2s/4s backoff between)
};

// Provider-agnostic chat completion with deterministic modes. complete() is
// safe for concurrent callers.
class Gateway {
public:
    explicit Gateway(GatewayOptions options, std::shared_ptr<Transport> transport = nullptr);

    ChatResponse complete(const ChatRequest& request);

    void set_responder(ScriptedResponder responder);
    // Test hook: replaces the real backoff sleep.
    void set_sleeper(std::function<void(int /*ms*/)> sleeper);

    UsageLedger& ledger() { return m_ledger; }
    LlmMode mode() const { return m_options.mode; }

private:
    ChatResponse complete_live(const ChatRequest& request);

    GatewayOptions m_options;
    std::shared_ptr<Transport> m_transport;
    std::optional<CassetteStore> m_cassettes;
    ScriptedResponder m_responder;
    std::function<void(int)> m_sleeper;
    UsageLedger m_ledger;
    std::mutex m_responder_mutex;
};

} // namespace szzkit

#endif
