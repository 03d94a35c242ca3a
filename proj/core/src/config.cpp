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

#include "szzkit/config.hpp"

#include "szzkit/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>

namespace szzkit {

using nlohmann::json;

namespace {

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& where)
{
    for (const auto& [key, value] : object.items())
        if (!allowed.count(key))
            throw ConfigError("unknown config key \"" + key + "\" in " + where);
}

template <typename T>
void read_field(const json& object, const char* key, T& out, const std::string& where)
{
    if (!object.contains(key))
        return;
    try {
        out = object.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field ") + where + "." + key
                          + " has the wrong type");
    }
}

} // namespace

Config load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("invalid config JSON in " + path + ": " + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config root must be a JSON object");
    check_keys(doc, { "llm", "pipeline", "paths" }, "config");

    Config config;
    if (doc.contains("llm")) {
        const json& llm = doc["llm"];
        check_keys(llm,
                   { "mode", "endpoint", "model", "temperature", "max_output_tokens",
                     "cassette_dir", "api_key_env" },
                   "llm");
        read_field(llm, "mode", config.llm.mode, "llm");
        read_field(llm, "endpoint", config.llm.endpoint, "llm");
        read_field(llm, "model", config.llm.model, "llm");
        read_field(llm, "temperature", config.llm.temperature, "llm");
        read_field(llm, "max_output_tokens", config.llm.max_output_tokens, "llm");
        read_field(llm, "cassette_dir", config.llm.cassette_dir, "llm");
        read_field(llm, "api_key_env", config.llm.api_key_env, "llm");
    }
    if (doc.contains("pipeline")) {
        const json& pipeline = doc["pipeline"];
        check_keys(pipeline,
                   { "prepare_runs", "window_lines", "initial_margin", "top_n",
                     "candidate_cap", "workers" },
                   "pipeline");
        read_field(pipeline, "prepare_runs", config.pipeline.prepare_runs, "pipeline");
        read_field(pipeline, "window_lines", config.pipeline.window_lines, "pipeline");
        read_field(pipeline, "initial_margin", config.pipeline.initial_margin, "pipeline");
        read_field(pipeline, "top_n", config.pipeline.top_n, "pipeline");
        read_field(pipeline, "candidate_cap", config.pipeline.candidate_cap, "pipeline");
        read_field(pipeline, "workers", config.pipeline.workers, "pipeline");
    }
    if (doc.contains("paths")) {
        const json& paths = doc["paths"];
        check_keys(paths, { "repos_dir" }, "paths");
        read_field(paths, "repos_dir", config.paths.repos_dir, "paths");
    }

    validate_config(config);
    return config;
}

void validate_config(const Config& config)
{
    parse_llm_mode(config.llm.mode); // throws on invalid names
    if (config.pipeline.prepare_runs < 1)
        throw ConfigError("pipeline.prepare_runs must be >= 1");
    if (config.llm.max_output_tokens < 1)
        throw ConfigError("llm.max_output_tokens must be >= 1");
    if (config.pipeline.workers < 1)
        throw ConfigError("pipeline.workers must be >= 1");
    if (config.llm.temperature < 0.0)
        throw ConfigError("llm.temperature must be >= 0");
}

GatewayOptions gateway_options_from(const Config& config)
{
    GatewayOptions options;
    options.mode = parse_llm_mode(config.llm.mode);
    options.endpoint = config.llm.endpoint;
    options.model = config.llm.model;
    options.api_key_env = config.llm.api_key_env;
    options.cassette_dir = config.llm.cassette_dir;
    return options;
}

PipelineOptions pipeline_options_from(const Config& config, Language language)
{
    PipelineOptions options;
    options.prepare_runs = config.pipeline.prepare_runs;
    options.window_lines = config.pipeline.window_lines;
    options.initial_margin = config.pipeline.initial_margin;
    options.top_n = config.pipeline.top_n;
    options.candidate_cap = config.pipeline.candidate_cap;
    options.language = language;
    options.temperature = config.llm.temperature;
    options.max_output_tokens = config.llm.max_output_tokens;
    return options;
}

} // namespace szzkit
