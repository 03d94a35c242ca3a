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

#ifndef SZZKIT_CONFIG_HPP
#define SZZKIT_CONFIG_HPP

#include <cstdint>
#include <string>

#include "szzkit/gateway.hpp"
#include "szzkit/pipeline.hpp"

namespace szzkit {

// Tool configuration: one JSON file with "llm", "pipeline", and "paths"
// sections; every field has a default, flags override loaded values.
struct Config {
    struct Llm {
        std::string mode = "scripted"; // live | record | replay | scripted
        std::string endpoint;
        std::string model;
        double temperature = 0.0;
        int max_output_tokens = 2048;
        std::string cassette_dir;
        std::string api_key_env;
    } llm;

    struct PipelineSection {
        int prepare_runs = 3;
        std::size_t window_lines = 3;
        std::size_t initial_margin = 3;
        std::size_t top_n = 1;
        std::size_t candidate_cap = 16;
        std::size_t workers = 1;
    } pipeline;

    struct Paths {
        std::string repos_dir;
    } paths;
};

// Parses and validates a config file; unknown keys and invariant
// violations (bad mode, prepare_runs < 1, ...) throw ConfigError.
Config load_config(const std::string& path);

// Validates invariants on an assembled Config (same checks load_config
// applies); throws ConfigError.
void validate_config(const Config& config);

GatewayOptions gateway_options_from(const Config& config);
PipelineOptions pipeline_options_from(const Config& config, Language language);

} // namespace szzkit

#endif
