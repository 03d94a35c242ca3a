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

#ifndef SZZKIT_TESTS_FIGURE_FIXTURE_HPP
#define SZZKIT_TESTS_FIGURE_FIXTURE_HPP

#include <memory>
#include <string>

#include "support/repo_builder.hpp"
#include "szzkit/gateway.hpp"

namespace szzkit::testing {

// The walk-through history: a root commit that introduces a device driver
// file with an unlocked list traversal (the planted inducing commit), a
// later commit that only changes dev_info's second argument, and the fix
// that rewrites the traversal under a mutex while also touching an
// unrelated line. Commit names: "base", "tweak", "fix".
std::unique_ptr<RepoBuilder> build_figure_history(const std::string& dir);

// Deterministic answers for every prompt the pipeline can send over the
// figure history, dispatched on prompt text (not tags), so the same logic
// can serve a scripted gateway or a fake HTTP provider. The assessment is
// honest: a context is called clean exactly when it shows the locked
// traversal. With ability_succeeds=false the ability reply calls both
// versions buggy, forcing the rank-based route.
std::string figure_reply(const std::string& user, bool ability_succeeds);

ScriptedResponder figure_responder(bool ability_succeeds = true);

// Transport producing provider-shaped JSON from figure_reply, for recording
// cassette fixtures without a network.
std::shared_ptr<Transport> figure_transport(bool ability_succeeds = true);

} // namespace szzkit::testing

#endif
