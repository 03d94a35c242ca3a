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

#ifndef SZZKIT_PROMPTS_HPP
#define SZZKIT_PROMPTS_HPP

#include <map>
#include <string>

namespace szzkit {

// System message shared by every pipeline request.
const std::string& system_prompt();

// User-message template for one request tag (summarize, root_cause, hint,
// ability, containment, verdict, rank, statements). Throws Error for an
// unknown tag.
const std::string& prompt_template(const std::string& tag);

// Replaces each {{name}} in the template with vars.at(name). Unknown
// placeholders throw Error; unused vars are fine.
std::string render_prompt(const std::string& tmpl, const std::map<std::string, std::string>& vars);

} // namespace szzkit

#endif
