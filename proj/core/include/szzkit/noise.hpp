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

#ifndef SZZKIT_NOISE_HPP
#define SZZKIT_NOISE_HPP

#include <set>
#include <string_view>

#include "szzkit/patch.hpp"

namespace szzkit {

enum class Language { C, Java };

enum class NoiseClass { Blank, Comment, Code };

// Stateless per-line classification: blank ⇔ whitespace only; comment ⇔ the
// line's non-whitespace content is entirely a comment per a line heuristic
// (`//…`, a full `/*…*/` on one line, or a `*`-prefixed block-continuation
// line); everything else is code. Lines like `x = 1; /* init */` are code.
NoiseClass classify_noise(std::string_view line, Language language);

// Old-side line numbers of "cosmetic" deletions: a deleted line whose
// whitespace-stripped text equals the stripped text of an added line in the
// same hunk (i.e. a whitespace-only change of that line).
std::set<std::size_t> cosmetic_deleted_lines(const FilePatch& patch);

} // namespace szzkit

#endif
