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

#ifndef SZZKIT_SPANS_HPP
#define SZZKIT_SPANS_HPP

#include <string>
#include <vector>

#include "szzkit/noise.hpp"

namespace szzkit {

// One function/method definition: 1-based inclusive line span. Spans of one
// file never overlap; nested and anonymous constructs attach to their
// enclosing definition.
struct FunctionSpan {
    std::string name;
    std::size_t start_line = 0;
    std::size_t end_line = 0;
};

// Extracts function/method spans with a comment/string-aware lexer and
// brace matching. Returns an empty list when the file cannot be parsed
// (unbalanced braces); callers fall back to window regions.
std::vector<FunctionSpan> extract_function_spans(const std::vector<std::string>& lines,
                                                 Language language);

} // namespace szzkit

#endif
