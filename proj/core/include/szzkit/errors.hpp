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

#ifndef SZZKIT_ERRORS_HPP
#define SZZKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace szzkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// -- repository access --------------------------------------------------

class NotARepository : public Error {
public:
    using Error::Error;
};

class UnknownRef : public Error {
public:
    using Error::Error;
};

class AmbiguousPrefix : public Error {
public:
    using Error::Error;
};

class BinaryFile : public Error {
public:
    using Error::Error;
};

class FileAbsent : public Error {
public:
    using Error::Error;
};

class LineOutOfRange : public Error {
public:
    using Error::Error;
};

// Unexpected failure of the underlying git process.
class GitCommandError : public Error {
public:
    using Error::Error;
};

// -- diff model ----------------------------------------------------------

class MalformedDiff : public Error {
public:
    MalformedDiff(const std::string& what, std::size_t byte_offset)
        : Error(what + " (at byte " + std::to_string(byte_offset) + ")")
        , m_offset(byte_offset)
    {
    }

    std::size_t byte_offset() const { return m_offset; }

private:
    std::size_t m_offset;
};

// -- llm gateway ---------------------------------------------------------

class CassetteMiss : public Error {
public:
    using Error::Error;
};

class ProviderError : public Error {
public:
    using Error::Error;
};

class ResponderUnset : public Error {
public:
    using Error::Error;
};

// -- evaluation ----------------------------------------------------------

class MisalignedDataset : public Error {
public:
    using Error::Error;
};

class MissingRepository : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace szzkit

#endif
