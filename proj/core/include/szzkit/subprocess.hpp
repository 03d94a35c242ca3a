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

#ifndef SZZKIT_SUBPROCESS_HPP
#define SZZKIT_SUBPROCESS_HPP

#include <string>
#include <vector>

namespace szzkit {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Run a command to completion, feeding `input` on stdin and capturing both
// output streams.  Throws Error if the process cannot be spawned.
RunResult run_command(const std::vector<std::string>& argv,
                      const std::string& cwd = {},
                      const std::string& input = {});

// A long-lived child process with its stdin/stdout held open, used for
// batch protocols (git cat-file --batch).  Stderr is inherited.
class PipeProcess {
public:
    PipeProcess(const std::vector<std::string>& argv, const std::string& cwd);
    ~PipeProcess();

    PipeProcess(const PipeProcess&) = delete;
    PipeProcess& operator=(const PipeProcess&) = delete;

    // Write a request line (terminator included by the caller).
    void write(const std::string& data);

    // Read until and including the next newline.  Returns the line without
    // the terminator.  Throws Error on EOF.
    std::string read_line();

    // Read exactly n bytes.  Throws Error on short read.
    std::string read_exact(std::size_t n);

    bool alive() const { return m_pid > 0; }

private:
    void close_all();

    int m_pid = -1;
    int m_to_child = -1;
    int m_from_child = -1;
    std::string m_buffer; // unread bytes already pulled from the pipe
};

} // namespace szzkit

#endif
