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

#include "szzkit/subprocess.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "szzkit/errors.hpp"

namespace szzkit {

namespace {

[[noreturn]] void child_exec(const std::vector<std::string>& argv, const std::string& cwd)
{
    if (!cwd.empty() && chdir(cwd.c_str()) != 0)
        _exit(127);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv)
        cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
}

void set_cloexec(int fd)
{
    int flags = fcntl(fd, F_GETFD);
    if (flags >= 0)
        fcntl(fd, F_SETFD, flags | FD_CLOEXEC);
}

struct Pipe {
    int rd = -1;
    int wr = -1;

    Pipe()
    {
        int fds[2];
        if (pipe(fds) != 0)
            throw Error(std::string("pipe: ") + std::strerror(errno));
        rd = fds[0];
        wr = fds[1];
    }

    ~Pipe()
    {
        if (rd >= 0)
            close(rd);
        if (wr >= 0)
            close(wr);
    }

    int take_rd()
    {
        int fd = rd;
        rd = -1;
        return fd;
    }

    int take_wr()
    {
        int fd = wr;
        wr = -1;
        return fd;
    }
};

} // namespace

RunResult run_command(const std::vector<std::string>& argv,
                      const std::string& cwd,
                      const std::string& input)
{
    if (argv.empty())
        throw Error("run_command: empty argv");

    Pipe in, out, err;
    pid_t pid = fork();
    if (pid < 0)
        throw Error(std::string("fork: ") + std::strerror(errno));

    if (pid == 0) {
        dup2(in.rd, STDIN_FILENO);
        dup2(out.wr, STDOUT_FILENO);
        dup2(err.wr, STDERR_FILENO);
        close(in.rd);
        close(in.wr);
        close(out.rd);
        close(out.wr);
        close(err.rd);
        close(err.wr);
        child_exec(argv, cwd);
    }

    close(in.take_rd());
    close(out.take_wr());
    close(err.take_wr());
    int in_fd = in.take_wr();
    int out_fd = out.take_rd();
    int err_fd = err.take_rd();

    if (input.empty()) {
        close(in_fd);
        in_fd = -1;
    } else {
        // Writes can block once the pipe fills; interleave with reads below.
        fcntl(in_fd, F_SETFL, O_NONBLOCK);
    }

    // Ignore SIGPIPE for the duration (child may exit before reading stdin).
    struct sigaction ignore {}, saved {};
    ignore.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &ignore, &saved);

    RunResult result;
    std::size_t written = 0;
    char buf[65536];

    while (out_fd >= 0 || err_fd >= 0 || in_fd >= 0) {
        struct pollfd fds[3];
        int n = 0;
        int idx_out = -1, idx_err = -1, idx_in = -1;
        if (out_fd >= 0) {
            idx_out = n;
            fds[n++] = { out_fd, POLLIN, 0 };
        }
        if (err_fd >= 0) {
            idx_err = n;
            fds[n++] = { err_fd, POLLIN, 0 };
        }
        if (in_fd >= 0) {
            idx_in = n;
            fds[n++] = { in_fd, POLLOUT, 0 };
        }
        if (poll(fds, n, -1) < 0) {
            if (errno == EINTR)
                continue;
            break;
        }
        if (idx_out >= 0 && (fds[idx_out].revents & (POLLIN | POLLHUP))) {
            ssize_t got = read(out_fd, buf, sizeof buf);
            if (got > 0) {
                result.out.append(buf, static_cast<std::size_t>(got));
            } else {
                close(out_fd);
                out_fd = -1;
            }
        }
        if (idx_err >= 0 && (fds[idx_err].revents & (POLLIN | POLLHUP))) {
            ssize_t got = read(err_fd, buf, sizeof buf);
            if (got > 0) {
                result.err.append(buf, static_cast<std::size_t>(got));
            } else {
                close(err_fd);
                err_fd = -1;
            }
        }
        if (idx_in >= 0 && (fds[idx_in].revents & (POLLOUT | POLLERR | POLLHUP))) {
            ssize_t put = ::write(in_fd, input.data() + written, input.size() - written);
            if (put > 0)
                written += static_cast<std::size_t>(put);
            if (put < 0 && errno != EAGAIN && errno != EINTR)
                written = input.size(); // broken pipe: give up on the rest
            if (written >= input.size()) {
                close(in_fd);
                in_fd = -1;
            }
        }
    }

    sigaction(SIGPIPE, &saved, nullptr);

    int status = 0;
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR)
        continue;
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status))
        result.exit_code = 128 + WTERMSIG(status);
    return result;
}

PipeProcess::PipeProcess(const std::vector<std::string>& argv, const std::string& cwd)
{
    if (argv.empty())
        throw Error("PipeProcess: empty argv");

    Pipe in, out;
    pid_t pid = fork();
    if (pid < 0)
        throw Error(std::string("fork: ") + std::strerror(errno));

    if (pid == 0) {
        dup2(in.rd, STDIN_FILENO);
        dup2(out.wr, STDOUT_FILENO);
        close(in.rd);
        close(in.wr);
        close(out.rd);
        close(out.wr);
        child_exec(argv, cwd);
    }

    close(in.take_rd());
    close(out.take_wr());
    m_pid = pid;
    m_to_child = in.take_wr();
    m_from_child = out.take_rd();
    set_cloexec(m_to_child);
    set_cloexec(m_from_child);
}

PipeProcess::~PipeProcess()
{
    close_all();
}

void PipeProcess::close_all()
{
    if (m_to_child >= 0) {
        close(m_to_child);
        m_to_child = -1;
    }
    if (m_from_child >= 0) {
        close(m_from_child);
        m_from_child = -1;
    }
    if (m_pid > 0) {
        int status = 0;
        while (waitpid(m_pid, &status, 0) < 0 && errno == EINTR)
            continue;
        m_pid = -1;
    }
}

void PipeProcess::write(const std::string& data)
{
    std::size_t written = 0;
    while (written < data.size()) {
        ssize_t put = ::write(m_to_child, data.data() + written, data.size() - written);
        if (put < 0) {
            if (errno == EINTR)
                continue;
            throw Error(std::string("PipeProcess write: ") + std::strerror(errno));
        }
        written += static_cast<std::size_t>(put);
    }
}

std::string PipeProcess::read_line()
{
    for (;;) {
        auto nl = m_buffer.find('\n');
        if (nl != std::string::npos) {
            std::string line = m_buffer.substr(0, nl);
            m_buffer.erase(0, nl + 1);
            return line;
        }
        char buf[65536];
        ssize_t got = read(m_from_child, buf, sizeof buf);
        if (got < 0) {
            if (errno == EINTR)
                continue;
            throw Error(std::string("PipeProcess read: ") + std::strerror(errno));
        }
        if (got == 0)
            throw Error("PipeProcess read: unexpected EOF");
        m_buffer.append(buf, static_cast<std::size_t>(got));
    }
}

std::string PipeProcess::read_exact(std::size_t n)
{
    while (m_buffer.size() < n) {
        char buf[65536];
        ssize_t got = read(m_from_child, buf, sizeof buf);
        if (got < 0) {
            if (errno == EINTR)
                continue;
            throw Error(std::string("PipeProcess read: ") + std::strerror(errno));
        }
        if (got == 0)
            throw Error("PipeProcess read: unexpected EOF");
        m_buffer.append(buf, static_cast<std::size_t>(got));
    }
    std::string data = m_buffer.substr(0, n);
    m_buffer.erase(0, n);
    return data;
}

} // namespace szzkit
