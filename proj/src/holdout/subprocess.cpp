// SPDX-License-Identifier: Apache-2.0

#include "rulebench/holdout/subprocess.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <algorithm>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace rulebench::holdout {
namespace {

struct Pipe {
    int fd[2] = {-1, -1};

    bool open() { return ::pipe2(fd, O_CLOEXEC) == 0; }

    void close_end(int i)
    {
        if (fd[i] >= 0) {
            ::close(fd[i]);
            fd[i] = -1;
        }
    }

    ~Pipe()
    {
        close_end(0);
        close_end(1);
    }
};

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input,
                          std::chrono::milliseconds timeout)
{
    // A child that exits without reading stdin must not kill us with SIGPIPE.
    static const bool sigpipe_ignored = [] {
        ::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)sigpipe_ignored;

    ProcessResult result;
    if (argv.empty()) {
        result.error = "empty command";
        return result;
    }
    Pipe in;
    Pipe out;
    Pipe err;
    Pipe status;  // carries errno from a failed exec
    if (!in.open() || !out.open() || !err.open() || !status.open()) {
        result.error = std::string("pipe: ") + std::strerror(errno);
        return result;
    }

    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) {
        args.push_back(const_cast<char*>(a.c_str()));
    }
    args.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0) {
        result.error = std::string("fork: ") + std::strerror(errno);
        return result;
    }
    if (pid == 0) {
        ::dup2(in.fd[0], STDIN_FILENO);
        ::dup2(out.fd[1], STDOUT_FILENO);
        ::dup2(err.fd[1], STDERR_FILENO);
        ::signal(SIGPIPE, SIG_DFL);
        ::execvp(args[0], args.data());
        const int code = errno;
        [[maybe_unused]] const auto n = ::write(status.fd[1], &code, sizeof code);
        ::_exit(127);
    }

    in.close_end(0);
    out.close_end(1);
    err.close_end(1);
    status.close_end(1);

    int exec_errno = 0;
    if (::read(status.fd[0], &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno)) {
        ::waitpid(pid, nullptr, 0);
        result.error = "cannot execute '" + argv[0] + "': " + std::strerror(exec_errno);
        return result;
    }
    result.started = true;

    ::fcntl(in.fd[1], F_SETFL, O_NONBLOCK);
    std::size_t written = 0;
    if (input.empty()) {
        in.close_end(1);
    }
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    char buffer[65536];
    while (out.fd[0] >= 0 || err.fd[0] >= 0) {
        const auto remaining =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) {
            result.timed_out = true;
            ::kill(pid, SIGKILL);
            break;
        }
        pollfd fds[3];
        nfds_t count = 0;
        int slot_out = -1;
        int slot_err = -1;
        int slot_in = -1;
        if (out.fd[0] >= 0) {
            slot_out = static_cast<int>(count);
            fds[count++] = {out.fd[0], POLLIN, 0};
        }
        if (err.fd[0] >= 0) {
            slot_err = static_cast<int>(count);
            fds[count++] = {err.fd[0], POLLIN, 0};
        }
        if (in.fd[1] >= 0) {
            slot_in = static_cast<int>(count);
            fds[count++] = {in.fd[1], POLLOUT, 0};
        }
        const int ready = ::poll(fds, count, static_cast<int>(std::min<long long>(remaining.count(), 1000)));
        if (ready < 0) {
            if (errno == EINTR) {
                continue;
            }
            result.error = std::string("poll: ") + std::strerror(errno);
            ::kill(pid, SIGKILL);
            break;
        }
        auto drain = [&](int slot, Pipe& pipe, std::string& sink) {
            if (slot < 0 || (fds[slot].revents & (POLLIN | POLLHUP | POLLERR)) == 0) {
                return;
            }
            const ssize_t n = ::read(pipe.fd[0], buffer, sizeof buffer);
            if (n > 0) {
                sink.append(buffer, static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                pipe.close_end(0);
            }
        };
        drain(slot_out, out, result.stdout_text);
        drain(slot_err, err, result.stderr_text);
        if (slot_in >= 0 && (fds[slot_in].revents & (POLLOUT | POLLERR | POLLHUP)) != 0) {
            const ssize_t n = ::write(in.fd[1], input.data() + written, input.size() - written);
            if (n > 0) {
                written += static_cast<std::size_t>(n);
            }
            if ((n < 0 && errno != EAGAIN && errno != EINTR) || written == input.size()) {
                in.close_end(1);  // EPIPE: the child stopped reading
            }
        }
    }
    in.close_end(1);

    int wstatus = 0;
    while (::waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
    }
    if (!result.timed_out && WIFEXITED(wstatus)) {
        result.exit_code = WEXITSTATUS(wstatus);
    }
    return result;
}

}  // namespace rulebench::holdout
