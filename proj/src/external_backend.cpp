#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>

#include "lreaudit/backend.hpp"
#include "lreaudit/error.hpp"
#include "lreaudit/protocol.hpp"

namespace lreaudit {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxLine = std::size_t{1} << 30;

int remaining_ms(Clock::time_point deadline) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    return left <= 0 ? 0 : static_cast<int>(std::min<long long>(left, 1 << 30));
}

Clock::time_point deadline_after(double seconds) {
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
}

}  // namespace

ExternalBackend::ExternalBackend(std::string command, double timeout_seconds)
    : command_(std::move(command)), timeout_(timeout_seconds) {
    // A dead adapter must surface as EPIPE, not kill the harness.
    std::signal(SIGPIPE, SIG_IGN);
    if (!start()) {
        stop(true);
        throw ProtocolError("adapter '" + command_ + "' sent no handshake within " + std::to_string(timeout_) + " s");
    }
}

ExternalBackend::~ExternalBackend() { stop(false); }

bool ExternalBackend::start() {
    int in_pipe[2], out_pipe[2];
    if (::pipe(in_pipe) != 0) throw ProtocolError(std::string("pipe: ") + std::strerror(errno));
    if (::pipe(out_pipe) != 0) {
        ::close(in_pipe[0]);
        ::close(in_pipe[1]);
        throw ProtocolError(std::string("pipe: ") + std::strerror(errno));
    }
    const pid_t pid = ::fork();
    if (pid < 0) throw ProtocolError(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        // Own process group, so a kill reaches the adapter and not just the shell.
        ::setpgid(0, 0);
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::close(in_pipe[0]);
        ::close(in_pipe[1]);
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        ::signal(SIGPIPE, SIG_DFL);
        ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    ::fcntl(to_child_, F_SETFD, FD_CLOEXEC);
    ::fcntl(from_child_, F_SETFD, FD_CLOEXEC);
    ::fcntl(to_child_, F_SETFL, ::fcntl(to_child_, F_GETFL) | O_NONBLOCK);
    buffer_.clear();

    std::string line;
    if (!read_line(line)) return false;
    caps_ = decode_handshake(line);
    return true;
}

void ExternalBackend::stop(bool force) {
    close_fd(to_child_);
    close_fd(from_child_);
    if (pid_ > 0) {
        bool reaped = false;
        if (!force) {
            // Closing stdin asks a well-behaved adapter to exit; give it a moment.
            for (int i = 0; i < 50 && !reaped; ++i) {
                reaped = ::waitpid(pid_, nullptr, WNOHANG) == pid_;
                if (!reaped) ::usleep(10'000);
            }
        }
        ::kill(-pid_, SIGKILL);
        if (!reaped) ::waitpid(pid_, nullptr, 0);
    }
    pid_ = -1;
    buffer_.clear();
}

bool ExternalBackend::write_all(const std::string& s) {
    const auto deadline = deadline_after(timeout_);
    std::size_t off = 0;
    while (off < s.size()) {
        pollfd p{to_child_, POLLOUT, 0};
        const int r = ::poll(&p, 1, remaining_ms(deadline));
        if (r < 0 && errno == EINTR) continue;
        if (r <= 0) return false;
        if (p.revents & (POLLERR | POLLHUP)) return false;
        const ssize_t w = ::write(to_child_, s.data() + off, s.size() - off);
        if (w < 0) {
            if (errno == EAGAIN || errno == EINTR) continue;
            return false;
        }
        off += static_cast<std::size_t>(w);
    }
    return true;
}

bool ExternalBackend::read_line(std::string& line) {
    const auto deadline = deadline_after(timeout_);
    for (;;) {
        const auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            return true;
        }
        if (buffer_.size() > kMaxLine) return false;
        pollfd p{from_child_, POLLIN, 0};
        const int r = ::poll(&p, 1, remaining_ms(deadline));
        if (r < 0 && errno == EINTR) continue;
        if (r <= 0) return false;
        char chunk[65536];
        const ssize_t got = ::read(from_child_, chunk, sizeof chunk);
        if (got < 0 && (errno == EINTR || errno == EAGAIN)) continue;
        if (got <= 0) return false;
        buffer_.append(chunk, static_cast<std::size_t>(got));
    }
}

Reply ExternalBackend::protocol_failure(const std::string& what) {
    ++protocol_errors_;
    stop(true);
    return Reply::fail(what);
}

Reply ExternalBackend::do_call(const Request& req) {
    if (pid_ < 0) {
        // Respawn after a crash or timeout. A bad handshake is fatal.
        if (!start()) return protocol_failure("adapter restart failed: no handshake");
    }
    const std::uint64_t id = next_id_++;
    if (!write_all(encode_request(req, id) + '\n')) return protocol_failure("adapter crashed or stalled while reading");
    std::string line;
    if (!read_line(line)) return protocol_failure("adapter crashed or timed out");
    try {
        return decode_reply(line, id);
    } catch (const ProtocolError& e) {
        ++protocol_errors_;
        return Reply::fail(std::string("malformed response: ") + e.what());
    }
}

}  // namespace lreaudit
