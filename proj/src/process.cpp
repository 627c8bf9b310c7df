#include "fepa/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa {
namespace {

using Clock = std::chrono::steady_clock;

void ignore_sigpipe() {
  static const bool done = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

struct Pipe {
  int fd[2] = {-1, -1};
  Pipe() {
    if (::pipe(fd) != 0) {
      throw Error(ErrorKind::kIoError,
                  fmt::format("pipe failed: {}", std::strerror(errno)));
    }
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fd[0] >= 0) ::close(fd[0]);
    fd[0] = -1;
  }
  void close_write() {
    if (fd[1] >= 0) ::close(fd[1]);
    fd[1] = -1;
  }
  int release_read() { return std::exchange(fd[0], -1); }
  int release_write() { return std::exchange(fd[1], -1); }
};

void set_nonblocking(int fd) {
  ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
}

// Child side: new process group, wire the pipes, exec the shell.
[[noreturn]] void exec_shell(const std::string& command, int in_fd, int out_fd,
                             int err_fd) {
  ::setpgid(0, 0);
  ::dup2(in_fd, STDIN_FILENO);
  ::dup2(out_fd, STDOUT_FILENO);
  ::dup2(err_fd, STDERR_FILENO);
  for (int fd = 3; fd < 1024; ++fd) ::close(fd);
  ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
  ::_exit(127);
}

pid_t spawn(const std::string& command, Pipe& in, Pipe& out, int err_fd) {
  ignore_sigpipe();
  const pid_t pid = ::fork();
  if (pid < 0) {
    throw Error(ErrorKind::kIoError,
                fmt::format("fork failed: {}", std::strerror(errno)));
  }
  if (pid == 0) exec_shell(command, in.fd[0], out.fd[1], err_fd);
  ::setpgid(pid, pid);
  in.close_read();
  out.close_write();
  return pid;
}

int decode_status(int raw) {
  if (WIFSIGNALED(raw)) return 128 + WTERMSIG(raw);
  if (WIFEXITED(raw)) return WEXITSTATUS(raw);
  return 1;
}

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                        deadline - Clock::now())
                        .count();
  return left < 0 ? 0 : static_cast<int>(left);
}

}  // namespace

int ProcessResult::status() const {
  if (timed_out) return -1;
  if (signal) return 128 + signal;
  return exit_code;
}

ProcessResult run_command(const std::string& command, const std::string& input,
                          std::chrono::duration<double> timeout) {
  Pipe in, out, err;
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(timeout);
  const pid_t pid = spawn(command, in, out, err.fd[1]);
  err.close_write();

  int in_fd = in.release_write();
  int out_fd = out.release_read();
  int err_fd = err.release_read();
  set_nonblocking(in_fd);
  set_nonblocking(out_fd);
  set_nonblocking(err_fd);

  ProcessResult result;
  std::size_t written = 0;
  if (input.empty()) {
    ::close(in_fd);
    in_fd = -1;
  }
  char buf[65536];
  while (out_fd >= 0 || err_fd >= 0) {
    std::vector<pollfd> fds;
    if (in_fd >= 0) fds.push_back({in_fd, POLLOUT, 0});
    if (out_fd >= 0) fds.push_back({out_fd, POLLIN, 0});
    if (err_fd >= 0) fds.push_back({err_fd, POLLIN, 0});
    const int wait = remaining_ms(deadline);
    if (wait == 0) {
      result.timed_out = true;
      break;
    }
    const int ready = ::poll(fds.data(), fds.size(), wait);
    if (ready < 0 && errno != EINTR) break;
    for (const auto& p : fds) {
      if (!p.revents) continue;
      if (p.fd == in_fd) {
        const auto n = ::write(in_fd, input.data() + written,
                               input.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN) written = input.size();
        if (written == input.size()) {
          ::close(in_fd);
          in_fd = -1;
        }
        continue;
      }
      int& fd = p.fd == out_fd ? out_fd : err_fd;
      std::string& sink = p.fd == out_fd ? result.out : result.err;
      const auto n = ::read(fd, buf, sizeof buf);
      if (n > 0) {
        sink.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EAGAIN) {
        ::close(fd);
        fd = -1;
      }
    }
  }
  for (int fd : {in_fd, out_fd, err_fd}) {
    if (fd >= 0) ::close(fd);
  }

  int raw = 0;
  for (;;) {
    if (result.timed_out) {
      ::kill(-pid, SIGKILL);
      ::waitpid(pid, &raw, 0);
      break;
    }
    const pid_t done = ::waitpid(pid, &raw, WNOHANG);
    if (done == pid) break;
    if (remaining_ms(deadline) == 0) {
      result.timed_out = true;
      continue;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  // Orphans in the group must not outlive the call.
  ::kill(-pid, SIGKILL);
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (!result.timed_out) {
    if (WIFSIGNALED(raw)) {
      result.signal = WTERMSIG(raw);
    } else if (WIFEXITED(raw)) {
      result.exit_code = WEXITSTATUS(raw);
    }
  }
  return result;
}

bool command_available(const std::string& command) {
  const auto words = io::split_ws(command);
  if (words.empty()) return false;
  const std::string& program = words.front();
  auto executable = [](const std::string& path) {
    struct stat st {};
    return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
           ::access(path.c_str(), X_OK) == 0;
  };
  if (program.find('/') != std::string::npos) return executable(program);
  const char* path = std::getenv("PATH");
  std::string_view dirs = path ? path : "/usr/bin:/bin";
  while (!dirs.empty()) {
    const auto colon = dirs.find(':');
    const auto dir = dirs.substr(0, colon);
    if (!dir.empty() && executable(std::string(dir) + "/" + program)) return true;
    if (colon == std::string_view::npos) break;
    dirs.remove_prefix(colon + 1);
  }
  return false;
}

Coprocess::Coprocess(const std::string& command) {
  Pipe in, out;
  const int null_fd = ::open("/dev/null", O_WRONLY);
  pid_ = spawn(command, in, out, null_fd);
  if (null_fd >= 0) ::close(null_fd);
  in_fd_ = in.release_write();
  out_fd_ = out.release_read();
  set_nonblocking(out_fd_);
}

Coprocess::~Coprocess() { stop(); }

bool Coprocess::write(const std::string& data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const auto n = ::write(in_fd_, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

std::optional<std::string> Coprocess::read_until(
    const std::string& terminator, std::chrono::duration<double> timeout) {
  timed_out_ = false;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(timeout);
  const std::string marker = terminator + "\n";
  char buf[65536];
  for (;;) {
    // The terminator must sit on a line of its own.
    std::size_t from = 0;
    for (;;) {
      const auto hit = buffer_.find(marker, from);
      if (hit == std::string::npos) break;
      if (hit == 0 || buffer_[hit - 1] == '\n') {
        std::string chunk = buffer_.substr(0, hit);
        buffer_.erase(0, hit + marker.size());
        return chunk;
      }
      from = hit + 1;
    }
    if (out_fd_ < 0) return std::nullopt;
    const int wait = remaining_ms(deadline);
    if (wait == 0) {
      timed_out_ = true;
      return std::nullopt;
    }
    pollfd p{out_fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, wait);
    if (ready <= 0) continue;
    const auto n = ::read(out_fd_, buf, sizeof buf);
    if (n > 0) {
      buffer_.append(buf, static_cast<std::size_t>(n));
    } else if (n == 0 || errno != EAGAIN) {
      ::close(out_fd_);
      out_fd_ = -1;
    }
  }
}

int Coprocess::stop() {
  if (status_) return *status_;
  if (in_fd_ >= 0) ::close(in_fd_);
  if (out_fd_ >= 0) ::close(out_fd_);
  in_fd_ = out_fd_ = -1;
  if (pid_ <= 0) return *(status_ = 0);
  int raw = 0;
  const pid_t done = ::waitpid(pid_, &raw, WNOHANG);
  if (done == pid_) {
    status_ = timed_out_ ? -1 : decode_status(raw);
  } else {
    ::kill(-pid_, SIGKILL);
    ::waitpid(pid_, &raw, 0);
    status_ = timed_out_ ? -1 : decode_status(raw);
  }
  ::kill(-pid_, SIGKILL);
  return *status_;
}

}  // namespace fepa
